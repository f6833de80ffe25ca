#include "jcctl/cli.hpp"

#include "jcctl/chain.hpp"
#include "jcctl/dynamics.hpp"
#include "jcctl/io.hpp"
#include "jcctl/resonance.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace jcctl::cli {

namespace {

using io::json;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <typename T>
void set_if_unset(std::optional<T>& field, const std::string& value);

template <>
void set_if_unset(std::optional<double>& field, const std::string& value) {
    if (!field) field = io::parse_double(value);
}

template <>
void set_if_unset(std::optional<int>& field, const std::string& value) {
    if (field) return;
    const double x = io::parse_double(value);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw std::invalid_argument("not an integer: '" + value + "'");
    field = static_cast<int>(x);
}

template <>
void set_if_unset(std::optional<std::string>& field, const std::string& value) {
    if (!field) field = value;
}

template <>
void set_if_unset(std::optional<bool>& field, const std::string& value) {
    if (field) return;
    if (value == "true" || value == "1" || value == "yes") {
        field = true;
    } else if (value == "false" || value == "0" || value == "no") {
        field = false;
    } else {
        throw std::invalid_argument("not a boolean: '" + value + "'");
    }
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

template <typename T>
Setter setter(std::optional<T> RunConfig::*field) {
    return [field](RunConfig& cfg, const std::string& v) { set_if_unset(cfg.*field, v); };
}

const std::map<std::string, Setter>& config_keys() {
    static const std::map<std::string, Setter> keys = {
        {"omega", setter(&RunConfig::omega)},
        {"Omega", setter(&RunConfig::capital_omega)},
        {"g", setter(&RunConfig::g)},
        {"n-max", setter(&RunConfig::n_max)},
        {"n-fock", setter(&RunConfig::n_fock)},
        {"tol", setter(&RunConfig::tol)},
        {"threshold", setter(&RunConfig::threshold)},
        {"g-min", setter(&RunConfig::g_min)},
        {"g-max", setter(&RunConfig::g_max)},
        {"g-step", setter(&RunConfig::g_step)},
        {"n-cap", setter(&RunConfig::n_cap)},
        {"format", setter(&RunConfig::format)},
        {"out", setter(&RunConfig::out)},
        {"include-benign", setter(&RunConfig::include_benign)},
        {"schedule", setter(&RunConfig::schedule)},
        {"initial", setter(&RunConfig::initial)},
        {"target", setter(&RunConfig::target)},
        {"levels", setter(&RunConfig::levels)},
        {"control-bound", setter(&RunConfig::control_bound)},
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

void require_finite(const std::optional<double>& x, const char* name) {
    if (x && !std::isfinite(*x)) throw UsageError(std::string("--") + name + " must be finite");
}

void validate(const RunConfig& cfg) {
    require_finite(cfg.omega, "omega");
    require_finite(cfg.capital_omega, "Omega");
    require_finite(cfg.g, "g");
    require_finite(cfg.tol, "tol");
    require_finite(cfg.threshold, "threshold");
    require_finite(cfg.g_min, "g-min");
    require_finite(cfg.g_max, "g-max");
    require_finite(cfg.g_step, "g-step");
    require_finite(cfg.control_bound, "control-bound");
    if (cfg.format && *cfg.format != "json" && *cfg.format != "csv") {
        throw UsageError("--format must be json or csv");
    }
}

template <typename T>
T need(const std::optional<T>& x, const char* name) {
    if (!x) throw UsageError(std::string("--") + name + " is required");
    return *x;
}

BareFrequencies bare_of(const RunConfig& cfg) {
    BareFrequencies bare{cfg.omega.value_or(1.0), cfg.capital_omega.value_or(1.0)};
    try {
        bare.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return bare;
}

json params_json(const ModelParams& p) {
    return json{{"omega", p.omega()}, {"Omega", p.capital_omega()}, {"g", p.g()}};
}

std::string level_column(const LevelIndex& l) {
    return "pop_" + std::to_string(l.n) + (l.nu == Sign::Plus ? "_plus" : "_minus");
}

void emit(const io::Table& table, const json& meta, const std::string& format, std::ostream& os) {
    if (format == "csv") {
        table.write_csv(os);
        return;
    }
    json doc = meta;
    doc["rows"] = table.to_json();
    os << doc.dump(2) << '\n';
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& os) {
    const ModelParams p(bare_of(cfg), need(cfg.g, "g"));
    const int n_max = cfg.n_max.value_or(10);
    const int n_fock = cfg.n_fock.value_or(n_max + 1);
    const auto rows = compare_spectrum(p, n_max, n_fock);

    io::Table t;
    t.columns = {"n", "nu", "E_analytic", "E_oracle", "abs_diff"};
    double worst = 0.0;
    for (const auto& r : rows) {
        t.rows.push_back({r.level.n, std::string(1, to_char(r.level.nu)), r.analytic, r.oracle, r.abs_diff});
        worst = std::max(worst, r.abs_diff);
    }
    json meta{{"schema_version", io::kSchemaVersion}, {"kind", "spectrum"}};
    meta.update(params_json(p));
    meta["n_max"] = n_max;
    meta["n_fock"] = n_fock;
    meta["max_abs_diff"] = worst;
    emit(t, meta, cfg.format.value_or("csv"), os);
    return kOk;
}

int cmd_singular(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
    const auto bare = bare_of(cfg);
    const double g_max = need(cfg.g_max, "g-max");
    const int n_cap = cfg.n_cap.value_or(40);
    const auto set = enumerate_singular(bare, g_max, n_cap, cfg.include_benign.value_or(false));
    for (const auto& w : set.warnings) err << "warning: " << w << '\n';

    if (cfg.format.value_or("csv") == "csv") {
        io::singular_table(set).write_csv(os);
        return kOk;
    }
    json doc = io::to_json(set);
    doc["omega"] = bare.omega;
    doc["Omega"] = bare.capital_omega;
    doc["g_max"] = g_max;
    doc["n_cap"] = n_cap;
    os << doc.dump(2) << '\n';
    return kOk;
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::CertifiedNonResonant: return kOk;
        case Verdict::ResonanceFound: return kResonanceFound;
        case Verdict::CouplingBroken: return kCouplingBroken;
    }
    return kInternal;
}

int cmd_certify(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
    const ModelParams p(bare_of(cfg), need(cfg.g, "g"));
    const int n_max = cfg.n_max.value_or(25);
    const auto report = certify(p, n_max, cfg.tol.value_or(default_tolerance(p)),
                                cfg.threshold.value_or(kDefaultThreshold));
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';

    if (cfg.format.value_or("json") == "csv") {
        io::Table t;
        t.columns = {"g", "n_max", "verdict", "connected", "resonant_conflicts", "zero_amplitude_edges",
                     "degenerate_coupled_pairs"};
        t.rows.push_back({report.g, report.n_max, to_string(report.verdict), report.connected,
                          report.resonant_conflicts.size(), report.zero_amplitude_edges.size(),
                          report.degenerate_coupled_pairs.size()});
        t.write_csv(os);
    } else {
        os << io::to_json(report).dump(2) << '\n';
    }
    return exit_code(report.verdict);
}

std::vector<LevelIndex> population_levels(const RunConfig& cfg, const ModelParams& p, int n_fock) {
    std::vector<LevelIndex> levels;
    if (cfg.levels) {
        std::string spec = *cfg.levels;
        std::replace(spec.begin(), spec.end(), ';', ' ');
        std::istringstream parts(spec);
        std::string item;
        while (parts >> item) levels.push_back(io::parse_level(item, p));
    } else {
        levels.push_back(LevelIndex::spurious(p));
        for (int n = 0; n <= std::min(2, n_fock - 1); ++n) {
            levels.push_back({n, Sign::Minus});
            levels.push_back({n, Sign::Plus});
        }
    }
    return levels;
}

int cmd_propagate(const RunConfig& cfg, std::ostream& os) {
    const ModelParams p(bare_of(cfg), need(cfg.g, "g"));
    const int n_fock = cfg.n_fock.value_or(30);
    if (n_fock < 1) throw UsageError("--n-fock must be >= 1");
    const auto schedule = cfg.schedule ? io::read_schedule_file(*cfg.schedule) : PiecewiseControl{};
    if (cfg.control_bound && !schedule.within_bounds(*cfg.control_bound)) {
        throw std::invalid_argument("schedule leaves the control range [0, " + io::format_double(*cfg.control_bound) +
                                    "]");
    }
    const auto psi0 = io::parse_state_spec(need(cfg.initial, "initial"), p, n_fock);
    std::optional<StateVector> target;
    if (cfg.target) target = io::parse_state_spec(*cfg.target, p, n_fock);

    const auto levels = population_levels(cfg, p, n_fock);
    std::vector<StateVector> projectors;
    for (const auto& l : levels) projectors.push_back(dressed_state(p, l, n_fock));

    io::Table t;
    t.columns = {"t", "norm", "norm_defect", "fidelity_initial"};
    if (target) t.columns.emplace_back("fidelity_target");
    for (const auto& l : levels) t.columns.push_back(level_column(l));

    auto record = [&](double time, const StateVector& psi, double defect) {
        std::vector<json> row{time, psi.norm(), defect, fidelity(psi0, psi)};
        if (target) row.emplace_back(fidelity(*target, psi));
        for (const auto& proj : projectors) row.emplace_back(std::norm(proj.amplitudes.dot(psi.amplitudes)));
        t.rows.push_back(std::move(row));
    };

    Propagator prop(build_jc(p, n_fock), build_control(ControlKind::X, n_fock), build_control(ControlKind::P, n_fock));
    record(0.0, psi0, 0.0);
    double prev_norm = psi0.norm();
    prop.run(schedule, psi0, [&](std::size_t, double time, const StateVector& psi) {
        const double n = psi.norm();
        record(time, psi, std::abs(n - prev_norm));
        prev_norm = n;
    });

    json meta{{"schema_version", io::kSchemaVersion}, {"kind", "propagation"}};
    meta.update(params_json(p));
    meta["n_fock"] = n_fock;
    emit(t, meta, cfg.format.value_or("csv"), os);
    return kOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& os) {
    const auto bare = bare_of(cfg);
    const double g_min = cfg.g_min.value_or(0.0);
    const double g_max = need(cfg.g_max, "g-max");
    const double step = cfg.g_step.value_or(1e-3);
    if (!(step > 0.0)) throw UsageError("--g-step must be > 0");
    if (g_max < g_min) throw UsageError("--g-max must be >= --g-min");
    const int n_max = cfg.n_max.value_or(25);
    const auto count = static_cast<long>(std::floor((g_max - g_min) / step + 1e-9)) + 1;

    io::Table t;
    t.columns = {"g", "min_dfreq", "verdict"};
    for (long k = 0; k < count; ++k) {
        const ModelParams p(bare, g_min + static_cast<double>(k) * step);
        const auto report = certify(p, n_max, cfg.tol.value_or(default_tolerance(p)),
                                    cfg.threshold.value_or(kDefaultThreshold));
        t.rows.push_back({p.g(), min_chain_detuning(p, n_max), to_string(report.verdict)});
    }
    json meta{{"schema_version", io::kSchemaVersion}, {"kind", "scan"}};
    meta["omega"] = bare.omega;
    meta["Omega"] = bare.capital_omega;
    meta["n_max"] = n_max;
    emit(t, meta, cfg.format.value_or("csv"), os);
    return kOk;
}

}  // namespace

void merge_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "capital-omega") key = "Omega";
        const auto it = config_keys().find(key);
        if (it == config_keys().end()) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        try {
            it->second(cfg, trim(line.substr(eq + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string config_path;

    CLI::App app{"Jaynes-Cummings spectrum, coupling, resonance and controllability analysis", "jcctl"};
    app.require_subcommand(1);

    auto add_model = [&](CLI::App* sub, bool with_g) {
        sub->add_option("--omega", cfg.omega, "oscillator frequency (default 1)");
        sub->add_option("--Omega", cfg.capital_omega, "qubit frequency (default 1)");
        if (with_g) sub->add_option("--g", cfg.g, "coupling constant");
        sub->add_option("--format", cfg.format, "json or csv");
        sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
        sub->add_option("--config", config_path, "key=value file; flags override it");
    };
    bool include_benign = false;

    auto* spectrum = app.add_subcommand("spectrum", "analytic energies against dense diagonalization");
    add_model(spectrum, true);
    spectrum->add_option("--n-max", cfg.n_max, "largest block index reported (default 10)");
    spectrum->add_option("--n-fock", cfg.n_fock, "Fock cutoff (default n-max + 1)");

    auto* singular = app.add_subcommand("singular", "enumerate the singular coupling values");
    add_model(singular, false);
    singular->add_option("--g-max", cfg.g_max, "upper end of the g range");
    singular->add_option("--n-cap", cfg.n_cap, "largest equation index (default 40)");
    auto* benign_flag = singular->add_flag("--include-benign", include_benign, "also list uncoupled crossings");

    auto* certify_cmd = app.add_subcommand("certify", "check the non-resonant chain at one g");
    add_model(certify_cmd, true);
    certify_cmd->add_option("--n-max", cfg.n_max, "truncation (default 25)");
    certify_cmd->add_option("--tol", cfg.tol, "frequency coincidence tolerance (default 1e-9 * omega)");
    certify_cmd->add_option("--threshold", cfg.threshold, "amplitude regarded as zero (default 1e-12)");

    auto* propagate_cmd = app.add_subcommand("propagate", "propagate a piecewise-constant control");
    add_model(propagate_cmd, true);
    propagate_cmd->add_option("--n-fock", cfg.n_fock, "Fock cutoff (default 30)");
    propagate_cmd->add_option("--schedule", cfg.schedule, "file with 'duration u1 u2' per line");
    propagate_cmd->add_option("--initial", cfg.initial, "dressed:<n>,<+|->, bare:<n>,<up|down> or a state JSON file");
    propagate_cmd->add_option("--target", cfg.target, "state to report fidelity against");
    propagate_cmd->add_option("--levels", cfg.levels, "dressed levels whose populations are reported, e.g. '0,+;1,-'");
    propagate_cmd->add_option("--control-bound", cfg.control_bound, "reject schedules with u outside [0, c]");

    auto* scan = app.add_subcommand("scan", "sweep g and report the closest chain coincidence");
    add_model(scan, false);
    scan->add_option("--g-min", cfg.g_min, "first g (default 0)");
    scan->add_option("--g-max", cfg.g_max, "last g");
    scan->add_option("--g-step", cfg.g_step, "grid step (default 1e-3)");
    scan->add_option("--n-max", cfg.n_max, "truncation (default 25)");
    scan->add_option("--tol", cfg.tol, "frequency coincidence tolerance (default 1e-9 * omega)");
    scan->add_option("--threshold", cfg.threshold, "amplitude regarded as zero (default 1e-12)");

    try {
        app.parse(argc, argv);
        if (benign_flag->count() > 0) cfg.include_benign = include_benign;
        if (!config_path.empty()) merge_config_file(cfg, config_path);
        validate(cfg);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << "error: " << e.what() << '\n' << app.help();
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kUsage;
    }

    std::ostringstream buffer;
    int code = kOk;
    try {
        if (spectrum->parsed()) {
            code = cmd_spectrum(cfg, buffer);
        } else if (singular->parsed()) {
            code = cmd_singular(cfg, buffer, err);
        } else if (certify_cmd->parsed()) {
            code = cmd_certify(cfg, buffer, err);
        } else if (propagate_cmd->parsed()) {
            code = cmd_propagate(cfg, buffer);
        } else {
            code = cmd_scan(cfg, buffer);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }

    if (cfg.out) {
        std::ofstream file(*cfg.out, std::ios::binary);
        if (!file || !(file << buffer.str())) {
            err << "error: cannot write '" << *cfg.out << "'\n";
            return kDataError;
        }
    } else {
        out << buffer.str();
    }
    return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"jcctl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace jcctl::cli
