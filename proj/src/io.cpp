#include "jcctl/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace jcctl::io {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

int parse_int(const std::string& text) {
    const std::string t = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    return value;
}

Sign parse_sign(const std::string& text) {
    const std::string t = trim(text);
    if (t == "+" || t == "plus") return Sign::Plus;
    if (t == "-" || t == "minus") return Sign::Minus;
    throw std::invalid_argument("not a sign: '" + text + "'");
}

std::string csv_cell(const json& cell) {
    if (cell.is_null()) return {};
    if (cell.is_number_float()) return format_double(cell.get<double>());
    if (cell.is_number_integer()) return std::to_string(cell.get<long long>());
    if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
    if (cell.is_string()) {
        const auto& s = cell.get_ref<const std::string&>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char ch : s) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        return quoted + '"';
    }
    return cell.dump();
}

json complex_pair(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from(const json& pair) {
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("expected a [re, im] pair");
    return {pair.at(0).get<double>(), pair.at(1).get<double>()};
}

void check_header(const json& doc, const char* kind) {
    if (!doc.is_object()) throw std::invalid_argument("expected a JSON object");
    if (doc.value("schema_version", 0) != kSchemaVersion) {
        throw std::invalid_argument("unsupported schema_version");
    }
    if (doc.value("kind", std::string{}) != kind) {
        throw std::invalid_argument(std::string("expected kind '") + kind + "'");
    }
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return {buf, ptr};
}

double parse_double(const std::string& text) {
    const std::string t = trim(text);
    double value = 0.0;
    const char* begin = t.data();
    if (!t.empty() && t.front() == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return value;
}

void Table::write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
}

json Table::to_json() const {
    json out = json::array();
    for (const auto& row : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) obj[columns[i]] = row[i];
        out.push_back(std::move(obj));
    }
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

json to_json(const LevelIndex& level) {
    return json{{"n", level.n}, {"nu", std::string(1, to_char(level.nu))}};
}

json to_json(const TransitionEdge& edge) {
    return json{{"a", to_json(edge.a)},
                {"b", to_json(edge.b)},
                {"freq", edge.freq},
                {"h1", edge.h1},
                {"h2", complex_pair(edge.h2)}};
}

json to_json(const SingularTag& tag) {
    return json{{"family", to_string(tag.family)},
                {"m", tag.m},
                {"n", tag.n},
                {"nu", std::string(1, to_char(tag.nu))},
                {"residual", tag.residual},
                {"amplitude", tag.amplitude}};
}

json to_json(const SingularPoint& point) {
    json tags = json::array();
    for (const auto& t : point.tags) tags.push_back(to_json(t));
    return json{{"g_star", point.g_star},
                {"residual", point.residual},
                {"family", to_string(point.family())},
                {"tags", std::move(tags)}};
}

json to_json(const SingularSet& set) {
    json points = json::array();
    for (const auto& p : set.points) points.push_back(to_json(p));
    json benign = json::array();
    for (const auto& p : set.benign) benign.push_back(to_json(p));
    return json{{"schema_version", kSchemaVersion},
                {"kind", "singular_set"},
                {"points", std::move(points)},
                {"benign", std::move(benign)},
                {"possibly_truncated", set.possibly_truncated},
                {"warnings", set.warnings}};
}

json to_json(const ChainReport& r) {
    json uncovered = json::array();
    for (const auto& l : r.uncovered) uncovered.push_back(to_json(l));
    json conflicts = json::array();
    for (const auto& h : r.resonant_conflicts) {
        conflicts.push_back({{"chain_edge", to_json(h.chain_edge)}, {"other", to_json(h.other)}, {"dfreq", h.dfreq}});
    }
    auto edges = [](const std::vector<TransitionEdge>& list) {
        json out = json::array();
        for (const auto& e : list) out.push_back(to_json(e));
        return out;
    };
    return json{{"schema_version", kSchemaVersion},
                {"kind", "chain_report"},
                {"g", r.g},
                {"omega", r.omega},
                {"Omega", r.capital_omega},
                {"n_max", r.n_max},
                {"tol", r.tol},
                {"threshold", r.threshold},
                {"connected", r.connected},
                {"uncovered", std::move(uncovered)},
                {"resonant_conflicts", std::move(conflicts)},
                {"zero_amplitude_edges", edges(r.zero_amplitude_edges)},
                {"degenerate_coupled_pairs", edges(r.degenerate_coupled_pairs)},
                {"resonance_found", r.resonance_found},
                {"coupling_broken", r.coupling_broken},
                {"verdict", to_string(r.verdict)},
                {"caveat", r.caveat},
                {"warnings", r.warnings}};
}

json to_json(const TruncatedOperator& op) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) entries.push_back(complex_pair(op.matrix(i, j)));
    }
    return json{{"schema_version", kSchemaVersion},
                {"kind", "operator"},
                {"n_fock", op.n_fock},
                {"dim", op.dim()},
                {"basis_order", kBasisOrder},
                {"entries", std::move(entries)}};
}

json to_json(const StateVector& psi) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) amps.push_back(complex_pair(psi.amplitudes(i)));
    return json{{"schema_version", kSchemaVersion},
                {"kind", "state"},
                {"n_fock", psi.n_fock},
                {"dim", psi.amplitudes.size()},
                {"basis_order", kBasisOrder},
                {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const json& doc) {
    check_header(doc, "state");
    const int n_fock = doc.at("n_fock").get<int>();
    const auto& amps = doc.at("amplitudes");
    const auto dim = 2 * static_cast<std::size_t>(n_fock + 1);
    if (n_fock < 1 || amps.size() != dim || doc.value("dim", dim) != dim) {
        throw std::invalid_argument("state: dimension does not match n_fock");
    }
    StateVector psi{n_fock, Eigen::VectorXcd(static_cast<Eigen::Index>(dim))};
    for (std::size_t i = 0; i < dim; ++i) psi.amplitudes(static_cast<Eigen::Index>(i)) = complex_from(amps[i]);
    return psi;
}

TruncatedOperator operator_from_json(const json& doc) {
    check_header(doc, "operator");
    const int n_fock = doc.at("n_fock").get<int>();
    const auto& entries = doc.at("entries");
    const auto dim = 2 * static_cast<Eigen::Index>(n_fock + 1);
    if (n_fock < 1 || entries.size() != static_cast<std::size_t>(dim * dim)) {
        throw std::invalid_argument("operator: dimension does not match n_fock");
    }
    TruncatedOperator op{n_fock, Eigen::MatrixXcd(dim, dim)};
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) op.matrix(i, j) = complex_from(entries[k++]);
    }
    return op;
}

LevelIndex parse_level(const std::string& text, const ModelParams& p) {
    std::string t = trim(text);
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = trim(t.substr(1, t.size() - 2));
    LevelIndex level;
    const auto comma = t.find(',');
    if (comma == std::string::npos) {
        level.n = parse_int(t);
        if (level.n != -1) throw std::invalid_argument("level '" + text + "' needs a sign, e.g. 0,+");
        level.nu = p.spurious_sign();
    } else {
        level.n = parse_int(t.substr(0, comma));
        level.nu = parse_sign(t.substr(comma + 1));
    }
    require_valid(level, p);
    return level;
}

StateVector parse_state_spec(const std::string& spec, const ModelParams& p, int n_fock) {
    const std::string t = trim(spec);
    if (t.rfind("dressed:", 0) == 0) return dressed_state(p, parse_level(t.substr(8), p), n_fock);
    if (t.rfind("bare:", 0) == 0) {
        const std::string body = t.substr(5);
        const auto comma = body.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("bare state needs 'n,up' or 'n,down'");
        const int n = parse_int(body.substr(0, comma));
        const std::string spin = trim(body.substr(comma + 1));
        if (spin != "up" && spin != "down") throw std::invalid_argument("bare state spin must be up or down");
        return bare_state(n_fock, n, spin == "up" ? Spin::Up : Spin::Down);
    }
    std::ifstream in(t);
    if (!in) throw std::invalid_argument("cannot open state file '" + t + "'");
    auto psi = state_from_json(json::parse(in));
    if (psi.n_fock != n_fock) throw std::invalid_argument("state file n_fock does not match --n-fock");
    return psi;
}

PiecewiseControl read_schedule(std::istream& is) {
    PiecewiseControl schedule;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        std::istringstream fields(line);
        std::string d, u1, u2, extra;
        if (!(fields >> d >> u1 >> u2) || (fields >> extra)) {
            throw std::invalid_argument("schedule line " + std::to_string(line_no) + ": expected 'duration u1 u2'");
        }
        try {
            schedule.segments.push_back({parse_double(d), parse_double(u1), parse_double(u2)});
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("schedule line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    schedule.validate();
    return schedule;
}

PiecewiseControl read_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open schedule file '" + path + "'");
    return read_schedule(in);
}

Table singular_table(const SingularSet& set) {
    Table t;
    t.columns = split_csv_line(kSingularCsvHeader);
    auto emit = [&t](const SingularPoint& p) {
        for (const auto& tag : p.tags) {
            t.rows.push_back({p.g_star, p.residual, to_string(tag.family), tag.m, tag.n,
                              std::string(1, to_char(tag.nu)), tag.residual, tag.amplitude});
        }
    };
    for (const auto& p : set.points) emit(p);
    for (const auto& p : set.benign) emit(p);
    return t;
}

SingularSet read_singular_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || trim(line) != kSingularCsvHeader) {
        throw std::invalid_argument("singular CSV: unexpected header");
    }
    SingularSet set;
    std::string last_key;
    std::vector<SingularPoint>* last_list = nullptr;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 8) throw std::invalid_argument("singular CSV: expected 8 columns");
        const auto family = family_from_string(cells[2]);
        if (!family) throw std::invalid_argument("singular CSV: unknown family '" + cells[2] + "'");
        SingularTag tag{*family, parse_int(cells[3]), parse_int(cells[4]), parse_sign(cells[5]),
                        parse_double(cells[6]), parse_double(cells[7])};
        auto* list = *family == SingularFamily::BenignG2 ? &set.benign : &set.points;
        const std::string key = cells[0] + "|" + cells[1];
        if (list != last_list || key != last_key || list->empty()) {
            list->push_back({parse_double(cells[0]), parse_double(cells[1]), {}});
        }
        list->back().tags.push_back(tag);
        last_key = key;
        last_list = list;
    }
    return set;
}

}  // namespace jcctl::io
