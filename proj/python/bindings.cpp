#include "jcctl/chain.hpp"
#include "jcctl/cli.hpp"
#include "jcctl/coupling.hpp"
#include "jcctl/dynamics.hpp"
#include "jcctl/io.hpp"
#include "jcctl/model.hpp"
#include "jcctl/resonance.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace jcctl;

namespace {

// Levels cross the boundary as (n, nu) with nu = +1 or -1.
using PyLevel = std::pair<int, int>;

LevelIndex to_level(const PyLevel& l) {
    if (l.second != 1 && l.second != -1) throw std::invalid_argument("nu must be +1 or -1");
    return {l.first, l.second == 1 ? Sign::Plus : Sign::Minus};
}

PyLevel from_level(const LevelIndex& l) { return {l.n, static_cast<int>(l.nu)}; }

// Structured results go through the same JSON the CLI writes.
std::string dump(const io::json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_jcctl, m) {
    m.doc() = "Jaynes-Cummings dressed-state spectrum, couplings and chain certification";

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double, double>(), py::arg("omega"), py::arg("Omega"), py::arg("g"))
        .def_property_readonly("omega", &ModelParams::omega)
        .def_property_readonly("Omega", &ModelParams::capital_omega)
        .def_property_readonly("g", &ModelParams::g)
        .def_property_readonly("detuning", &ModelParams::detuning)
        .def("with_g", &ModelParams::with_g, py::arg("g"))
        .def("__repr__", [](const ModelParams& p) {
            std::ostringstream os;
            os << "ModelParams(omega=" << io::format_double(p.omega()) << ", Omega=" << io::format_double(p.capital_omega())
               << ", g=" << io::format_double(p.g()) << ")";
            return os.str();
        });

    m.def("spurious_level", [](const ModelParams& p) { return from_level(LevelIndex::spurious(p)); }, py::arg("params"));
    m.def("f", &f, py::arg("params"), py::arg("n"));
    m.def("energy", [](const ModelParams& p, const PyLevel& l) { return energy(p, to_level(l)); }, py::arg("params"),
          py::arg("level"));
    m.def(
        "mixing",
        [](const ModelParams& p, int n) {
            const auto c = mixing(p, n);
            return py::make_tuple(c.theta, c.c, c.s);
        },
        py::arg("params"), py::arg("n"));

    m.def("h1_element", [](const ModelParams& p, const PyLevel& a, const PyLevel& b) {
        return h1_element(p, to_level(a), to_level(b));
    }, py::arg("params"), py::arg("a"), py::arg("b"));
    m.def("h2_element", [](const ModelParams& p, const PyLevel& a, const PyLevel& b) {
        return h2_element(p, to_level(a), to_level(b));
    }, py::arg("params"), py::arg("a"), py::arg("b"));
    m.def(
        "_coupled_pairs",
        [](const ModelParams& p, int n_max, double threshold) {
            auto out = io::json::array();
            for (const auto& e : coupled_pairs(p, n_max, threshold)) out.push_back(io::to_json(e));
            return dump(out);
        },
        py::arg("params"), py::arg("n_max"), py::arg("threshold") = 0.0);

    m.def(
        "_enumerate_singular",
        [](double omega, double capital_omega, double g_max, int n_cap, bool include_benign) {
            return dump(io::to_json(enumerate_singular(BareFrequencies{omega, capital_omega}, g_max, n_cap, include_benign)));
        },
        py::arg("omega"), py::arg("Omega"), py::arg("g_max"), py::arg("n_cap") = 40, py::arg("include_benign") = false);

    m.def(
        "_certify",
        [](const ModelParams& p, int n_max, std::optional<double> tol, double threshold) {
            return dump(io::to_json(certify(p, n_max, tol.value_or(default_tolerance(p)), threshold)));
        },
        py::arg("params"), py::arg("n_max") = 25, py::arg("tol") = py::none(), py::arg("threshold") = kDefaultThreshold);

    m.def(
        "spectrum",
        [](const ModelParams& p, int n_max, std::optional<int> n_fock) {
            std::vector<py::tuple> rows;
            for (const auto& r : compare_spectrum(p, n_max, n_fock.value_or(n_max + 1))) {
                rows.push_back(py::make_tuple(from_level(r.level), r.analytic, r.oracle, r.abs_diff));
            }
            return rows;
        },
        py::arg("params"), py::arg("n_max") = 10, py::arg("n_fock") = py::none());

    m.def("jc_hamiltonian", [](const ModelParams& p, int n_fock) { return Eigen::MatrixXcd(build_jc(p, n_fock).matrix); },
          py::arg("params"), py::arg("n_fock"));
    m.def("rabi_hamiltonian", [](const ModelParams& p, int n_fock) { return Eigen::MatrixXcd(build_rabi(p, n_fock).matrix); },
          py::arg("params"), py::arg("n_fock"));
    m.def(
        "control_operator",
        [](const std::string& kind, int n_fock) {
            if (kind != "X" && kind != "P") throw std::invalid_argument("kind must be 'X' or 'P'");
            return Eigen::MatrixXcd(build_control(kind == "X" ? ControlKind::X : ControlKind::P, n_fock).matrix);
        },
        py::arg("kind"), py::arg("n_fock"));
    m.def(
        "dressed_state",
        [](const ModelParams& p, const PyLevel& l, int n_fock) {
            return Eigen::VectorXcd(dressed_state(p, to_level(l), n_fock).amplitudes);
        },
        py::arg("params"), py::arg("level"), py::arg("n_fock"));

    m.def(
        "propagate",
        [](const ModelParams& p, int n_fock, const std::vector<std::tuple<double, double, double>>& segments,
           const Eigen::VectorXcd& psi0) {
            PiecewiseControl schedule;
            for (const auto& [d, u1, u2] : segments) schedule.segments.push_back({d, u1, u2});
            schedule.validate();
            const auto r = propagate(build_jc(p, n_fock), build_control(ControlKind::X, n_fock),
                                     build_control(ControlKind::P, n_fock), schedule, {n_fock, psi0});
            return py::make_tuple(Eigen::VectorXcd(r.final_state.amplitudes), r.norm_defects);
        },
        py::arg("params"), py::arg("n_fock"), py::arg("segments"), py::arg("psi0"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
