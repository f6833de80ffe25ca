#include "jcctl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jcctl {

namespace {

using cd = std::complex<double>;

void require_fock(int n_fock) {
    if (n_fock < 1) throw std::domain_error("n_fock must be >= 1");
}

Eigen::Index dim_for(int n_fock) { return 2 * static_cast<Eigen::Index>(n_fock + 1); }

TruncatedOperator zero_operator(int n_fock) {
    require_fock(n_fock);
    return {n_fock, Eigen::MatrixXcd::Zero(dim_for(n_fock), dim_for(n_fock))};
}

void require_same_shape(const TruncatedOperator& x, const TruncatedOperator& y, const char* what) {
    if (x.dim() != y.dim() || x.matrix.cols() != y.matrix.cols()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

// (1/T)∫₀ᵀ e^{iνt} dt = e^{iνT/2} · sin(νT/2)/(νT/2)
cd phase_average(double nu, double period) {
    const double x = 0.5 * nu * period;
    if (x == 0.0) return {1.0, 0.0};
    return std::polar(std::sin(x) / x, x);
}

}  // namespace

Eigen::Index basis_index(int n, Spin spin) noexcept {
    return 2 * static_cast<Eigen::Index>(n) + (spin == Spin::Down ? 1 : 0);
}

bool TruncatedOperator::is_hermitian(double rel_tol) const {
    const double scale = matrix.cwiseAbs().maxCoeff();
    const double defect = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    return defect <= rel_tol * std::max(scale, 1e-300);
}

TruncatedOperator build_annihilation(int n_fock) {
    auto op = zero_operator(n_fock);
    for (int n = 1; n <= n_fock; ++n) {
        const double amp = std::sqrt(static_cast<double>(n));
        for (Spin s : {Spin::Up, Spin::Down}) op.matrix(basis_index(n - 1, s), basis_index(n, s)) = amp;
    }
    return op;
}

TruncatedOperator build_sigma_minus(int n_fock) {
    auto op = zero_operator(n_fock);
    for (int n = 0; n <= n_fock; ++n) op.matrix(basis_index(n, Spin::Down), basis_index(n, Spin::Up)) = 1.0;
    return op;
}

TruncatedOperator build_excitation_number(int n_fock) {
    auto op = zero_operator(n_fock);
    for (int n = 0; n <= n_fock; ++n) {
        op.matrix(basis_index(n, Spin::Up), basis_index(n, Spin::Up)) = static_cast<double>(n + 1);
        op.matrix(basis_index(n, Spin::Down), basis_index(n, Spin::Down)) = static_cast<double>(n);
    }
    return op;
}

TruncatedOperator build_free(const BareFrequencies& bare, int n_fock) {
    bare.validate();
    auto op = zero_operator(n_fock);
    for (int n = 0; n <= n_fock; ++n) {
        const double osc = bare.omega * (n + 0.5);
        op.matrix(basis_index(n, Spin::Up), basis_index(n, Spin::Up)) = osc + 0.5 * bare.capital_omega;
        op.matrix(basis_index(n, Spin::Down), basis_index(n, Spin::Down)) = osc - 0.5 * bare.capital_omega;
    }
    return op;
}

TruncatedOperator build_jc(const ModelParams& p, int n_fock) {
    auto op = build_free(p.bare(), n_fock);
    const auto a = build_annihilation(n_fock).matrix;
    const auto sm = build_sigma_minus(n_fock).matrix;
    const Eigen::MatrixXcd co = a * sm.adjoint();
    op.matrix += p.g() * (co + co.adjoint());
    return op;
}

TruncatedOperator build_rabi(const ModelParams& p, int n_fock) {
    auto op = build_free(p.bare(), n_fock);
    const auto a = build_annihilation(n_fock).matrix;
    const auto sm = build_sigma_minus(n_fock).matrix;
    op.matrix += p.g() * (a + a.adjoint()) * (sm + sm.adjoint());
    return op;
}

TruncatedOperator build_control(ControlKind kind, int n_fock) {
    const auto a = build_annihilation(n_fock).matrix;
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    if (kind == ControlKind::X) return {n_fock, inv_sqrt2 * (a + a.adjoint())};
    return {n_fock, cd{0.0, inv_sqrt2} * (a.adjoint() - a)};
}

StateVector bare_state(int n_fock, int n, Spin spin) {
    require_fock(n_fock);
    if (n < 0 || n > n_fock) throw std::domain_error("bare state outside the truncation");
    StateVector psi{n_fock, Eigen::VectorXcd::Zero(dim_for(n_fock))};
    psi.amplitudes(basis_index(n, spin)) = 1.0;
    return psi;
}

StateVector dressed_state(const ModelParams& p, const LevelIndex& level, int n_fock) {
    require_fock(n_fock);
    require_valid(level, p);
    if (level.n + 1 > n_fock) throw std::domain_error("dressed state " + to_string(level) + " exceeds n_fock");
    StateVector psi{n_fock, Eigen::VectorXcd::Zero(dim_for(n_fock))};
    const auto v = eigenvector_coeffs(p, level);
    if (level.n == -1) {
        psi.amplitudes(basis_index(0, Spin::Down)) = 1.0;
        return psi;
    }
    psi.amplitudes(basis_index(level.n, Spin::Up)) = v.up;
    psi.amplitudes(basis_index(level.n + 1, Spin::Down)) = v.down;
    return psi;
}

double fidelity(const StateVector& psi, const StateVector& phi) {
    if (psi.amplitudes.size() != phi.amplitudes.size()) throw std::invalid_argument("fidelity: dimension mismatch");
    return std::abs(psi.amplitudes.dot(phi.amplitudes));
}

double norm_distance(const StateVector& psi, const StateVector& phi) {
    if (psi.amplitudes.size() != phi.amplitudes.size()) {
        throw std::invalid_argument("norm_distance: dimension mismatch");
    }
    return (psi.amplitudes - phi.amplitudes).norm();
}

std::complex<double> dressed_element(const ModelParams& p, const TruncatedOperator& op, const LevelIndex& a,
                                     const LevelIndex& b) {
    const int limit = op.n_fock - kGuardBand;
    if (a.n + 1 > limit || b.n + 1 > limit) {
        throw std::domain_error("dressed_element: levels must stay " + std::to_string(kGuardBand) +
                                " below the Fock cutoff");
    }
    const auto va = dressed_state(p, a, op.n_fock);
    const auto vb = dressed_state(p, b, op.n_fock);
    return va.amplitudes.dot(op.matrix * vb.amplitudes);
}

void PiecewiseControl::validate() const {
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (!std::isfinite(s.duration) || !(s.duration > 0.0)) {
            throw std::invalid_argument("segment " + std::to_string(i) + ": duration must be finite and > 0");
        }
        if (!std::isfinite(s.u1) || !std::isfinite(s.u2)) {
            throw std::invalid_argument("segment " + std::to_string(i) + ": controls must be finite");
        }
    }
}

bool PiecewiseControl::within_bounds(double bound) const {
    return std::all_of(segments.begin(), segments.end(), [bound](const ControlSegment& s) {
        return s.u1 >= 0.0 && s.u1 <= bound && s.u2 >= 0.0 && s.u2 <= bound;
    });
}

double PiecewiseControl::total_duration() const {
    return std::accumulate(segments.begin(), segments.end(), 0.0,
                           [](double acc, const ControlSegment& s) { return acc + s.duration; });
}

Propagator::Propagator(TruncatedOperator h, TruncatedOperator h1, TruncatedOperator h2)
    : h_(std::move(h)), h1_(std::move(h1)), h2_(std::move(h2)) {
    require_same_shape(h_, h1_, "Propagator");
    require_same_shape(h_, h2_, "Propagator");
    for (const auto* op : {&h_, &h1_, &h2_}) {
        if (!op->matrix.allFinite()) throw std::invalid_argument("Propagator: non-finite operator entries");
    }
}

const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& Propagator::decomposition(double u1, double u2) {
    const auto key = std::make_pair(u1, u2);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        const Eigen::MatrixXcd k = h_.matrix + u1 * h1_.matrix + u2 * h2_.matrix;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(k);
        if (solver.info() != Eigen::Success) throw std::runtime_error("Propagator: eigendecomposition failed");
        it = cache_.emplace(key, std::move(solver)).first;
    }
    return it->second;
}

StateVector Propagator::step(const StateVector& psi, const ControlSegment& seg) {
    if (psi.amplitudes.size() != h_.dim()) throw std::invalid_argument("Propagator: state dimension mismatch");
    const auto& es = decomposition(seg.u1, seg.u2);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * psi.amplitudes;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::polar(1.0, -lambda(k) * seg.duration);
    return {psi.n_fock, es.eigenvectors() * coeffs};
}

PropagationResult Propagator::run(const PiecewiseControl& schedule, const StateVector& psi0,
                                  const PropagationObserver& observer) {
    schedule.validate();
    if (psi0.amplitudes.size() != h_.dim()) throw std::invalid_argument("Propagator: state dimension mismatch");
    if (!psi0.amplitudes.allFinite()) throw std::invalid_argument("Propagator: non-finite initial state");
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw std::invalid_argument("Propagator: initial state not normalized");

    PropagationResult result{psi0, {}};
    result.norm_defects.reserve(schedule.segments.size());
    double t = 0.0;
    for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
        const auto& seg = schedule.segments[i];
        auto next = step(result.final_state, seg);
        result.norm_defects.push_back(std::abs(next.norm() - result.final_state.norm()));
        result.final_state = std::move(next);
        t += seg.duration;
        if (observer) observer(i, t, result.final_state);
    }
    return result;
}

PropagationResult propagate(const TruncatedOperator& h, const TruncatedOperator& h1, const TruncatedOperator& h2,
                            const PiecewiseControl& schedule, const StateVector& psi0) {
    Propagator prop(h, h1, h2);
    return prop.run(schedule, psi0);
}

RwaAverage rwa_average(const ModelParams& p, int n_fock, double period) {
    if (!std::isfinite(period) || !(period > 0.0)) throw std::invalid_argument("averaging time must be > 0");
    const auto h0 = build_free(p.bare(), n_fock);
    const auto a = build_annihilation(n_fock).matrix;
    const auto sm = build_sigma_minus(n_fock).matrix;
    const Eigen::MatrixXcd co_term = a * sm.adjoint();
    const Eigen::MatrixXcd counter_term = a * sm;
    const Eigen::MatrixXcd co = p.g() * (co_term + co_term.adjoint());
    const Eigen::MatrixXcd counter = p.g() * (counter_term + counter_term.adjoint());

    // H₀ is diagonal, so element (i, j) rotates as e^{i(E_i − E_j)t}.
    const Eigen::VectorXd e0 = h0.matrix.diagonal().real();
    auto average = [&](const Eigen::MatrixXcd& m) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                if (m(i, j) == cd{}) continue;
                out(i, j) = m(i, j) * phase_average(e0(i) - e0(j), period);
            }
        }
        return out;
    };

    RwaAverage r;
    r.co_rotating = {n_fock, average(co)};
    r.counter_rotating = {n_fock, average(counter)};
    r.averaged = {n_fock, r.co_rotating.matrix + r.counter_rotating.matrix};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.counter_rotating.matrix, Eigen::EigenvaluesOnly);
    r.counter_rotating_norm = solver.eigenvalues().cwiseAbs().maxCoeff();
    return r;
}

Eigen::VectorXd dense_spectrum(const TruncatedOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense_spectrum: eigensolver failed");
    return solver.eigenvalues();
}

std::vector<SpectrumRow> compare_spectrum(const ModelParams& p, int n_max, int n_fock) {
    require_fock(n_fock);
    if (n_max < 0 || n_max > n_fock - 1) throw std::domain_error("compare_spectrum needs 0 <= n_max <= n_fock - 1");

    // Every complete block n ≤ n_fock − 1, the spurious level, and the lone
    // |n_fock⟩⊗e₁ left over by the cutoff.
    struct Entry {
        double energy;
        int slot;  // index into rows, or −1 for the cutoff leftover
    };
    std::vector<SpectrumRow> rows;
    std::vector<Entry> entries;
    const auto spurious = LevelIndex::spurious(p);
    rows.push_back({spurious, energy(p, spurious), 0.0, 0.0});
    entries.push_back({rows.back().analytic, 0});
    for (int n = 0; n <= n_fock - 1; ++n) {
        for (Sign nu : {Sign::Minus, Sign::Plus}) {
            const LevelIndex level{n, nu};
            const double e = energy(p, level);
            if (n <= n_max) {
                rows.push_back({level, e, 0.0, 0.0});
                entries.push_back({e, static_cast<int>(rows.size()) - 1});
            } else {
                entries.push_back({e, -1});
            }
        }
    }
    entries.push_back({p.omega() * (n_fock + 0.5) + 0.5 * p.capital_omega(), -1});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& x, const Entry& y) { return x.energy < y.energy; });

    const auto eig = dense_spectrum(build_jc(p, n_fock));
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (entries[k].slot < 0) continue;
        auto& row = rows[static_cast<std::size_t>(entries[k].slot)];
        row.oracle = eig(static_cast<Eigen::Index>(k));
        row.abs_diff = std::abs(row.analytic - row.oracle);
    }
    return rows;
}

}  // namespace jcctl
