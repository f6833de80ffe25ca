#include "jcctl/model.hpp"

#include <cmath>
#include <stdexcept>

namespace jcctl {

void BareFrequencies::validate() const {
    if (!std::isfinite(omega) || !std::isfinite(capital_omega)) {
        throw std::invalid_argument("frequencies must be finite");
    }
    if (omega <= 0.0 || capital_omega <= 0.0) {
        throw std::invalid_argument("frequencies must be positive (omega > 0, Omega > 0)");
    }
}

ModelParams::ModelParams(double omega, double capital_omega, double g)
    : ModelParams(BareFrequencies{omega, capital_omega}, g) {}

ModelParams::ModelParams(BareFrequencies bare, double g) : bare_(bare), g_(g) {
    bare_.validate();
    if (!std::isfinite(g_)) throw std::invalid_argument("coupling g must be finite");
    if (g_ == 0.0) g_ = 0.0;  // drop negative zero
}

std::string to_string(const LevelIndex& level) {
    return "(" + std::to_string(level.n) + "," + to_char(level.nu) + ")";
}

bool is_valid(const LevelIndex& level, const BareFrequencies& bare) noexcept {
    if (level.n >= 0) return true;
    const Sign spurious = bare.detuning() >= 0.0 ? Sign::Minus : Sign::Plus;
    return level.n == -1 && level.nu == spurious;
}

bool is_valid(const LevelIndex& level, const ModelParams& p) noexcept {
    return is_valid(level, p.bare());
}

void require_valid(const LevelIndex& level, const ModelParams& p) {
    if (!is_valid(level, p)) {
        throw std::domain_error("level " + to_string(level) + " is not in the index set");
    }
}

bool in_branch_set(int n, Sign branch, const BareFrequencies& bare) noexcept {
    return is_valid(LevelIndex{n, branch}, bare);
}

double f(const ModelParams& p, int n) {
    if (n < -1) throw std::domain_error("f_n requires n >= -1");
    // hypot keeps 4g²(n+1) from overflowing for large |g| or n.
    return 0.5 * std::hypot(p.detuning(), 2.0 * p.g() * std::sqrt(static_cast<double>(n + 1)));
}

double f_derivative(const ModelParams& p, int n) {
    const double fn = f(p, n);
    if (fn == 0.0) return 0.0;
    return p.g() * static_cast<double>(n + 1) / fn;
}

double energy(const ModelParams& p, const LevelIndex& level, Labeling labeling) {
    require_valid(level, p);
    const double nu = to_double(level.nu);
    const double base = p.omega() * static_cast<double>(level.n + 1);
    if (labeling == Labeling::Analytic && p.detuning() == 0.0) {
        return base + nu * std::sqrt(static_cast<double>(level.n + 1)) * p.g();
    }
    return base + nu * f(p, level.n);
}

MixingCoefficients mixing(const ModelParams& p, int n) {
    if (n < 0) throw std::domain_error("mixing angle requires n >= 0");
    const double half_delta = 0.5 * p.detuning();
    const double coupling = p.g() * std::sqrt(static_cast<double>(n + 1));
    const double fn = std::hypot(half_delta, coupling);

    MixingCoefficients m;
    if (fn == 0.0) return m;  // degenerate bare pair: keep the bare basis

    m.theta = std::atan2(coupling, half_delta);
    // Half-angle formulas on the larger component first; the smaller one
    // follows from sin θ = 2cs without cancellation.
    if (half_delta >= 0.0) {
        m.c = std::sqrt((fn + half_delta) / (2.0 * fn));
        m.s = coupling / (2.0 * fn * m.c);
    } else {
        const double abs_s = std::sqrt((fn - half_delta) / (2.0 * fn));
        m.c = std::abs(coupling) / (2.0 * fn * abs_s);
        m.s = coupling < 0.0 ? -abs_s : abs_s;
    }
    return m;
}

DressedCoefficients eigenvector_coeffs(const ModelParams& p, const LevelIndex& level) {
    require_valid(level, p);
    if (level.n == -1) return {0.0, 1.0};
    const auto m = mixing(p, level.n);
    if (level.nu == Sign::Plus) return {m.c, m.s};
    return {-m.s, m.c};
}

double TaylorExpansion::operator()(double g) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * g + *it;
    return acc;
}

TaylorExpansion taylor_energy(const ModelParams& p, const LevelIndex& level, int order) {
    if (order != 2 && order != 4) throw std::invalid_argument("taylor order must be 2 or 4");
    require_valid(level, p);

    const double nu = to_double(level.nu);
    const double k = static_cast<double>(level.n + 1);
    const double abs_delta = std::abs(p.detuning());

    TaylorExpansion t;
    t.coeffs[0] = p.omega() * k;
    if (abs_delta == 0.0) {
        t.coeffs[1] = nu * std::sqrt(k);
        t.exact = true;
        return t;
    }
    t.coeffs[0] += nu * 0.5 * abs_delta;
    t.coeffs[2] = nu * k / abs_delta;
    if (order == 4) t.coeffs[4] = -nu * k * k / (abs_delta * abs_delta * abs_delta);
    t.exact = (k == 0.0);
    return t;
}

}  // namespace jcctl
