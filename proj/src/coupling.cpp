#include "jcctl/coupling.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace jcctl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Element for hi.n == lo.n + 1, both n ≥ 0. With |k,+⟩ = c_k|k↑⟩ + s_k|k+1↓⟩
// and |k,−⟩ = −s_k|k↑⟩ + c_k|k+1↓⟩, X raises |n↑⟩→|n+1↑⟩ with √(n+1)/√2 and
// |n+1↓⟩→|n+2↓⟩ with √(n+2)/√2.
double adjacent_element(const ModelParams& p, const LevelIndex& hi, const LevelIndex& lo) {
    const int n = lo.n;
    const auto lo_v = eigenvector_coeffs(p, lo);
    const auto hi_v = eigenvector_coeffs(p, hi);
    const double r1 = std::sqrt(static_cast<double>(n + 1));
    const double r2 = std::sqrt(static_cast<double>(n + 2));
    return kInvSqrt2 * (r1 * hi_v.up * lo_v.up + r2 * hi_v.down * lo_v.down);
}

}  // namespace

bool TransitionEdge::same_pair(const TransitionEdge& other) const noexcept {
    return (a == other.a && b == other.b) || (a == other.b && b == other.a);
}

double h1_element(const ModelParams& p, const LevelIndex& a, const LevelIndex& b) {
    require_valid(a, p);
    require_valid(b, p);
    const LevelIndex& hi = a.n >= b.n ? a : b;
    const LevelIndex& lo = a.n >= b.n ? b : a;
    if (hi.n - lo.n != 1) return 0.0;  // selection rule: X changes n by one

    if (lo.n == -1) {
        // |−1⟩ = |0↓⟩ and X|0↓⟩ = |1↓⟩/√2, which is the second slot of |0,ν⟩.
        return kInvSqrt2 * eigenvector_coeffs(p, hi).down;
    }
    return adjacent_element(p, hi, lo);
}

complex h2_element(const ModelParams& p, const LevelIndex& a, const LevelIndex& b) {
    const double x = h1_element(p, a, b);
    if (x == 0.0) return {0.0, 0.0};
    return a.n > b.n ? complex{0.0, x} : complex{0.0, -x};
}

TransitionEdge make_edge(const ModelParams& p, const LevelIndex& x, const LevelIndex& y) {
    if (x == y) throw std::invalid_argument("an edge needs two distinct levels");
    TransitionEdge e;
    e.a = x.n >= y.n ? x : y;
    e.b = x.n >= y.n ? y : x;
    if (e.a.n == e.b.n && e.a.nu == Sign::Minus) std::swap(e.a, e.b);
    e.freq = std::abs(energy(p, e.a) - energy(p, e.b));
    e.h1 = h1_element(p, e.a, e.b);
    e.h2 = h2_element(p, e.a, e.b);
    return e;
}

std::vector<LevelIndex> levels_up_to(const ModelParams& p, int n_max) {
    std::vector<LevelIndex> levels;
    levels.reserve(static_cast<std::size_t>(2 * (n_max + 1) + 1));
    levels.push_back(LevelIndex::spurious(p));
    for (int n = 0; n <= n_max; ++n) {
        levels.push_back({n, Sign::Minus});
        levels.push_back({n, Sign::Plus});
    }
    return levels;
}

std::vector<TransitionEdge> coupled_pairs(const ModelParams& p, int n_max, double threshold) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    if (!(threshold >= 0.0)) throw std::invalid_argument("threshold must be >= 0");

    const auto levels = levels_up_to(p, n_max);
    std::vector<TransitionEdge> edges;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t j = i + 1; j < levels.size(); ++j) {
            if (std::abs(levels[i].n - levels[j].n) != 1) continue;
            const double amp = h1_element(p, levels[i], levels[j]);
            if (std::abs(amp) > threshold) edges.push_back(make_edge(p, levels[i], levels[j]));
        }
    }
    return edges;
}

}  // namespace jcctl
