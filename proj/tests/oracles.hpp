// Brute-force reference computations shared by the test suites. Nothing here
// calls the closed forms under test: energies and eigenvectors come from
// numerically diagonalizing the 2x2 blocks, matrix elements from explicit
// ladder-operator matrices, roots from sign-change scans.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

inline double f(double delta, double g, int n) { return std::sqrt(0.25 * delta * delta + g * g * (n + 1)); }

// Eigenpairs of the block on span{|n>e1, |n+1>e-1}, ascending.
struct Block {
    Eigen::Vector2d values;
    Eigen::Matrix2d vectors;  // columns
};

inline Block block(double omega, double capital_omega, double g, int n) {
    const double delta = capital_omega - omega;
    Eigen::Matrix2d h;
    h << omega * (n + 1) + 0.5 * delta, g * std::sqrt(n + 1.0), g * std::sqrt(n + 1.0), omega * (n + 1) - 0.5 * delta;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
    return {es.eigenvalues(), es.eigenvectors()};
}

// Energy of (n, +1/−1); n = −1 is the state |0>e-1 at −Δ/2.
inline double energy(double omega, double capital_omega, double g, int n, int nu) {
    if (n == -1) return -0.5 * (capital_omega - omega);
    const auto b = block(omega, capital_omega, g, n);
    return nu > 0 ? b.values(1) : b.values(0);
}

// Bare-basis index: 2n for |n>e1, 2n+1 for |n>e-1.
inline int idx(int n, bool up) { return 2 * n + (up ? 0 : 1); }

// Dressed vector in a Fock truncation of size n_fock from the numerical block
// eigenvectors. Overall sign is arbitrary.
inline Eigen::VectorXcd dressed(double omega, double capital_omega, double g, int n, int nu, int n_fock) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * (n_fock + 1));
    if (n == -1) {
        v(idx(0, false)) = 1.0;
        return v;
    }
    const auto b = block(omega, capital_omega, g, n);
    const Eigen::Vector2d col = b.vectors.col(nu > 0 ? 1 : 0);
    v(idx(n, true)) = col(0);
    v(idx(n + 1, false)) = col(1);
    return v;
}

inline Eigen::MatrixXcd annihilation(int n_fock) {
    const int dim = 2 * (n_fock + 1);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n <= n_fock; ++n) {
        a(idx(n - 1, true), idx(n, true)) = std::sqrt(double(n));
        a(idx(n - 1, false), idx(n, false)) = std::sqrt(double(n));
    }
    return a;
}

inline Eigen::MatrixXcd x_op(int n_fock) {
    const auto a = annihilation(n_fock);
    return (a + a.adjoint()) / std::sqrt(2.0);
}

inline Eigen::MatrixXcd p_op(int n_fock) {
    const auto a = annihilation(n_fock);
    return cd(0.0, 1.0) * (a.adjoint() - a) / std::sqrt(2.0);
}

// All roots of h on [lo, hi] located by sign changes on a uniform grid, each
// refined by bisection. Exact zeros on grid points count once.
inline std::vector<double> scan_roots(const std::function<double(double)>& h, double lo, double hi, double step) {
    std::vector<double> roots;
    double x0 = lo;
    double h0 = h(x0);
    if (h0 == 0.0) roots.push_back(x0);
    const long count = static_cast<long>(std::ceil((hi - lo) / step));
    for (long k = 1; k <= count; ++k) {
        const double x1 = std::min(hi, lo + k * step);
        const double h1 = h(x1);
        if (h1 == 0.0) {
            roots.push_back(x1);
        } else if (h0 != 0.0 && (h0 < 0) != (h1 < 0)) {
            double a = x0, b = x1, ha = h0;
            for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
                const double m = 0.5 * (a + b);
                const double hm = h(m);
                if ((hm < 0) == (ha < 0)) {
                    a = m;
                    ha = hm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        h0 = h1;
    }
    return roots;
}

// Right-hand sides of the three resonance equations, written out directly.
inline double rhs_1c(double delta, double g, int m, int n) {
    return f(delta, g, m + 1) + f(delta, g, m) - f(delta, g, n + 1) + f(delta, g, n);
}
inline double rhs_1d(double delta, double g, int m, int n) {
    return f(delta, g, m + 1) - f(delta, g, m) - f(delta, g, n + 1) + f(delta, g, n);
}
inline double rhs_2c(double delta, double g, int m, int n) {
    return f(delta, g, m + 1) + f(delta, g, m) - f(delta, g, n + 1) - f(delta, g, n);
}

// Closest coincidence between a chain transition and any other coupled
// transition, using only numerically diagonalized blocks and the explicit X
// sandwich to decide which pairs are coupled.
struct Level {
    int n;
    int nu;
};

inline double min_chain_gap(double omega, double capital_omega, double g, int n_max) {
    const int n_fock = n_max + 2;
    const auto x = x_op(n_fock);
    std::vector<Level> levels{{-1, 0}};
    for (int n = 0; n <= n_max; ++n) {
        levels.push_back({n, -1});
        levels.push_back({n, 1});
    }
    std::vector<Eigen::VectorXcd> vecs;
    std::vector<double> e;
    for (const auto& l : levels) {
        vecs.push_back(dressed(omega, capital_omega, g, l.n, l.nu == 0 ? -1 : l.nu, n_fock));
        e.push_back(energy(omega, capital_omega, g, l.n, l.nu == 0 ? -1 : l.nu));
    }
    struct Pair {
        std::size_t i, j;
        double freq;
        bool chain;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t j = i + 1; j < levels.size(); ++j) {
            if (std::abs(vecs[i].dot(x * vecs[j])) <= 1e-12) continue;
            const auto& hi = levels[i].n > levels[j].n ? levels[i] : levels[j];
            const auto& lo = levels[i].n > levels[j].n ? levels[j] : levels[i];
            const bool chain = hi.n == lo.n + 1 && hi.nu == 1;
            pairs.push_back({i, j, std::abs(e[i] - e[j]), chain});
        }
    }
    double best = INFINITY;
    for (const auto& c : pairs) {
        if (!c.chain) continue;
        for (const auto& o : pairs) {
            if (o.i == c.i && o.j == c.j) continue;
            best = std::min(best, std::abs(c.freq - o.freq));
        }
    }
    return best;
}

// Fixed-seed generator helpers.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
    bool coin() { return integer(0, 1) == 1; }
};

}  // namespace oracle
