// Dense operators on the truncated Fock ⊗ spin space and
// piecewise-constant propagation. Also the brute-force side of every
// closed-form check in the library.
//
// Basis order: index 2n is |n⟩⊗e₁, index 2n+1 is |n⟩⊗e₋₁, for n = 0..n_fock.

#pragma once

#include "jcctl/model.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace jcctl {

enum class Spin { Up, Down };  // e₁, e₋₁
enum class ControlKind { X, P };

inline constexpr int kGuardBand = 10;

Eigen::Index basis_index(int n, Spin spin) noexcept;

struct TruncatedOperator {
    int n_fock{0};
    Eigen::MatrixXcd matrix;

    Eigen::Index dim() const noexcept { return matrix.rows(); }
    bool is_hermitian(double rel_tol = 1e-13) const;
};

// Boson a ⊗ 𝟙 and spin lowering 𝟙 ⊗ σ (σ e₁ = e₋₁).
TruncatedOperator build_annihilation(int n_fock);
TruncatedOperator build_sigma_minus(int n_fock);
// C = a†a + σ†σ.
TruncatedOperator build_excitation_number(int n_fock);

// H_JC = ω(a†a + ½) + (Ω/2)σ_z + g(aσ† + a†σ).
TruncatedOperator build_jc(const ModelParams& p, int n_fock);
// H_R = ω(a†a + ½) + (Ω/2)σ_z + g(a + a†)(σ + σ†).
TruncatedOperator build_rabi(const ModelParams& p, int n_fock);
// H₀ = H_JC(0) = H_R(0).
TruncatedOperator build_free(const BareFrequencies& bare, int n_fock);
// X = (a + a†)/√2 or P = i(a† − a)/√2, acting on the boson only.
TruncatedOperator build_control(ControlKind kind, int n_fock);

struct StateVector {
    int n_fock{0};
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
};

StateVector bare_state(int n_fock, int n, Spin spin);
// Dressed eigenvector |n,ν⟩ embedded in the truncation (needs n+1 ≤ n_fock).
StateVector dressed_state(const ModelParams& p, const LevelIndex& level, int n_fock);

// |⟨psi|phi⟩|
double fidelity(const StateVector& psi, const StateVector& phi);
// ‖psi − phi‖
double norm_distance(const StateVector& psi, const StateVector& phi);

// ⟨a|op|b⟩ between dressed states; both levels must stay kGuardBand levels
// below the Fock cutoff.
std::complex<double> dressed_element(const ModelParams& p, const TruncatedOperator& op,
                                     const LevelIndex& a, const LevelIndex& b);

struct ControlSegment {
    double duration{0.0};
    double u1{0.0};
    double u2{0.0};
};

struct PiecewiseControl {
    std::vector<ControlSegment> segments;

    // Throws std::invalid_argument on non-positive or non-finite entries.
    void validate() const;
    // Whether every u lies in [0, bound].
    bool within_bounds(double bound) const;
    double total_duration() const;
};

struct PropagationResult {
    StateVector final_state;
    std::vector<double> norm_defects;  // |‖ψ_out‖ − ‖ψ_in‖| per segment
};

// Called after each segment with the segment index, end time and state.
using PropagationObserver = std::function<void(std::size_t, double, const StateVector&)>;

// exp(−i(H + u₁H₁ + u₂H₂)Δt) per segment via Hermitian eigendecomposition.
// One decomposition per distinct (u₁, u₂), cached for the lifetime of the
// object; not safe to share across threads.
class Propagator {
public:
    Propagator(TruncatedOperator h, TruncatedOperator h1, TruncatedOperator h2);

    StateVector step(const StateVector& psi, const ControlSegment& seg);
    PropagationResult run(const PiecewiseControl& schedule, const StateVector& psi0,
                          const PropagationObserver& observer = {});

    std::size_t cached_decompositions() const noexcept { return cache_.size(); }

private:
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& decomposition(double u1, double u2);

    TruncatedOperator h_;
    TruncatedOperator h1_;
    TruncatedOperator h2_;
    std::map<std::pair<double, double>, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>> cache_;
};

PropagationResult propagate(const TruncatedOperator& h, const TruncatedOperator& h1,
                            const TruncatedOperator& h2, const PiecewiseControl& schedule,
                            const StateVector& psi0);

struct RwaAverage {
    TruncatedOperator averaged;           // full time average of H_R − H₀
    TruncatedOperator co_rotating;        // average of the g(aσ† + a†σ) part
    TruncatedOperator counter_rotating;   // average of the g(aσ + a†σ†) part
    double counter_rotating_norm{0.0};    // spectral norm of the latter
};

// (1/T)∫₀ᵀ e^{iH₀t}(H_R − H₀)e^{−iH₀t} dt, integrated per matrix element.
RwaAverage rwa_average(const ModelParams& p, int n_fock, double period);

// Analytic energies against dense diagonalization of build_jc.
struct SpectrumRow {
    LevelIndex level;
    double analytic{0.0};
    double oracle{0.0};
    double abs_diff{0.0};
};

// Eigenvalues of a Hermitian operator in ascending order.
Eigen::VectorXd dense_spectrum(const TruncatedOperator& op);

// Rows for the spurious level and all (n,±) with n ≤ n_max; requires
// n_max ≤ n_fock − 1 so every reported block is complete.
std::vector<SpectrumRow> compare_spectrum(const ModelParams& p, int n_max, int n_fock);

}  // namespace jcctl
