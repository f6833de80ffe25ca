// Closed-form Jaynes-Cummings spectrum, dressed-state coefficients
// and the f_n family that every resonance formula is written in.
//
// Units: ħ = 1, all frequencies share one (arbitrary) unit.

#pragma once

#include <array>
#include <compare>
#include <string>

namespace jcctl {

enum class Sign : int { Minus = -1, Plus = 1 };

constexpr double to_double(Sign s) noexcept { return static_cast<double>(static_cast<int>(s)); }
constexpr Sign flip(Sign s) noexcept { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
constexpr char to_char(Sign s) noexcept { return s == Sign::Plus ? '+' : '-'; }

// Oscillator and qubit frequencies without the coupling.
struct BareFrequencies {
    double omega{1.0};          // oscillator ω > 0
    double capital_omega{1.0};  // qubit Ω > 0

    double detuning() const noexcept { return capital_omega - omega; }

    // Throws std::invalid_argument unless both frequencies are finite and positive.
    void validate() const;
};

class ModelParams {
public:
    ModelParams(double omega, double capital_omega, double g);
    ModelParams(BareFrequencies bare, double g);

    double omega() const noexcept { return bare_.omega; }
    double capital_omega() const noexcept { return bare_.capital_omega; }
    double g() const noexcept { return g_; }
    const BareFrequencies& bare() const noexcept { return bare_; }

    // Δ = Ω − ω
    double detuning() const noexcept { return bare_.detuning(); }
    // δ(Δ): + for Δ ≥ 0, − otherwise.
    Sign delta_sign() const noexcept { return detuning() >= 0.0 ? Sign::Plus : Sign::Minus; }
    // Label carried by the uncoupled ground state |0⟩⊗e₋₁. Its energy is
    // E⁰_(0,−1) = −Δ/2 = ν f_{−1}, which fixes ν = −δ(Δ).
    Sign spurious_sign() const noexcept { return flip(delta_sign()); }

    ModelParams with_g(double g) const { return ModelParams(bare_, g); }

private:
    BareFrequencies bare_;
    double g_;
};

// Dressed-state label (n, ν). n = −1 names the spurious level and is only
// meaningful together with a ModelParams (see is_valid).
struct LevelIndex {
    int n{0};
    Sign nu{Sign::Plus};

    static LevelIndex spurious(const ModelParams& p) { return {-1, p.spurious_sign()}; }

    friend constexpr auto operator<=>(const LevelIndex&, const LevelIndex&) = default;
};

std::string to_string(const LevelIndex& level);

bool is_valid(const LevelIndex& level, const ModelParams& p) noexcept;
bool is_valid(const LevelIndex& level, const BareFrequencies& bare) noexcept;
// Throws std::domain_error when the level is not in the index set for p.
void require_valid(const LevelIndex& level, const ModelParams& p);

// Index copies 𝔑_±: the naturals, plus −1 in the copy whose sign is the
// spurious label.
bool in_branch_set(int n, Sign branch, const BareFrequencies& bare) noexcept;

enum class Labeling { Magnitude, Analytic };

struct MixingCoefficients {
    double theta{0.0};  // block rotation angle, tan θ = 2g√(n+1)/Δ
    double c{1.0};      // cos(θ/2)
    double s{0.0};      // sin(θ/2)
};

// Amplitudes of a dressed state on (|n⟩⊗e₁, |n+1⟩⊗e₋₁). For the spurious
// level the second slot is |0⟩⊗e₋₁ and the first is zero.
struct DressedCoefficients {
    double up{0.0};
    double down{0.0};
};

// f_n(g) = ½√(Δ² + 4g²(n+1)), n ≥ −1.
double f(const ModelParams& p, int n);
// ∂f_n/∂g = g(n+1)/f_n(g); zero where f_n vanishes.
double f_derivative(const ModelParams& p, int n);

double energy(const ModelParams& p, const LevelIndex& level,
              Labeling labeling = Labeling::Magnitude);

MixingCoefficients mixing(const ModelParams& p, int n);

DressedCoefficients eigenvector_coeffs(const ModelParams& p, const LevelIndex& level);

// Small-g expansion of E_n as a polynomial in g (coefficients of g⁰..g⁴).
struct TaylorExpansion {
    std::array<double, 5> coeffs{};
    bool exact{false};  // Δ = 0: the linear form is exact

    double operator()(double g) const noexcept;
};

TaylorExpansion taylor_energy(const ModelParams& p, const LevelIndex& level, int order);

}  // namespace jcctl
