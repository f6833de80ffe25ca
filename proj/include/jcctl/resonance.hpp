// The singular coupling values g* at which the chain
// certificate can fail: eigenvalue crossings with nonzero coupling, and
// coincidences between a chain transition and another coupled transition.

#pragma once

#include "jcctl/coupling.hpp"
#include "jcctl/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jcctl {

enum class SingularFamily {
    Zero,      // g = 0
    CritEig,   // E_(n,ν) = E_(n+1,−)
    OnePlusC,  // 2ω = f_{m+1} + f_m − f_{n+1} + f_n,  m, n ∈ 𝔑₊
    OneD,      // 2ω = f_{m+1} − f_m − f_{n+1} + f_n,  m, n ∈ 𝔑₋, m < n
    TwoC,      // 2ω = f_{m+1} + f_m − f_{n+1} − f_n,  m, n ∈ 𝔑₋, m > n
    BenignG2,  // E_(n,ν) = E_(n+2,−): uncoupled crossing, not singular
};

std::string to_string(SingularFamily family);
std::optional<SingularFamily> family_from_string(const std::string& name);

// One equation that produced a singular value. For CritEig/BenignG2 the
// crossing pair is (n, nu) and (m, −) with m = n+1 or n+2; for the resonance
// families (m, n) are the equation indices and nu is unused (+).
struct SingularTag {
    SingularFamily family{SingularFamily::Zero};
    int m{0};
    int n{0};
    Sign nu{Sign::Plus};
    double residual{0.0};
    // h1 of the level pair that becomes degenerate (crossings) or of the
    // non-chain transition that resonates with the chain (resonances).
    double amplitude{0.0};
};

struct SingularPoint {
    double g_star{0.0};  // non-negative representative of ±g*
    double residual{0.0};
    std::vector<SingularTag> tags;

    SingularFamily family() const { return tags.front().family; }
    int max_index() const;
};

// |g| at which E_level = E_(n+1,−), or nullopt when the radicand is negative.
std::optional<double> g1_crossing(const BareFrequencies& bare, const LevelIndex& level);
// |g| at which E_level = E_(n+2,−). Coupling vanishes there.
std::optional<double> g2_crossing(const BareFrequencies& bare, const LevelIndex& level);

bool s2_indices_valid(const BareFrequencies& bare, SingularFamily family, int m, int n);

// Right-hand side of the family equation 2ω = RHS(g).
double s2_rhs(const BareFrequencies& bare, SingularFamily family, int m, int n, double g);

// All g ≥ 0 solving 2ω = RHS(g). RHS is strictly increasing in |g| on the
// valid index sets, so there is at most one non-negative root.
// Throws std::domain_error for indices outside the family's index set.
std::vector<double> solve_s2(const BareFrequencies& bare, SingularFamily family, int m, int n);

struct SingularSet {
    std::vector<SingularPoint> points;  // sorted ascending, always starts at 0
    std::vector<SingularPoint> benign;  // G2 crossings (only when requested)
    // Some family instance with an index above n_cap has a root ≤ g_max.
    bool possibly_truncated{false};
    std::vector<std::string> warnings;
};

inline constexpr double kDedupTolerance = 1e-9;  // × ω

SingularSet enumerate_singular(const BareFrequencies& bare, double g_max, int n_cap,
                               bool include_benign = false);

struct ResonanceHit {
    TransitionEdge chain_edge;
    TransitionEdge other;
    double dfreq{0.0};
};

// Frequency coincidences (within tol) between chain edges and any other edge.
// Pairs where both edges belong to the chain are reported once.
std::vector<ResonanceHit> find_conflicts(const std::vector<TransitionEdge>& chain,
                                         const std::vector<TransitionEdge>& coupled, double tol);

// Scan of the truncated spectrum: every coupled pair vs every chain edge.
std::vector<ResonanceHit> resonance_scan(const ModelParams& p, int n_max, double tol);

// Smallest |freq(chain) − freq(other)| over the truncation; +inf if there is
// no other edge to compare with.
double min_chain_detuning(const ModelParams& p, int n_max);

}  // namespace jcctl
