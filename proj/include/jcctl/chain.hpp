// The chain C₀ of coupled transitions and its numerical
// non-resonance certificate on a finite truncation.

#pragma once

#include "jcctl/coupling.hpp"
#include "jcctl/resonance.hpp"

#include <string>
#include <vector>

namespace jcctl {

enum class Verdict { CertifiedNonResonant, ResonanceFound, CouplingBroken };

std::string to_string(Verdict v);

// [(n+1,+),(n,+)] and [(n+1,+),(n,−)] for 0 ≤ n < n_max, plus [(0,+),spurious].
std::vector<TransitionEdge> build_c0(const ModelParams& p, int n_max);

bool is_c0_edge(const TransitionEdge& e) noexcept;

// Levels spanned by the chain truncated at n_max: the spurious level, (n,±)
// for n < n_max, and (n_max,+). (n_max,−) is only linked upward, through
// (n_max+1,+), so it belongs to the next truncation.
std::vector<LevelIndex> chain_levels(const ModelParams& p, int n_max);

struct Connectivity {
    bool connected{false};
    // Levels outside the spurious level's component; every level when that
    // component is the spurious level alone.
    std::vector<LevelIndex> uncovered;
};

// Connectivity of chain_levels(p, n_max) using edges with |h1| > threshold.
// Edges with an endpoint outside that set are ignored.
Connectivity check_connected(const std::vector<TransitionEdge>& edges, const ModelParams& p,
                             int n_max, double threshold);

inline constexpr double kDefaultThreshold = 1e-12;
inline double default_tolerance(const ModelParams& p) { return 1e-9 * p.omega(); }

struct ChainReport {
    double g{0.0};
    double omega{0.0};
    double capital_omega{0.0};
    int n_max{0};
    double tol{0.0};
    double threshold{0.0};
    bool connected{false};
    std::vector<LevelIndex> uncovered;
    std::vector<ResonanceHit> resonant_conflicts;
    std::vector<TransitionEdge> zero_amplitude_edges;
    // Coupled pairs whose energies coincide within tol (violates the
    // degenerate-coupling assumption).
    std::vector<TransitionEdge> degenerate_coupled_pairs;
    bool resonance_found{false};
    bool coupling_broken{false};
    Verdict verdict{Verdict::CouplingBroken};
    std::string caveat;
    std::vector<std::string> warnings;
};

ChainReport certify(const ModelParams& p, int n_max, double tol, double threshold = kDefaultThreshold);

}  // namespace jcctl
