// Matrix elements of the bosonic controls H₁ = X⊗𝟙 and
// H₂ = P⊗𝟙 between dressed states, and the graph of coupled level pairs.

#pragma once

#include "jcctl/model.hpp"

#include <complex>
#include <vector>

namespace jcctl {

using complex = std::complex<double>;

// Unordered pair stored with the higher-n level first (the bra of the
// closed-form catalogue).
struct TransitionEdge {
    LevelIndex a;
    LevelIndex b;
    double freq{0.0};  // |E_a − E_b|
    double h1{0.0};    // ⟨a|H₁|b⟩
    complex h2{};      // ⟨a|H₂|b⟩ = i·h1 in this orientation

    bool same_pair(const TransitionEdge& other) const noexcept;
};

// Builds an edge with amplitudes and frequency filled in; orders a/b so the
// higher-n level comes first.
TransitionEdge make_edge(const ModelParams& p, const LevelIndex& x, const LevelIndex& y);

// ⟨a|X⊗𝟙|b⟩ in the dressed basis. Real and symmetric in (a, b).
double h1_element(const ModelParams& p, const LevelIndex& a, const LevelIndex& b);

// ⟨a|P⊗𝟙|b⟩ with P = i(a†−a)/√2. Equals i·h1 when a has the larger n;
// swapping the arguments conjugates.
complex h2_element(const ModelParams& p, const LevelIndex& a, const LevelIndex& b);

// All levels with n ≤ n_max, spurious level first, then (n,−), (n,+) by n.
std::vector<LevelIndex> levels_up_to(const ModelParams& p, int n_max);

// Every unordered pair among levels_up_to(p, n_max) with |h1| > threshold.
std::vector<TransitionEdge> coupled_pairs(const ModelParams& p, int n_max, double threshold = 0.0);

}  // namespace jcctl
