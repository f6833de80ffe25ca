#include "jcctl/resonance.hpp"

#include "jcctl/chain.hpp"
#include "jcctl/root_finding.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <utility>
#include <stdexcept>

namespace jcctl {

namespace {

// f_n(g) for fixed bare frequencies, without re-validating them per call.
double f_at(const BareFrequencies& bare, int n, double g) {
    return 0.5 * std::hypot(bare.detuning(), 2.0 * g * std::sqrt(static_cast<double>(n + 1)));
}

double sqrt_index(int n) { return std::sqrt(static_cast<double>(n + 1)); }

bool is_resonance_family(SingularFamily family) {
    return family == SingularFamily::OnePlusC || family == SingularFamily::OneD ||
           family == SingularFamily::TwoC;
}

// Coefficients (α, β, γ, ε) of RHS = α f_{m+1} + β f_m + γ f_{n+1} + ε f_n.
std::array<double, 4> rhs_signs(SingularFamily family) {
    switch (family) {
        case SingularFamily::OnePlusC: return {1.0, 1.0, -1.0, 1.0};
        case SingularFamily::OneD: return {1.0, -1.0, -1.0, 1.0};
        case SingularFamily::TwoC: return {1.0, 1.0, -1.0, -1.0};
        default: break;
    }
    throw std::invalid_argument("not a resonance family: " + to_string(family));
}

// Shared closed form for both crossing families. The crossing condition
// reduces to x² − 2A x + A² − B = 0 in x = g², and A² − B has the factored
// form `product`, which keeps the minus root free of cancellation.
std::optional<double> crossing_root(double a, double b, double product, Sign nu) {
    const double root_b = std::sqrt(b);
    double x = 0.0;
    if (nu == Sign::Minus) {
        x = a + root_b;
    } else {
        x = product / (a + root_b);
    }
    if (x < 0.0) return std::nullopt;
    return std::sqrt(x);
}

void require_level(const BareFrequencies& bare, const LevelIndex& level) {
    if (!is_valid(level, bare)) {
        throw std::domain_error("level " + to_string(level) + " is not in the index set");
    }
}

// Level (m, branch) of the non-chain arc [(m+1,−),(m,branch)] in each family.
Sign partner_branch(SingularFamily family) {
    return family == SingularFamily::OneD ? Sign::Minus : Sign::Plus;
}

using EdgeKey = std::pair<LevelIndex, LevelIndex>;

SingularPoint single(double g, SingularTag tag) {
    SingularPoint pt;
    pt.g_star = g;
    pt.residual = tag.residual;
    pt.tags.push_back(tag);
    return pt;
}

std::vector<SingularPoint> merge_sorted(std::vector<SingularPoint> raw, double tol) {
    std::sort(raw.begin(), raw.end(),
              [](const SingularPoint& x, const SingularPoint& y) { return x.g_star < y.g_star; });
    std::vector<SingularPoint> out;
    for (auto& pt : raw) {
        if (!out.empty() && pt.g_star - out.back().g_star <= tol) {
            auto& dst = out.back();
            dst.residual = std::max(dst.residual, pt.residual);
            dst.tags.insert(dst.tags.end(), pt.tags.begin(), pt.tags.end());
            continue;
        }
        out.push_back(std::move(pt));
    }
    return out;
}

}  // namespace

std::string to_string(SingularFamily family) {
    switch (family) {
        case SingularFamily::Zero: return "Zero";
        case SingularFamily::CritEig: return "CritEig";
        case SingularFamily::OnePlusC: return "OnePlusC";
        case SingularFamily::OneD: return "OneD";
        case SingularFamily::TwoC: return "TwoC";
        case SingularFamily::BenignG2: return "BenignG2";
    }
    return "unknown";
}

std::optional<SingularFamily> family_from_string(const std::string& name) {
    for (auto fam : {SingularFamily::Zero, SingularFamily::CritEig, SingularFamily::OnePlusC,
                     SingularFamily::OneD, SingularFamily::TwoC, SingularFamily::BenignG2}) {
        if (to_string(fam) == name) return fam;
    }
    return std::nullopt;
}

int SingularPoint::max_index() const {
    int best = -1;
    for (const auto& t : tags) {
        int top = std::max(t.m, t.n);
        // Resonance equations touch level m+1 and n+1.
        if (t.family != SingularFamily::CritEig && t.family != SingularFamily::BenignG2 &&
            t.family != SingularFamily::Zero) {
            top += 1;
        }
        best = std::max(best, top);
    }
    return best;
}

std::optional<double> g1_crossing(const BareFrequencies& bare, const LevelIndex& level) {
    bare.validate();
    require_level(bare, level);
    const double w = bare.omega;
    const double d = bare.detuning();
    const double n = static_cast<double>(level.n);
    const double a = w * w * (2.0 * n + 3.0);
    const double b = 4.0 * w * w * w * w * (n + 1.0) * (n + 2.0) + w * w * d * d;
    return crossing_root(a, b, w * w * (w - d) * (w + d), level.nu);
}

std::optional<double> g2_crossing(const BareFrequencies& bare, const LevelIndex& level) {
    bare.validate();
    require_level(bare, level);
    const double w = bare.omega;
    const double d = bare.detuning();
    const double n = static_cast<double>(level.n);
    const double a = 2.0 * w * w * (n + 2.0);
    const double b = 4.0 * w * w * w * w * (n + 1.0) * (n + 3.0) + w * w * d * d;
    return crossing_root(a, b, w * w * (2.0 * w - d) * (2.0 * w + d), level.nu);
}

bool s2_indices_valid(const BareFrequencies& bare, SingularFamily family, int m, int n) {
    switch (family) {
        case SingularFamily::OnePlusC:
            return in_branch_set(m, Sign::Plus, bare) && in_branch_set(n, Sign::Plus, bare);
        case SingularFamily::OneD:
            return in_branch_set(m, Sign::Minus, bare) && in_branch_set(n, Sign::Minus, bare) && m < n;
        case SingularFamily::TwoC:
            return in_branch_set(m, Sign::Minus, bare) && in_branch_set(n, Sign::Minus, bare) && m > n;
        default: return false;
    }
}

double s2_rhs(const BareFrequencies& bare, SingularFamily family, int m, int n, double g) {
    const auto c = rhs_signs(family);
    return c[0] * f_at(bare, m + 1, g) + c[1] * f_at(bare, m, g) + c[2] * f_at(bare, n + 1, g) +
           c[3] * f_at(bare, n, g);
}

std::vector<double> solve_s2(const BareFrequencies& bare, SingularFamily family, int m, int n) {
    bare.validate();
    if (!is_resonance_family(family)) {
        throw std::invalid_argument("solve_s2: not a resonance family: " + to_string(family));
    }
    if (!s2_indices_valid(bare, family, m, n)) {
        throw std::domain_error("solve_s2: (m, n) = (" + std::to_string(m) + ", " + std::to_string(n) +
                                ") outside the index set of " + to_string(family));
    }
    const double target = 2.0 * bare.omega;

    if (bare.detuning() == 0.0) {
        // Every f_k is |g|√(k+1): the equation is linear in |g|.
        const auto c = rhs_signs(family);
        const double slope = c[0] * sqrt_index(m + 1) + c[1] * sqrt_index(m) +
                             c[2] * sqrt_index(n + 1) + c[3] * sqrt_index(n);
        if (!(slope > 0.0)) return {};
        return {target / slope};
    }

    auto h = [&](double g) { return s2_rhs(bare, family, m, n, g) - target; };
    if (h(0.0) >= 0.0) return {};
    const auto bracket = roots::expand_upward(h, 0.0, bare.omega);
    if (!bracket) return {};
    return {roots::bisect(h, *bracket)};
}

SingularSet enumerate_singular(const BareFrequencies& bare, double g_max, int n_cap, bool include_benign) {
    bare.validate();
    if (!(g_max >= 0.0) || !std::isfinite(g_max)) throw std::invalid_argument("g_max must be finite and >= 0");
    if (n_cap < 0) throw std::invalid_argument("n_cap must be >= 0");

    const double w = bare.omega;
    std::vector<SingularPoint> raw;
    std::vector<SingularPoint> benign_raw;
    raw.push_back(single(0.0, SingularTag{SingularFamily::Zero, 0, 0, Sign::Plus, 0.0, 0.0}));

    std::vector<LevelIndex> levels;
    levels.push_back({-1, bare.detuning() >= 0.0 ? Sign::Minus : Sign::Plus});
    for (int n = 0; n <= n_cap; ++n) {
        levels.push_back({n, Sign::Minus});
        levels.push_back({n, Sign::Plus});
    }

    for (const auto& level : levels) {
        if (const auto g = g1_crossing(bare, level); g && *g <= g_max && *g > 0.0) {
            const ModelParams p(bare, *g);
            const LevelIndex partner{level.n + 1, Sign::Minus};
            SingularTag tag{SingularFamily::CritEig, partner.n, level.n, level.nu,
                            std::abs(energy(p, level) - energy(p, partner)), h1_element(p, partner, level)};
            raw.push_back(single(*g, tag));
        }
        if (!include_benign) continue;
        if (const auto g = g2_crossing(bare, level); g && *g <= g_max && *g > 0.0) {
            const ModelParams p(bare, *g);
            const LevelIndex partner{level.n + 2, Sign::Minus};
            SingularTag tag{SingularFamily::BenignG2, partner.n, level.n, level.nu,
                            std::abs(energy(p, level) - energy(p, partner)), h1_element(p, partner, level)};
            benign_raw.push_back(single(*g, tag));
        }
    }

    const std::array<SingularFamily, 3> families{SingularFamily::OnePlusC, SingularFamily::OneD,
                                                 SingularFamily::TwoC};
    for (auto family : families) {
        for (int m = -1; m <= n_cap; ++m) {
            for (int n = -1; n <= n_cap; ++n) {
                if (!s2_indices_valid(bare, family, m, n)) continue;
                for (double g : solve_s2(bare, family, m, n)) {
                    if (g > g_max || g <= 0.0) continue;
                    const ModelParams p(bare, g);
                    const LevelIndex lo{m, partner_branch(family)};
                    const LevelIndex hi{m + 1, Sign::Minus};
                    SingularTag tag{family, m, n, Sign::Plus,
                                    std::abs(2.0 * w - s2_rhs(bare, family, m, n, g)),
                                    h1_element(p, hi, lo)};
                    raw.push_back(single(g, tag));
                }
            }
        }
    }

    SingularSet out;
    out.points = merge_sorted(std::move(raw), kDedupTolerance * w);
    out.benign = merge_sorted(std::move(benign_raw), kDedupTolerance * w);

    // Instances with one index just above the cap: a root ≤ g_max there means
    // the listing is incomplete inside [0, g_max].
    int beyond = 0;
    const int edge = n_cap + 1;
    for (auto family : families) {
        for (int m = -1; m <= edge; ++m) {
            for (int n = -1; n <= edge; ++n) {
                if (std::max(m, n) != edge || !s2_indices_valid(bare, family, m, n)) continue;
                for (double g : solve_s2(bare, family, m, n)) {
                    if (g <= g_max) ++beyond;
                }
            }
        }
    }
    for (Sign nu : {Sign::Minus, Sign::Plus}) {
        if (const auto g = g1_crossing(bare, {edge, nu}); g && *g <= g_max) ++beyond;
    }
    if (beyond > 0) {
        out.possibly_truncated = true;
        out.warnings.push_back(std::to_string(beyond) + " equation instance(s) with an index of " +
                               std::to_string(edge) + " have roots <= g_max; raise n_cap for a fuller listing");
    }
    return out;
}

std::vector<ResonanceHit> find_conflicts(const std::vector<TransitionEdge>& chain,
                                         const std::vector<TransitionEdge>& coupled, double tol) {
    std::vector<ResonanceHit> hits;
    std::set<std::pair<EdgeKey, EdgeKey>> seen;
    for (const auto& c : chain) {
        for (const auto& e : coupled) {
            if (e.same_pair(c)) continue;
            const double d = std::abs(c.freq - e.freq);
            if (d > tol) continue;
            // A pair of two chain edges shows up from both sides; keep one.
            const auto key = std::minmax(EdgeKey{c.a, c.b}, EdgeKey{e.a, e.b});
            if (!seen.insert({key.first, key.second}).second) continue;
            hits.push_back({c, e, d});
        }
    }
    return hits;
}

std::vector<ResonanceHit> resonance_scan(const ModelParams& p, int n_max, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    const auto coupled = coupled_pairs(p, n_max, 0.0);
    std::vector<TransitionEdge> chain;
    std::copy_if(coupled.begin(), coupled.end(), std::back_inserter(chain), is_c0_edge);
    return find_conflicts(chain, coupled, tol);
}

double min_chain_detuning(const ModelParams& p, int n_max) {
    const auto chain = build_c0(p, n_max);
    const auto coupled = coupled_pairs(p, n_max, 0.0);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : chain) {
        for (const auto& e : coupled) {
            if (e.same_pair(c)) continue;
            best = std::min(best, std::abs(c.freq - e.freq));
        }
    }
    return best;
}

}  // namespace jcctl
