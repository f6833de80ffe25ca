#include "jcctl/chain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace jcctl {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::CertifiedNonResonant: return "CertifiedNonResonant";
        case Verdict::ResonanceFound: return "ResonanceFound";
        case Verdict::CouplingBroken: return "CouplingBroken";
    }
    return "unknown";
}

std::vector<TransitionEdge> build_c0(const ModelParams& p, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    std::vector<TransitionEdge> edges;
    edges.reserve(static_cast<std::size_t>(2 * n_max + 1));
    edges.push_back(make_edge(p, {0, Sign::Plus}, LevelIndex::spurious(p)));
    for (int n = 0; n < n_max; ++n) {
        edges.push_back(make_edge(p, {n + 1, Sign::Plus}, {n, Sign::Plus}));
        edges.push_back(make_edge(p, {n + 1, Sign::Plus}, {n, Sign::Minus}));
    }
    return edges;
}

bool is_c0_edge(const TransitionEdge& e) noexcept {
    const LevelIndex& hi = e.a.n >= e.b.n ? e.a : e.b;
    const LevelIndex& lo = e.a.n >= e.b.n ? e.b : e.a;
    // Either lower label completes a chain edge; below (0,+) only the spurious
    // level exists.
    return hi.n == lo.n + 1 && hi.nu == Sign::Plus;
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t x, std::size_t y) { parent_[find(x)] = find(y); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<LevelIndex> chain_levels(const ModelParams& p, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    auto levels = levels_up_to(p, n_max);
    levels.erase(std::remove(levels.begin(), levels.end(), LevelIndex{n_max, Sign::Minus}), levels.end());
    return levels;
}

Connectivity check_connected(const std::vector<TransitionEdge>& edges, const ModelParams& p,
                             int n_max, double threshold) {
    const auto levels = chain_levels(p, n_max);
    std::map<LevelIndex, std::size_t> slot;
    for (std::size_t i = 0; i < levels.size(); ++i) slot[levels[i]] = i;

    DisjointSets sets(levels.size());
    for (const auto& e : edges) {
        if (!(std::abs(e.h1) > threshold)) continue;
        const auto ia = slot.find(e.a);
        const auto ib = slot.find(e.b);
        if (ia == slot.end() || ib == slot.end()) continue;
        sets.unite(ia->second, ib->second);
    }

    Connectivity result;
    const std::size_t root = sets.find(0);  // spurious level
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (sets.find(i) != root) result.uncovered.push_back(levels[i]);
    }
    if (result.uncovered.size() + 1 == levels.size()) result.uncovered.insert(result.uncovered.begin(), levels[0]);
    result.connected = result.uncovered.empty();
    return result;
}

ChainReport certify(const ModelParams& p, int n_max, double tol, double threshold) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (!(threshold >= 0.0)) throw std::invalid_argument("threshold must be >= 0");

    ChainReport report;
    report.g = p.g();
    report.omega = p.omega();
    report.capital_omega = p.capital_omega();
    report.n_max = n_max;
    report.tol = tol;
    report.threshold = threshold;
    if (n_max < 1) {
        report.warnings.push_back("n_max < 1: the chain has only the spurious edge");
    }

    const auto chain = build_c0(p, n_max);
    const auto connectivity = check_connected(chain, p, n_max, threshold);
    report.connected = connectivity.connected;
    report.uncovered = connectivity.uncovered;

    for (const auto& e : chain) {
        if (!(std::abs(e.h1) > threshold)) report.zero_amplitude_edges.push_back(e);
    }

    const auto coupled = coupled_pairs(p, n_max, threshold);
    for (const auto& e : coupled) {
        if (e.freq <= tol) report.degenerate_coupled_pairs.push_back(e);
    }
    report.resonant_conflicts = find_conflicts(chain, coupled, tol);

    report.coupling_broken = !report.connected || !report.zero_amplitude_edges.empty() ||
                             !report.degenerate_coupled_pairs.empty();
    report.resonance_found = !report.resonant_conflicts.empty();
    if (report.coupling_broken) {
        report.verdict = Verdict::CouplingBroken;
    } else if (report.resonance_found) {
        report.verdict = Verdict::ResonanceFound;
    } else {
        report.verdict = Verdict::CertifiedNonResonant;
    }
    report.caveat = "finite_truncation: evidence for levels with n <= " + std::to_string(n_max) +
                    ", not a proof for the untruncated system";
    return report;
}

}  // namespace jcctl
