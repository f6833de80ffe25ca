#include "jcctl/resonance.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace jcctl;

namespace {

double oracle_rhs(SingularFamily fam, double delta, double g, int m, int n) {
    switch (fam) {
        case SingularFamily::OnePlusC: return oracle::rhs_1c(delta, g, m, n);
        case SingularFamily::OneD: return oracle::rhs_1d(delta, g, m, n);
        default: return oracle::rhs_2c(delta, g, m, n);
    }
}

std::vector<double> scan_family(const BareFrequencies& bare, SingularFamily fam, int m, int n, double hi,
                                double step) {
    const double d = bare.detuning();
    return oracle::scan_roots([&](double g) { return oracle_rhs(fam, d, g, m, n) - 2 * bare.omega; }, 0.0, hi, step);
}

bool contains(const SingularSet& set, double g, double tol = 1e-9) {
    return std::any_of(set.points.begin(), set.points.end(),
                       [&](const SingularPoint& p) { return std::abs(p.g_star - g) <= tol; });
}

const SingularFamily kFamilies[] = {SingularFamily::OnePlusC, SingularFamily::OneD, SingularFamily::TwoC};

}  // namespace

TEST_CASE("G1 and G2 closed forms") {
    const BareFrequencies res{1.0, 1.0};
    CHECK(*g1_crossing(res, {0, Sign::Plus}) == doctest::Approx(std::numbers::sqrt2 - 1).epsilon(1e-14));
    CHECK(*g1_crossing(res, {0, Sign::Minus}) == doctest::Approx(std::numbers::sqrt2 + 1).epsilon(1e-14));
    CHECK(*g2_crossing(res, {0, Sign::Plus}) == doctest::Approx(std::sqrt(3.0) - 1).epsilon(1e-14));
    CHECK_FALSE(g2_crossing(BareFrequencies{1.0, 3.5}, {0, Sign::Plus}).has_value());
    CHECK_FALSE(g1_crossing(BareFrequencies{1.0, 2.5}, {4, Sign::Plus}).has_value());
    CHECK_THROWS_AS(g1_crossing(res, {-1, Sign::Plus}), std::domain_error);

    // Both sides of each crossing evaluated by the block oracle.
    oracle::Rng rng(31);
    for (int k = 0; k < 50; ++k) {
        const double w = rng.uniform(0.5, 2.0);
        const double cap = w * rng.uniform(0.6, 1.6);
        const BareFrequencies bare{w, cap};
        const int n = rng.integer(0, 25);
        const Sign nu = rng.coin() ? Sign::Plus : Sign::Minus;
        const int s = nu == Sign::Plus ? 1 : -1;
        if (const auto g = g1_crossing(bare, {n, nu})) {
            const double lhs = oracle::energy(w, cap, *g, n, s);
            const double rhs = oracle::energy(w, cap, *g, n + 1, -1);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * w * std::max(1.0, double(n)));
        }
        if (const auto g = g2_crossing(bare, {n, nu})) {
            const double lhs = oracle::energy(w, cap, *g, n, s);
            const double rhs = oracle::energy(w, cap, *g, n + 2, -1);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * w * std::max(1.0, double(n)));
            const ModelParams p(bare, *g);
            CHECK(h1_element(p, {n + 2, Sign::Minus}, {n, nu}) == 0.0);
        }
    }
    // Spurious level crossing with (0,−) at g² = ωΩ for either detuning sign.
    for (double cap : {0.7, 1.0, 1.4}) {
        const BareFrequencies bare{1.0, cap};
        const Sign sp = cap >= 1.0 ? Sign::Minus : Sign::Plus;
        CHECK(*g1_crossing(bare, {-1, sp}) == doctest::Approx(std::sqrt(cap)).epsilon(1e-13));
    }
}

TEST_CASE("solve_s2 closed-form examples match the scan oracle") {
    const BareFrequencies res{1.0, 1.0};
    const auto a = solve_s2(res, SingularFamily::OnePlusC, 0, 0);
    REQUIRE(a.size() == 1);
    CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-15));
    const auto b = solve_s2(res, SingularFamily::TwoC, 1, 0);
    REQUIRE(b.size() == 1);
    CHECK(b[0] == doctest::Approx(std::sqrt(3.0) + 1).epsilon(1e-14));
    const auto c = solve_s2(res, SingularFamily::OneD, 0, 1);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == doctest::Approx(2 / (2 * std::numbers::sqrt2 - 1 - std::sqrt(3.0))).epsilon(1e-13));
    CHECK(c[0] == doctest::Approx(20.7519).epsilon(1e-5));

    for (const auto& [fam, m, n, got] : {std::tuple{SingularFamily::OnePlusC, 0, 0, a[0]},
                                         std::tuple{SingularFamily::TwoC, 1, 0, b[0]},
                                         std::tuple{SingularFamily::OneD, 0, 1, c[0]}}) {
        const auto roots = scan_family(res, fam, m, n, 25.0, 1e-3);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0] == doctest::Approx(got).epsilon(1e-12));
    }
}

TEST_CASE("solve_s2 rejects indices outside the family sets") {
    const BareFrequencies above{1.0, 1.1};  // spurious label −: −1 ∈ 𝔑₋
    const BareFrequencies below{1.0, 0.9};  // spurious label +: −1 ∈ 𝔑₊
    CHECK_THROWS_AS(solve_s2(above, SingularFamily::OneD, 2, 1), std::domain_error);
    CHECK_THROWS_AS(solve_s2(above, SingularFamily::TwoC, 1, 1), std::domain_error);
    CHECK_THROWS_AS(solve_s2(above, SingularFamily::OnePlusC, -1, 0), std::domain_error);
    CHECK_NOTHROW(solve_s2(below, SingularFamily::OnePlusC, -1, 0));
    CHECK_NOTHROW(solve_s2(above, SingularFamily::OneD, -1, 0));
    CHECK_THROWS_AS(solve_s2(below, SingularFamily::OneD, -1, 0), std::domain_error);
    CHECK_THROWS_AS(solve_s2(above, SingularFamily::CritEig, 0, 0), std::invalid_argument);
    CHECK(s2_indices_valid(above, SingularFamily::TwoC, 3, -1));
    CHECK_FALSE(s2_indices_valid(above, SingularFamily::TwoC, -1, 3));
}

TEST_CASE("RHS properties") {
    oracle::Rng rng(41);
    for (int k = 0; k < 400; ++k) {
        const BareFrequencies bare{1.0, 1.0 + rng.uniform(-0.3, 0.3)};
        const auto fam = kFamilies[rng.integer(0, 2)];
        const int m = rng.integer(-1, 20);
        const int n = rng.integer(-1, 20);
        if (!s2_indices_valid(bare, fam, m, n)) continue;
        const double g1 = rng.uniform(0, 5);
        const double g2 = g1 + rng.uniform(1e-3, 5);
        CHECK(s2_rhs(bare, fam, m, n, g2) > s2_rhs(bare, fam, m, n, g1));
        CHECK(s2_rhs(bare, fam, m, n, -g2) == s2_rhs(bare, fam, m, n, g2));
        CHECK(s2_rhs(bare, fam, m, n, g1) ==
              doctest::Approx(oracle_rhs(fam, bare.detuning(), g1, m, n)).epsilon(1e-13));
        if (fam == SingularFamily::OnePlusC) {
            CHECK(s2_rhs(bare, fam, m, n, 0.0) == doctest::Approx(std::abs(bare.detuning())));
        }
    }
    // The fourth sign pattern never reaches 2ω.
    double worst = -INFINITY;
    for (double d : {0.0, 0.05, -0.08}) {
        for (int m = -1; m < 12; ++m) {
            for (int n = -1; n < 12; ++n) {
                for (int k = 0; k <= 3000; ++k) {
                    const double g = 0.01 * k;
                    worst = std::max(worst, oracle::f(d, g, m + 1) - oracle::f(d, g, m) -
                                                oracle::f(d, g, n + 1) - oracle::f(d, g, n));
                }
            }
        }
    }
    CHECK(worst < 2.0);
}

TEST_CASE("solve_s2 off resonance agrees with the scan oracle") {
    for (double cap : {1.05, 0.93, 1.1, 0.9}) {
        const BareFrequencies bare{1.0, cap};
        for (auto fam : kFamilies) {
            for (int m = -1; m <= 6; ++m) {
                for (int n = -1; n <= 6; ++n) {
                    if (!s2_indices_valid(bare, fam, m, n)) continue;
                    const auto got = solve_s2(bare, fam, m, n);
                    const auto want = scan_family(bare, fam, m, n, 40.0, 2e-3);
                    REQUIRE(got.size() <= 1);
                    if (got.empty() || got[0] > 40.0) {
                        CHECK(want.empty());
                        continue;
                    }
                    REQUIRE(want.size() == 1);
                    CHECK(got[0] == doctest::Approx(want[0]).epsilon(1e-11));
                    CHECK(std::abs(s2_rhs(bare, fam, m, n, got[0]) - 2.0) <= 1e-10);
                }
            }
        }
    }
    // |Δ| ≥ 2ω: OnePlusC starts at or above 2ω and never comes back.
    const BareFrequencies wide{1.0, 3.5};
    CHECK(solve_s2(wide, SingularFamily::OnePlusC, 0, 0).empty());
}

TEST_CASE("enumerate_singular at resonance") {
    const BareFrequencies res{1.0, 1.0};
    const auto set = enumerate_singular(res, 1.05, 30);
    REQUIRE(!set.points.empty());
    CHECK(set.points.front().g_star == 0.0);
    CHECK(set.points.front().family() == SingularFamily::Zero);
    CHECK(contains(set, 1.0));
    CHECK(contains(set, std::numbers::sqrt2 - 1));
    for (int k = 1; k <= 30; ++k) CHECK(contains(set, 1 / std::sqrt(double(k))));
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        CHECK(set.points[i].residual <= 1e-10);
        CHECK(set.points[i].g_star <= 1.05);
        if (i > 0) CHECK(set.points[i].g_star - set.points[i - 1].g_star > kDedupTolerance);
        for (const auto& t : set.points[i].tags) {
            if (t.family == SingularFamily::OneD) CHECK(t.m < t.n);
            if (t.family == SingularFamily::TwoC) CHECK(t.m > t.n);
        }
    }
    CHECK(set.possibly_truncated);
    CHECK(set.benign.empty());

    const auto zero = enumerate_singular(BareFrequencies{1.0, 1.05}, 0.0, 10);
    REQUIRE(zero.points.size() == 1);
    CHECK(zero.points[0].g_star == 0.0);

    const auto with_benign = enumerate_singular(res, 1.05, 5, true);
    REQUIRE(!with_benign.benign.empty());
    CHECK(std::any_of(with_benign.benign.begin(), with_benign.benign.end(), [](const SingularPoint& p) {
        return std::abs(p.g_star - (std::sqrt(3.0) - 1)) < 1e-12;
    }));
    for (const auto& p : with_benign.benign) CHECK(p.family() == SingularFamily::BenignG2);
    CHECK_THROWS_AS(enumerate_singular(res, -1.0, 5), std::invalid_argument);
}

TEST_CASE("enumerate_singular is complete against per-instance scans") {
    const BareFrequencies bare{1.0, 1.04};
    const int cap = 6;
    const double g_max = 1.5;
    const auto set = enumerate_singular(bare, g_max, cap);
    for (auto fam : kFamilies) {
        for (int m = -1; m <= cap; ++m) {
            for (int n = -1; n <= cap; ++n) {
                if (!s2_indices_valid(bare, fam, m, n)) continue;
                for (double g : scan_family(bare, fam, m, n, g_max, 1e-3)) CHECK(contains(set, g, 1e-9));
            }
        }
    }
    for (int n = -1; n <= cap; ++n) {
        for (Sign nu : {Sign::Plus, Sign::Minus}) {
            const LevelIndex level{n, nu};
            if (!is_valid(level, bare)) continue;
            const int s = nu == Sign::Plus ? 1 : -1;
            const auto roots = oracle::scan_roots(
                [&](double g) {
                    return oracle::energy(1.0, 1.04, g, n, n == -1 ? 0 : s) - oracle::energy(1.0, 1.04, g, n + 1, -1);
                },
                1e-6, g_max, 1e-3);
            for (double g : roots) CHECK(contains(set, g, 1e-9));
        }
    }
}

TEST_CASE("resonance scan") {
    CHECK_FALSE(resonance_scan(ModelParams(1.0, 1.0, 0.2), 30, 1e-8).empty());
    CHECK(resonance_scan(ModelParams(1.0, 1.0, 0.3), 20, 1e-8).empty());
    CHECK(resonance_scan(ModelParams(1.0, 1.0, 0.0), 10, 1e-8).size() > 20);
    CHECK_THROWS_AS(resonance_scan(ModelParams(1.0, 1.0, 0.3), 5, 0.0), std::invalid_argument);

    // Every S₂ root shows up as a frequency coincidence.
    const BareFrequencies bare{1.0, 1.06};
    for (auto fam : kFamilies) {
        for (int m = -1; m <= 4; ++m) {
            for (int n = -1; n <= 4; ++n) {
                if (!s2_indices_valid(bare, fam, m, n)) continue;
                for (double g : solve_s2(bare, fam, m, n)) {
                    CHECK_MESSAGE(!resonance_scan(ModelParams(bare, g), 7, 1e-9).empty(),
                                  to_string(fam) << " m=" << m << " n=" << n << " g=" << g);
                }
            }
        }
    }
}

TEST_CASE("min chain detuning against the oracle scan") {
    oracle::Rng rng(47);
    for (int k = 0; k < 20; ++k) {
        const double cap = rng.uniform(0.8, 1.2);
        const double g = rng.uniform(0.05, 2.0);
        const double got = min_chain_detuning(ModelParams(1.0, cap, g), 8);
        CHECK(got == doctest::Approx(oracle::min_chain_gap(1.0, cap, g, 8)).epsilon(1e-9));
    }
}
