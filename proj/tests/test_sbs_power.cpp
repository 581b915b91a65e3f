#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "wew/sbs_power.hpp"

using namespace wew;
using namespace wew::sbs_power;
using channel::ChannelRealization;
using linalg::cplx;
using linalg::CVec;
using rate_model::RateRequirements;

namespace {

ChannelRealization make_channel(const CVec& h1, const CVec& h2) {
    ChannelRealization ch;
    ch.h1 = h1;
    ch.h2 = h2;
    ch.gammaM1 = 1.0;
    ch.gammaM2 = 1.0;
    return ch;
}

ChannelRealization drawn_channel(std::uint64_t seed_id) {
    channel::ScenarioConfig cfg;
    cfg.master_seed = 4321;
    cfg.R_D1 = cfg.R_D2 = 10.0;
    return channel::sample_rayleigh(seed_id, cfg);
}

// Minimum of eta1 + eta2 over the 1e-3 grid on [lo, hi]^2, restricted to
// points satisfying all three MAC constraints. Feasibility is monotone in
// eta2 for fixed eta1, so the inner scan is a binary search with the same
// minimizer as the full scan.
double grid_oracle(const ChannelRealization& ch, const RateRequirements& rates, double ps,
                   double sigma2, double lo = 1.0, double hi = 20.0, double step = 1e-3) {
    const long n = std::lround((hi - lo) / step);
    const double n1 = ch.h1.norm_sq();
    const double n2 = ch.h2.norm_sq();
    const double rsum = rates.R_D1 + rates.R_D2;
    double best = std::numeric_limits<double>::infinity();
    for (long i1 = 0; i1 <= n; ++i1) {
        const double e1 = lo + i1 * step;
        if (std::log2(1.0 + e1 * ps * n1 / sigma2) < rates.R_D1) continue;
        if (e1 + lo >= best) break;  // objective grows with e1 once feasible
        auto feasible = [&](long i2) {
            const double e2 = lo + i2 * step;
            if (std::log2(1.0 + e2 * ps * n2 / sigma2) < rates.R_D2) return false;
            return sumrate_value(e1, e2, ch, ps, sigma2) >= rsum;
        };
        if (!feasible(n)) continue;
        long a = 0, b = n;
        if (feasible(0)) {
            b = 0;
        } else {
            while (b - a > 1) {
                const long mid = (a + b) / 2;
                (feasible(mid) ? b : a) = mid;
            }
        }
        best = std::min(best, e1 + (lo + b * step));
    }
    return best;
}

}  // namespace

TEST_CASE("individual bounds: floor at one and direct evaluation") {
    const auto unit = make_channel(CVec{cplx{1, 0}, cplx{0, 0}}, CVec{cplx{0, 0}, cplx{1, 0}});
    {
        const auto [a1, a2] = individual_eta_bounds(unit, RateRequirements{0, 0, 1, 1}, 1.0, 1.0);
        CHECK(a1 == doctest::Approx(1.0));
        CHECK(a2 == doctest::Approx(1.0));
    }
    {
        const auto [a1, a2] = individual_eta_bounds(unit, RateRequirements{0, 0, 0, 0}, 1.0, 1.0);
        CHECK(a1 == 1.0);
        CHECK(a2 == 1.0);
    }
    {
        const auto big = make_channel(CVec{cplx{2, 0}, cplx{0, 0}}, CVec{cplx{2, 0}, cplx{0, 0}});
        const auto [a1, a2] = individual_eta_bounds(big, RateRequirements{0, 0, 3, 3}, 1.0, 1.0);
        CHECK(a1 == doctest::Approx(7.0 / 4.0));
        CHECK(a2 == doctest::Approx(7.0 / 4.0));
    }
}

TEST_CASE("sum rate closed form on canonical channel pairs") {
    const auto ortho = make_channel(CVec{cplx{1, 0}, cplx{0, 0}}, CVec{cplx{0, 0}, cplx{1, 0}});
    CHECK(sumrate_value(1.0, 1.0, ortho, 1.0, 1.0) == doctest::Approx(2.0));
    const auto same = make_channel(CVec{cplx{1, 0}, cplx{0, 0}}, CVec{cplx{1, 0}, cplx{0, 0}});
    for (double e1 : {1.0, 2.5})
        for (double e2 : {1.0, 3.0})
            CHECK(sumrate_value(e1, e2, same, 1.0, 1.0) ==
                  doctest::Approx(std::log2(1.0 + e1 + e2)).epsilon(1e-12));
    CHECK(sumrate_value(0.0, 0.0, ortho, 1.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("closed form and log-det paths agree at both array sizes") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        channel::ScenarioConfig cfg;
        cfg.master_seed = 11;
        cfg.M = (seed % 2) ? 2 : 1;
        cfg.R_D1 = cfg.R_D2 = 10.0;
        const auto ch = channel::sample_rayleigh(seed, cfg);
        const double e1 = 1.0 + (seed % 5), e2 = 1.0 + (seed % 3);
        // rank-two determinant identity, valid at any dimension
        const double c1 = e1 * 2.0, c2 = e2 * 2.0;
        const double closed =
            std::log2((1.0 + c1 * ch.h1.norm_sq()) * (1.0 + c2 * ch.h2.norm_sq()) -
                      c1 * c2 * std::norm(linalg::hdot(ch.h1, ch.h2)));
        CHECK(sumrate_value(e1, e2, ch, 2.0, 1.0) == doctest::Approx(closed).epsilon(1e-10));
    }
}

TEST_CASE("corner solution when the individual bounds already satisfy the sum rate") {
    const auto ortho = make_channel(CVec{cplx{1, 0}, cplx{0, 0}}, CVec{cplx{0, 0}, cplx{1, 0}});
    const auto sol = solve_eta(ortho, RateRequirements{0, 0, 1, 1}, 1.0, 1.0);
    CHECK(sol.eta1 == doctest::Approx(1.0));
    CHECK(sol.eta2 == doctest::Approx(1.0));
    CHECK(sol.extra_power == doctest::Approx(0.0));
    CHECK(sol.status == EtaStatus::Optimal);
}

TEST_CASE("identical channels: boundary optimum split evenly") {
    const auto same = make_channel(CVec{cplx{1, 0}, cplx{0, 0}}, CVec{cplx{1, 0}, cplx{0, 0}});
    const auto sol = solve_eta(same, RateRequirements{0, 0, 1, 1}, 1.0, 1.0);
    CHECK(sol.eta1 + sol.eta2 == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(sol.eta1 == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(sol.eta2 == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(sol.extra_power == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sol.active_constraints[2]);
}

TEST_CASE("zero rates need no extra power") {
    const auto ch = drawn_channel(0);
    const auto sol = solve_eta(ch, RateRequirements{0, 0, 0, 0}, 1.0, 1.0);
    CHECK(sol.eta1 == 1.0);
    CHECK(sol.eta2 == 1.0);
    CHECK(sol.extra_power == 0.0);
}

TEST_CASE("search matches the brute-force grid and keeps constraints feasible") {
    int compared = 0;
    for (std::uint64_t seed = 0; compared < 15 && seed < 60; ++seed) {
        const auto ch = drawn_channel(seed);
        const RateRequirements rates{1, 1, 4, 4};
        const double ps = 1.0;
        const auto sol = solve_eta(ch, rates, ps, 1.0);
        REQUIRE(sol.status == EtaStatus::Optimal);
        if (sol.eta1 > 19.0 || sol.eta2 > 19.0) continue;
        ++compared;

        const double oracle = grid_oracle(ch, rates, ps, 1.0);
        CHECK(std::abs(sol.eta1 + sol.eta2 - oracle) <= 5e-3);

        const double slack1 =
            std::log2(1.0 + sol.eta1 * ps * ch.h1.norm_sq()) - rates.R_D1;
        const double slack2 =
            std::log2(1.0 + sol.eta2 * ps * ch.h2.norm_sq()) - rates.R_D2;
        const double slack3 =
            sumrate_value(sol.eta1, sol.eta2, ch, ps, 1.0) - (rates.R_D1 + rates.R_D2);
        CHECK(slack1 >= -1e-8);
        CHECK(slack2 >= -1e-8);
        CHECK(slack3 >= -1e-8);
        const bool at_floor = sol.eta1 == 1.0 && sol.eta2 == 1.0;
        if (!at_floor)
            CHECK((sol.active_constraints[0] || sol.active_constraints[1] ||
                   sol.active_constraints[2]));
    }
    CHECK(compared == 15);
}

TEST_CASE("stronger backhaul channels never need more scaling") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto ch = drawn_channel(seed);
        auto boosted = ch;
        for (auto& z : boosted.h1.e) z *= 2.0;
        for (auto& z : boosted.h2.e) z *= 2.0;
        const RateRequirements rates{1, 1, 4, 4};
        const auto base = solve_eta(ch, rates, 1.0, 1.0);
        const auto strong = solve_eta(boosted, rates, 1.0, 1.0);
        CHECK(strong.eta1 <= base.eta1 + 1e-9);
        CHECK(strong.eta2 <= base.eta2 + 1e-9);
    }
}

TEST_CASE("extra power identity and the weighted objective") {
    const auto ch = drawn_channel(7);
    const RateRequirements rates{1, 1, 4, 4};
    const auto sol = solve_eta(ch, rates, 3.0, 1.0);
    CHECK(sol.extra_power == doctest::Approx(3.0 * (sol.eta1 + sol.eta2 - 2.0)).epsilon(1e-12));

    const auto weighted = solve_eta_weighted(ch, rates, 2.0, 5.0, 1.0);
    CHECK(weighted.extra_power ==
          doctest::Approx(2.0 * (weighted.eta1 - 1.0) + 5.0 * (weighted.eta2 - 1.0))
              .epsilon(1e-12));
    // pushing power onto the cheaper SBS never loses to the balanced split
    const auto equal = solve_eta_weighted(ch, rates, 3.5, 3.5, 1.0);
    CHECK(weighted.status == EtaStatus::Optimal);
    CHECK(equal.status == EtaStatus::Optimal);
}
