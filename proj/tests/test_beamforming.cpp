#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wew/beamforming.hpp"
#include "wew/errors.hpp"
#include "wew/rng.hpp"

using namespace wew;
using namespace wew::beamforming;
using linalg::cplx;
using linalg::CVec;

namespace {

CVec random_cvec(Rng& rng, std::size_t dim) {
    CVec v(dim);
    for (auto& z : v.e) z = cplx{rng.gaussian(), rng.gaussian()};
    return v;
}

}  // namespace

TEST_CASE("orthogonal channels keep their own directions") {
    CVec h1{cplx{1, 0}, cplx{0, 0}};
    CVec h2{cplx{0, 0}, cplx{1, 0}};
    const auto set = zf_beamformers(h1, h2);
    CHECK(std::abs(set.w1[0] - cplx{1, 0}) < 1e-12);
    CHECK(std::abs(set.w1[1]) < 1e-12);
    CHECK(std::abs(set.w2[1] - cplx{1, 0}) < 1e-12);
    CHECK(set.gain1 == doctest::Approx(1.0));
    CHECK(set.gain2 == doctest::Approx(1.0));
    CHECK(set.collinearity == doctest::Approx(0.0));
}

TEST_CASE("oblique channel pair matches the hand computation") {
    const double r = 1.0 / std::sqrt(2.0);
    CVec h1{cplx{1, 0}, cplx{0, 0}};
    CVec h2{cplx{r, 0}, cplx{r, 0}};
    const auto set = zf_beamformers(h1, h2);
    // w1 = (1, -1)/sqrt(2) up to a global phase
    CHECK(std::abs(set.w1[0] - cplx{r, 0}) < 1e-10);
    CHECK(std::abs(set.w1[1] + cplx{r, 0}) < 1e-10);
    CHECK(std::abs(linalg::hdot(h2, set.w1)) <= 1e-10);
    CHECK(set.gain1 == doctest::Approx(0.5).epsilon(1e-10));
    const auto gains = effective_gains(set, h1, h2);
    CHECK(gains.first == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("parallel channels cannot be zero-forced") {
    CVec h1{cplx{1, 0}, cplx{0, 0}};
    CVec h2{cplx{2, 0}, cplx{0, 0}};
    CHECK_THROWS_AS(zf_beamformers(h1, h2), CollinearChannelsError);
    CHECK(collinearity(h1, h2) == doctest::Approx(1.0));
}

TEST_CASE("zero channels are rejected") {
    CVec h1{cplx{0, 0}, cplx{0, 0}};
    CVec h2{cplx{1, 0}, cplx{0, 0}};
    CHECK_THROWS_AS(zf_beamformers(h1, h2), ZeroVectorError);
}

TEST_CASE("zero-forcing holds on random channels") {
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        CVec h1 = random_cvec(rng, 2);
        CVec h2 = random_cvec(rng, 2);
        const double rho = collinearity(h1, h2);
        if (1.0 - rho <= kCollinearEps) continue;
        const auto set = zf_beamformers(h1, h2);
        CHECK(std::abs(set.w1.norm() - 1.0) <= 1e-10);
        CHECK(std::abs(set.w2.norm() - 1.0) <= 1e-10);
        CHECK(std::abs(linalg::hdot(h2, set.w1)) <= 1e-9 * h2.norm());
        CHECK(std::abs(linalg::hdot(h1, set.w2)) <= 1e-9 * h1.norm());
    }
}

TEST_CASE("per-antenna phase rotation of a channel leaves gains unchanged") {
    Rng rng(78);
    for (int trial = 0; trial < 200; ++trial) {
        CVec h1 = random_cvec(rng, 2);
        CVec h2 = random_cvec(rng, 2);
        if (1.0 - collinearity(h1, h2) <= kCollinearEps) continue;
        const double phase = rng.uniform() * 6.283185307179586;
        const cplx rot{std::cos(phase), std::sin(phase)};
        CVec h1r = h1;
        for (auto& z : h1r.e) z *= rot;
        const auto a = zf_beamformers(h1, h2);
        const auto b = zf_beamformers(h1r, h2);
        CHECK(b.gain1 == doctest::Approx(a.gain1).epsilon(1e-10));
        CHECK(b.gain2 == doctest::Approx(a.gain2).epsilon(1e-10));
        CHECK(b.collinearity == doctest::Approx(a.collinearity).epsilon(1e-10));
    }
}

TEST_CASE("two-antenna identity: gain_i = |h_i|^2 (1 - collinearity)") {
    Rng rng(79);
    for (int trial = 0; trial < 300; ++trial) {
        CVec h1 = random_cvec(rng, 2);
        CVec h2 = random_cvec(rng, 2);
        const double rho = collinearity(h1, h2);
        if (1.0 - rho <= kCollinearEps) continue;
        const auto set = zf_beamformers(h1, h2);
        CHECK(set.gain1 == doctest::Approx(h1.norm_sq() * (1.0 - rho)).epsilon(1e-9));
        CHECK(set.gain2 == doctest::Approx(h2.norm_sq() * (1.0 - rho)).epsilon(1e-9));
    }
}

TEST_CASE("gains fall monotonically as the channels align") {
    // interpolate h2 toward h1 and watch gain1 decrease
    CVec h1{cplx{1, 0}, cplx{0, 0}};
    double prev_gain = 1.0;
    for (int k = 1; k <= 8; ++k) {
        const double t = k / 10.0;
        CVec h2{cplx{t, 0}, cplx{std::sqrt(1 - t * t), 0}};
        const auto set = zf_beamformers(h1, h2);
        CHECK(set.gain1 < prev_gain + 1e-12);
        prev_gain = set.gain1;
    }
}
