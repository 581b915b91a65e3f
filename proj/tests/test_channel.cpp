#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wew/channel.hpp"
#include "wew/errors.hpp"

using namespace wew;
using namespace wew::channel;

TEST_CASE("identical seeds give bit-identical realizations") {
    ScenarioConfig cfg;
    cfg.master_seed = 12345;
    const auto a = sample_rayleigh(7, cfg);
    const auto b = sample_rayleigh(7, cfg);
    REQUIRE(a.h1.dim() == b.h1.dim());
    for (std::size_t i = 0; i < a.h1.dim(); ++i) {
        CHECK(a.h1[i] == b.h1[i]);
        CHECK(a.h2[i] == b.h2[i]);
    }
    CHECK(a.gammaM1 == b.gammaM1);

    const auto c = sample_rayleigh(8, cfg);
    CHECK(a.h1[0] != c.h1[0]);
}

TEST_CASE("M=1 gives two-antenna channel vectors") {
    ScenarioConfig cfg;
    cfg.M = 1;
    const auto ch = sample_rayleigh(0, cfg);
    CHECK(ch.h1.dim() == 2);
    CHECK(ch.h2.dim() == 2);
    ScenarioConfig cfg3 = cfg;
    cfg3.M = 3;
    CHECK(sample_rayleigh(0, cfg3).h1.dim() == 6);
}

TEST_CASE("coefficients match the unit-variance complex Gaussian law") {
    ScenarioConfig cfg;
    cfg.master_seed = 99;
    const int n = 100000;
    double sum_re = 0.0, sum_im = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto ch = sample_rayleigh(static_cast<std::uint64_t>(i), cfg);
        sum_re += ch.h1[0].real();
        sum_im += ch.h1[0].imag();
        sum_sq += std::norm(ch.h1[0]);
    }
    CHECK(std::abs(sum_re / n) < 0.02);
    CHECK(std::abs(sum_im / n) < 0.02);
    CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
}

TEST_CASE("different substreams are uncorrelated") {
    ScenarioConfig cfg;
    cfg.master_seed = 4242;
    const int n = 10000;
    double sx = 0.0, sy = 0.0, sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_rayleigh(static_cast<std::uint64_t>(i), cfg).h1[0].real();
        const double y = sample_rayleigh(static_cast<std::uint64_t>(i + n), cfg).h1[0].real();
        sx += x;
        sy += y;
        sxy += x * y;
        sxx += x * x;
        syy += y * y;
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double corr =
        cov / std::sqrt((sxx / n - sx / n * (sx / n)) * (syy / n - sy / n * (sy / n)));
    CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("link SNRs derive from the rate equations") {
    ScenarioConfig cfg;
    cfg.R_U1 = 1.0;
    cfg.R_U2 = 0.0;
    cfg.R_D1 = std::log2(10.0);
    cfg.R_D2 = 4.0;
    const auto s = derive_link_snrs(cfg);
    CHECK(s.gammaM1 == doctest::Approx(1.0));
    CHECK(s.gammaM2 == doctest::Approx(0.0));
    CHECK(s.gammaS1 == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(s.gammaS2 == doctest::Approx(15.0));
}

TEST_CASE("gamma switch moves the uplink SNR to the downlink rate") {
    ScenarioConfig cfg;
    cfg.R_U1 = 1.0;
    cfg.R_D1 = 3.0;
    cfg.gamma_from_downlink = true;
    CHECK(derive_link_snrs(cfg).gammaM1 == doctest::Approx(7.0));
}

TEST_CASE("channel gain scales the mean square coefficient") {
    ScenarioConfig cfg;
    cfg.channel_gain = 4.0;
    cfg.master_seed = 5;
    double sum_sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) sum_sq += std::norm(sample_rayleigh(i, cfg).h2[1]);
    CHECK(sum_sq / n == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("wired SBS power defaults to the worst downlink requirement") {
    ScenarioConfig cfg;
    cfg.R_D1 = 2.0;
    cfg.R_D2 = 3.0;
    cfg.sigma2 = 2.0;
    CHECK(wired_sbs_power(cfg) == doctest::Approx(2.0 * 7.0));
    cfg.P_S = 5.0;
    CHECK(wired_sbs_power(cfg) == 5.0);
}

TEST_CASE("config invariants are enforced") {
    ScenarioConfig cfg;
    cfg.R_U1 = 3.0;
    cfg.R_D1 = 2.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ScenarioConfig{};
    cfg.sigma2 = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ScenarioConfig{};
    cfg.M = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("channel CSV dump is stable and well formed") {
    ScenarioConfig cfg;
    cfg.master_seed = 31;
    std::vector<ChannelRealization> rows{sample_rayleigh(0, cfg), sample_rayleigh(1, cfg)};
    std::ostringstream a, b;
    write_channel_csv(a, rows);
    write_channel_csv(b, rows);
    const std::string text = a.str();
    CHECK(text == b.str());
    CHECK(text.rfind("seed_id,h1_re_0,h1_im_0", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
