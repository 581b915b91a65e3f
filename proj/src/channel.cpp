#include "wew/channel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "wew/errors.hpp"
#include "wew/rng.hpp"

namespace wew::channel {

void ScenarioConfig::validate() const {
    if (M < 1) throw ConfigError("M must be >= 1");
    if (!(sigma2 > 0.0)) throw ConfigError("sigma2 must be > 0");
    if (R_U1 < 0.0 || R_U2 < 0.0 || R_D1 < 0.0 || R_D2 < 0.0)
        throw ConfigError("rates must be >= 0");
    if (R_U1 > R_D1 || R_U2 > R_D2)
        throw ConfigError("uplink rate must not exceed the downlink rate");
    if (P_S < 0.0) throw ConfigError("P_S must be >= 0 (0 = derive from rates)");
    if (n_realizations < 1) throw ConfigError("n_realizations must be >= 1");
    if (!(channel_gain > 0.0)) throw ConfigError("channel_gain must be > 0");
}

LinkSnrs derive_link_snrs(const ScenarioConfig& config) {
    LinkSnrs s;
    const double ru1 = config.gamma_from_downlink ? config.R_D1 : config.R_U1;
    const double ru2 = config.gamma_from_downlink ? config.R_D2 : config.R_U2;
    s.gammaM1 = std::exp2(ru1) - 1.0;
    s.gammaM2 = std::exp2(ru2) - 1.0;
    s.gammaS1 = std::exp2(config.R_D1) - 1.0;
    s.gammaS2 = std::exp2(config.R_D2) - 1.0;
    return s;
}

ChannelRealization sample_rayleigh(std::uint64_t seed_id, const ScenarioConfig& config) {
    config.validate();
    const std::size_t dim = 2 * static_cast<std::size_t>(config.M);
    Rng rng(substream_seed(config.master_seed, seed_id, kStreamChannel));
    const double amp = std::sqrt(config.channel_gain) * std::sqrt(0.5);

    ChannelRealization ch;
    ch.seed_id = seed_id;
    ch.h1 = linalg::CVec(dim);
    ch.h2 = linalg::CVec(dim);
    for (std::size_t i = 0; i < dim; ++i)
        ch.h1[i] = linalg::cplx{rng.gaussian() * amp, rng.gaussian() * amp};
    for (std::size_t i = 0; i < dim; ++i)
        ch.h2[i] = linalg::cplx{rng.gaussian() * amp, rng.gaussian() * amp};

    const LinkSnrs snrs = derive_link_snrs(config);
    ch.gammaM1 = snrs.gammaM1;
    ch.gammaM2 = snrs.gammaM2;
    return ch;
}

double wired_sbs_power(const ScenarioConfig& config) {
    if (config.P_S > 0.0) return config.P_S;
    const LinkSnrs snrs = derive_link_snrs(config);
    return config.sigma2 * std::max(snrs.gammaS1, snrs.gammaS2);
}

void write_channel_csv(std::ostream& os, const std::vector<ChannelRealization>& rows) {
    if (rows.empty()) return;
    const std::size_t dim = rows.front().h1.dim();
    os << "seed_id";
    for (int v = 1; v <= 2; ++v)
        for (std::size_t i = 0; i < dim; ++i)
            os << ",h" << v << "_re_" << i << ",h" << v << "_im_" << i;
    os << ",gammaM1,gammaM2\n";
    char buf[64];
    for (const auto& ch : rows) {
        os << ch.seed_id;
        for (const auto* h : {&ch.h1, &ch.h2})
            for (std::size_t i = 0; i < dim; ++i) {
                std::snprintf(buf, sizeof buf, ",%.17g,%.17g", (*h)[i].real(), (*h)[i].imag());
                os << buf;
            }
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", ch.gammaM1, ch.gammaM2);
        os << buf;
    }
}

}  // namespace wew::channel
