#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wew/linalg.hpp"

namespace wew::channel {

// Substream purposes, hashed together with (master_seed, seed_id).
inline constexpr std::uint64_t kStreamChannel = 1;
inline constexpr std::uint64_t kStreamAlpha = 2;
inline constexpr std::uint64_t kStreamPayload = 3;

struct ScenarioConfig {
    int M = 1;              // BS has 2M antennas
    double sigma2 = 1.0;    // noise power, normalized
    double R_U1 = 1.0;      // uplink rates, bits/s at 1 Hz
    double R_U2 = 1.0;
    double R_D1 = 4.0;      // downlink rates
    double R_D2 = 4.0;
    double P_S = 0.0;       // wired-case SBS power; 0 = derive from rates
    int n_realizations = 1000;
    std::uint64_t master_seed = 20240117;
    double channel_gain = 1.0;         // linear power multiplier on BS-SBS links
    bool gamma_from_downlink = false;  // derive gamma_Mi from R_Di instead of R_Ui

    void validate() const;  // throws ConfigError on violated invariants
};

struct ChannelRealization {
    linalg::CVec h1, h2;  // BS-SBS vectors, dim 2M; reciprocal across both phases
    double gammaM1 = 0.0;
    double gammaM2 = 0.0;
    std::uint64_t seed_id = 0;
};

struct LinkSnrs {
    double gammaM1 = 0.0, gammaM2 = 0.0;  // MS-SBS, from uplink rates
    double gammaS1 = 0.0, gammaS2 = 0.0;  // SBS-MS wired downlink, from downlink rates
};

// gammaM_i = 2^{R_Ui} - 1, gammaS_i = 2^{R_Di} - 1.
LinkSnrs derive_link_snrs(const ScenarioConfig& config);

// One Rayleigh draw: CN(0,1) coefficients scaled by sqrt(channel_gain),
// bit-identical for identical (master_seed, seed_id).
ChannelRealization sample_rayleigh(std::uint64_t seed_id, const ScenarioConfig& config);

// Wired-reference SBS transmit power: explicit config value, or
// sigma2 * max_i(2^{R_Di} - 1) when unset.
double wired_sbs_power(const ScenarioConfig& config);

// CSV dump: seed_id, Re/Im of each coefficient of h1 and h2, gammaM1, gammaM2.
void write_channel_csv(std::ostream& os, const std::vector<ChannelRealization>& rows);

}  // namespace wew::channel
