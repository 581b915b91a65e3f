#include "wew/rate_model.hpp"

#include <algorithm>
#include <cmath>

#include "wew/errors.hpp"

namespace wew::rate_model {

void RateRequirements::validate() const {
    if (R_U1 < 0.0 || R_U2 < 0.0 || R_D1 < 0.0 || R_D2 < 0.0)
        throw ConfigError("rates must be >= 0");
    if (R_U1 > R_D1 || R_U2 > R_D2)
        throw ConfigError("uplink rate must not exceed the downlink rate");
}

void SplitFactors::validate() const {
    if (!(alpha1 >= 0.0 && alpha1 <= 1.0 && alpha2 >= 0.0 && alpha2 <= 1.0))
        throw ConfigError("split factors must lie in [0, 1]");
}

namespace {

// Partition rd into (rp, rc) with rp ~= alpha * rd and rp + rc == rd exactly.
// One re-subtraction pass leaves the sum within a half ulp, so the final
// addition rounds back to rd; iterate in case of a tie-breaking edge.
void exact_split(double alpha, double rd, double& rp, double& rc) {
    rp = std::clamp(alpha * rd, 0.0, rd);
    rc = rd - rp;
    for (int i = 0; i < 4 && rp + rc != rd; ++i) {
        rp = rd - rc;
        if (rp + rc == rd) break;
        rc = rd - rp;
    }
}

}  // namespace

SplitRates split_rates(const SplitFactors& alpha, const RateRequirements& rates) {
    alpha.validate();
    rates.validate();
    SplitRates s;
    exact_split(alpha.alpha1, rates.R_D1, s.R_P1, s.R_C1);
    exact_split(alpha.alpha2, rates.R_D2, s.R_P2, s.R_C2);
    return s;
}

BetaCoefficients beta_coefficients(const RateRequirements& rates, const SplitFactors& alpha,
                                   const std::array<double, 2>& gammaM, double sigma2) {
    const SplitRates s = split_rates(alpha, rates);
    const double common_sum = s.R_C1 + s.R_C2;
    const std::array<double, 2> rp{s.R_P1, s.R_P2};
    BetaCoefficients b;
    for (int i = 0; i < 2; ++i) {
        const double lift = sigma2 * (1.0 + gammaM[i]);
        b.beta1[i] = (std::exp2(rp[i]) - 1.0) * lift;
        b.beta2[i] = (std::exp2(common_sum) - 1.0) * lift;
        b.beta3[i] = (std::exp2(rp[i] + common_sum) - 1.0) * lift;
    }
    return b;
}

std::array<bool, 2> mac_feasible(const std::array<double, 2>& gammaP,
                                 const std::array<double, 2>& gammaC,
                                 const std::array<double, 2>& gammaM,
                                 const RateRequirements& rates, const SplitFactors& alpha) {
    const SplitRates s = split_rates(alpha, rates);
    const double common_sum = s.R_C1 + s.R_C2;
    const std::array<double, 2> rp{s.R_P1, s.R_P2};
    std::array<bool, 2> ok{};
    for (int i = 0; i < 2; ++i) {
        const double denom = 1.0 + gammaM[i];
        const bool private_ok = rp[i] <= std::log2(1.0 + gammaP[i] / denom) + kRateSlackEps;
        const bool common_ok = common_sum <= std::log2(1.0 + gammaC[i] / denom) + kRateSlackEps;
        const bool sum_ok =
            rp[i] + common_sum <= std::log2(1.0 + (gammaP[i] + gammaC[i]) / denom) + kRateSlackEps;
        ok[i] = private_ok && common_ok && sum_ok;
    }
    return ok;
}

}  // namespace wew::rate_model
