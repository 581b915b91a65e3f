#pragma once

#include <array>

namespace wew::rate_model {

inline constexpr double kRateSlackEps = 1e-9;  // feasibility slack, bits

struct RateRequirements {
    double R_U1 = 0.0, R_U2 = 0.0;
    double R_D1 = 0.0, R_D2 = 0.0;

    void validate() const;  // rates >= 0 and R_Ui <= R_Di
};

struct SplitFactors {
    double alpha1 = 0.0, alpha2 = 0.0;

    void validate() const;  // both in [0, 1]
};

struct SplitRates {
    double R_P1 = 0.0, R_C1 = 0.0;
    double R_P2 = 0.0, R_C2 = 0.0;
};

// R_Pi = alpha_i * R_Di, R_Ci = R_Di - R_Pi (sum exact by construction).
SplitRates split_rates(const SplitFactors& alpha, const RateRequirements& rates);

// beta1_i = sigma2 (2^{R_Pi} - 1)(1 + gammaM_i)
// beta2_i = sigma2 (2^{R_Ci + R_Cj} - 1)(1 + gammaM_i)
// beta3_i = sigma2 (2^{R_Pi + R_Ci + R_Cj} - 1)(1 + gammaM_i),  j != i
struct BetaCoefficients {
    std::array<double, 2> beta1{}, beta2{}, beta3{};
};
BetaCoefficients beta_coefficients(const RateRequirements& rates, const SplitFactors& alpha,
                                   const std::array<double, 2>& gammaM, double sigma2);

// Decodability of (private, common) at each SBS with the uplink treated as
// noise: per-SBS truth of all three MAC constraints with slack >= -kRateSlackEps.
std::array<bool, 2> mac_feasible(const std::array<double, 2>& gammaP,
                                 const std::array<double, 2>& gammaC,
                                 const std::array<double, 2>& gammaM,
                                 const RateRequirements& rates, const SplitFactors& alpha);

}  // namespace wew::rate_model
