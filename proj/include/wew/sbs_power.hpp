#pragma once

#include <array>
#include <utility>

#include "wew/channel.hpp"
#include "wew/rate_model.hpp"

namespace wew::sbs_power {

enum class EtaStatus { Optimal, SolverFailure };

struct EtaSolution {
    double eta1 = 1.0, eta2 = 1.0;  // transmit power scale factors, >= 1
    double extra_power = 0.0;       // (eta1 - 1) P_S1 + (eta2 - 1) P_S2
    std::array<bool, 3> active_constraints{};  // {rate 1, rate 2, sum rate}
    EtaStatus status = EtaStatus::Optimal;
    double P_S1 = 0.0, P_S2 = 0.0;
};

// Scale factors forced by the two individual rate constraints alone:
// a_i = max(1, sigma2 (2^{R_Di} - 1) / (P_S |h_i|^2)).
std::pair<double, double> individual_eta_bounds(const channel::ChannelRealization& ch,
                                                const rate_model::RateRequirements& rates,
                                                double P_S, double sigma2);

// log2 det(I + (eta1 P_S H1 + eta2 P_S H2) / sigma2). Uses the rank-two
// determinant closed form for two BS antennas and the Cholesky log-det path
// for larger arrays; both agree wherever both apply.
double sumrate_value(double eta1, double eta2, const channel::ChannelRealization& ch, double P_S,
                     double sigma2);
double sumrate_value_weighted(double eta1, double eta2, const channel::ChannelRealization& ch,
                              double P_S1, double P_S2, double sigma2);

// Minimize eta1 + eta2 subject to the two-sender SIMO MAC region at the BS
// (equal SBS powers). Corner check first, then a golden-section search along
// the sum-rate boundary with the balanced point as the deterministic
// tie-break.
EtaSolution solve_eta(const channel::ChannelRealization& ch,
                      const rate_model::RateRequirements& rates, double P_S, double sigma2);

// Unequal SBS powers: minimizes eta1 P_S1 + eta2 P_S2 through the same
// boundary search.
EtaSolution solve_eta_weighted(const channel::ChannelRealization& ch,
                               const rate_model::RateRequirements& rates, double P_S1,
                               double P_S2, double sigma2);

}  // namespace wew::sbs_power
