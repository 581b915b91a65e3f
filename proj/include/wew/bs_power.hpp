#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wew/channel.hpp"
#include "wew/rate_model.hpp"
#include "wew/rng.hpp"
#include "wew/sdp.hpp"

namespace wew::bs_power {

enum class Scheme { WEW, ZFOnly, CommonOnly, RandomSplit };
const char* to_string(Scheme s);

// Eigenvalue-ratio threshold below which the common covariance counts as
// rank one and the reported value is exact rather than a relaxation bound.
inline constexpr double kRankOneRatio = 1e-6;

struct BsPowerSolution {
    Scheme scheme = Scheme::WEW;
    rate_model::SplitFactors alpha{};
    double P1 = 0.0, P2 = 0.0;
    linalg::CMat W_C;                   // common covariance (zero matrix if unused)
    std::optional<linalg::CVec> w_C;    // set when W_C is rank one
    double total_power = 0.0;           // P1 + P2 + Tr(W_C)
    sdp::SolveStatus status = sdp::SolveStatus::Optimal;
    double solver_gap = 0.0;
    double solver_residual = 0.0;
    int solver_iterations = 0;
    bool is_lower_bound = false;        // true when rank(W_C) > 1 at the optimum
};

// Relaxed minimum BS power at fixed split factors: private powers enter as
// nonnegative scalars, the common beam as a PSD covariance. Throws
// CollinearChannelsError when alpha has a private component but the channels
// cannot be zero-forced, and SolverFailure when the solver does not certify
// optimality.
BsPowerSolution solve_fixed_alpha(const channel::ChannelRealization& ch,
                                  const rate_model::RateRequirements& rates,
                                  const rate_model::SplitFactors& alpha, double sigma2,
                                  double solver_tol = 1e-7);

// alpha = (1,1) special case in closed form: P_i = beta1_i / |h_i^H w_i|^2.
BsPowerSolution solve_zf_only(const channel::ChannelRealization& ch,
                              const rate_model::RateRequirements& rates, double sigma2);

// alpha = (0,0) special case: min-trace covariance covering both SBSs.
BsPowerSolution solve_common_only(const channel::ChannelRealization& ch,
                                  const rate_model::RateRequirements& rates, double sigma2,
                                  double solver_tol = 1e-7);

// Grid search over (alpha1, alpha2) followed by two coordinate
// golden-section refinement passes around the best grid point.
BsPowerSolution optimize_alpha(const channel::ChannelRealization& ch,
                               const rate_model::RateRequirements& rates, double sigma2,
                               double grid_step = 0.1, double solver_tol = 1e-7);

// alpha drawn uniformly from [0,1]^2; no redraw on failure.
BsPowerSolution solve_random_alpha(const channel::ChannelRealization& ch,
                                   const rate_model::RateRequirements& rates, double sigma2,
                                   Rng& rng, double solver_tol = 1e-7);

// Gaussian randomization: candidates v ~ CN(0, W_C) (the principal direction
// is always candidate zero), each scaled minimally to satisfy every
// constraint Tr(H_i w w^H) >= required_i. Returns the best feasible vector
// and its power ||w||^2.
struct Rank1Constraint {
    linalg::CMat sensing;  // H_i
    double required = 0.0;
};
std::pair<linalg::CVec, double> extract_rank1(const linalg::CMat& W_C,
                                              const std::vector<Rank1Constraint>& constraints,
                                              int n_samples, std::uint64_t seed = 0x5eed);

// One-line JSON debug record: seed_id, scheme, alpha, P1, P2, Tr(W_C), status, gap.
std::string to_jsonl(const BsPowerSolution& sol, std::uint64_t seed_id);

}  // namespace wew::bs_power
