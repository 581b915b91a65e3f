#include "wew/bs_power.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "wew/beamforming.hpp"
#include "wew/errors.hpp"

namespace wew::bs_power {

using linalg::CMat;
using linalg::cplx;
using linalg::CVec;
using rate_model::BetaCoefficients;
using rate_model::RateRequirements;
using rate_model::SplitFactors;

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::WEW: return "WEW";
        case Scheme::ZFOnly: return "ZFOnly";
        case Scheme::CommonOnly: return "CommonOnly";
        case Scheme::RandomSplit: return "RandomSplit";
    }
    return "Unknown";
}

namespace {

struct Assembled {
    sdp::ConicProblem problem;
    bool has_private = false;
    std::array<double, 2> gains{};  // |h_i^H w_i|^2, valid when has_private
    BetaCoefficients betas;
    CMat H1, H2;
};

// Private powers enter through q_i = P_i |h_i^H w_i|^2 so constraint
// coefficients stay near unit scale even for weak effective channels.
Assembled assemble(const channel::ChannelRealization& ch, const RateRequirements& rates,
                   const SplitFactors& alpha, double sigma2) {
    Assembled a;
    a.betas = rate_model::beta_coefficients(rates, alpha, {ch.gammaM1, ch.gammaM2}, sigma2);
    a.has_private = !(alpha.alpha1 == 0.0 && alpha.alpha2 == 0.0);
    a.H1 = linalg::outer(ch.h1);
    a.H2 = linalg::outer(ch.h2);

    const int d = static_cast<int>(ch.h1.dim());
    sdp::ConicProblem& p = a.problem;
    p.psd_dim = d;
    p.matrix_cost = CMat::identity(d);

    auto add_constraint = [&](double c1, double c2, const CMat* mat, double bound) {
        sdp::ConicProblem::Constraint con;
        if (a.has_private) con.scalar_coeff = {c1, c2};
        con.matrix_coeff = mat ? *mat : CMat(d, true);
        con.bound = bound;
        p.constraints.push_back(std::move(con));
    };

    // presolve: the bound q_i >= beta1_i is absorbed by shifting to
    // q_i' = q_i - beta1_i >= 0, and rows with a zero bound are already
    // implied by the cone, so only well-scaled rows reach the solver
    if (a.has_private) {
        const auto bf = beamforming::zf_beamformers(ch.h1, ch.h2);
        a.gains = {bf.gain1, bf.gain2};
        p.n_scalars = 2;
        p.scalar_cost = {1.0 / bf.gain1, 1.0 / bf.gain2};
        if (a.betas.beta2[0] > 0.0) add_constraint(0.0, 0.0, &a.H1, a.betas.beta2[0]);
        if (a.betas.beta2[1] > 0.0) add_constraint(0.0, 0.0, &a.H2, a.betas.beta2[1]);
        const double rem1 = a.betas.beta3[0] - a.betas.beta1[0];
        const double rem2 = a.betas.beta3[1] - a.betas.beta1[1];
        if (rem1 > 0.0) add_constraint(1.0, 0.0, &a.H1, rem1);
        if (rem2 > 0.0) add_constraint(0.0, 1.0, &a.H2, rem2);
    } else {
        if (a.betas.beta2[0] > 0.0) add_constraint(0.0, 0.0, &a.H1, a.betas.beta2[0]);
        if (a.betas.beta2[1] > 0.0) add_constraint(0.0, 0.0, &a.H2, a.betas.beta2[1]);
    }
    return a;
}

// Exact one-dimensional repair of the solver output: keep the direction of
// the returned covariance, re-optimize its scale t and the private powers in
// closed form. The result is exactly feasible and never worse.
void polish(const Assembled& a, const sdp::ConicSolution& raw, BsPowerSolution& out) {
    const auto& b = a.betas;
    const CMat& w_raw = raw.matrix_value;
    const double tr = w_raw.trace_real();
    const std::size_t d = w_raw.n;

    bool have_direction = tr > 1e-300;
    std::array<double, 2> tau{0.0, 0.0};
    if (have_direction) {
        tau[0] = linalg::herm_inner(a.H1, w_raw) / tr;
        tau[1] = linalg::herm_inner(a.H2, w_raw) / tr;
    }
    double t_lo = 0.0;
    for (int i = 0; i < 2; ++i) {
        if (b.beta2[i] > 0.0) {
            if (!have_direction || tau[i] <= 0.0) return;  // keep raw solver output
            t_lo = std::max(t_lo, b.beta2[i] / tau[i]);
        }
    }

    std::vector<double> candidates{t_lo};
    if (have_direction)
        for (int i = 0; i < 2; ++i)
            if (tau[i] > 0.0) {
                for (double t : {(b.beta3[i] - b.beta1[i]) / tau[i], b.beta3[i] / tau[i]})
                    if (std::isfinite(t) && t > t_lo) candidates.push_back(t);
            }

    auto q_at = [&](int i, double t) {
        return std::max({b.beta1[i], b.beta3[i] - t * tau[i], 0.0});
    };
    double best_t = t_lo;
    double best_total = std::numeric_limits<double>::infinity();
    for (double t : candidates) {
        double total = t;
        if (a.has_private)
            for (int i = 0; i < 2; ++i) total += q_at(i, t) / a.gains[i];
        if (total < best_total - 1e-15 * (1.0 + std::abs(best_total)) ||
            (std::abs(total - best_total) <= 1e-15 * (1.0 + std::abs(best_total)) &&
             t < best_t)) {
            best_total = total;
            best_t = t;
        }
    }

    if (a.has_private) {
        out.P1 = q_at(0, best_t) / a.gains[0];
        out.P2 = q_at(1, best_t) / a.gains[1];
    } else {
        out.P1 = 0.0;
        out.P2 = 0.0;
    }
    out.W_C = best_t > 0.0 ? linalg::scale(w_raw, best_t / tr) : CMat(d, true);
    out.total_power = out.P1 + out.P2 + out.W_C.trace_real();
}

CVec top_direction(const CMat& w, double scale_sq) {
    const std::size_t d = w.n;
    const auto es = linalg::jacobi_eigh(linalg::real_embedding(w));
    const std::size_t e = 2 * d;
    CVec v(d);
    for (std::size_t i = 0; i < d; ++i)
        v[i] = cplx{es.vectors.at(i, e - 1), es.vectors.at(i + d, e - 1)};
    // fix the global phase for reproducibility
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < d; ++i)
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            imax = i;
        }
    if (best > 0.0) {
        const cplx rot = std::conj(v[imax]) / best;
        for (auto& z : v.e) z *= rot;
        v[imax] = cplx{std::abs(v[imax]), 0.0};
    }
    const double amp = std::sqrt(std::max(scale_sq, 0.0));
    for (auto& z : v.e) z *= amp;
    return v;
}

void classify_rank(BsPowerSolution& out) {
    const std::size_t d = out.W_C.n;
    const double tr = out.W_C.trace_real();
    if (tr <= 1e-300) {
        out.w_C = CVec(d);
        out.is_lower_bound = false;
        return;
    }
    const auto es = linalg::jacobi_eigh(linalg::real_embedding(out.W_C));
    const std::size_t e = 2 * d;
    const double lmax = es.values[e - 1];
    const double lsecond = std::max(es.values[e - 3], 0.0);
    if (lsecond / lmax <= kRankOneRatio) {
        out.w_C = top_direction(out.W_C, lmax);
        out.is_lower_bound = false;
    } else {
        out.w_C.reset();
        out.is_lower_bound = true;
    }
}

}  // namespace

BsPowerSolution solve_fixed_alpha(const channel::ChannelRealization& ch,
                                  const RateRequirements& rates, const SplitFactors& alpha,
                                  double sigma2, double solver_tol) {
    alpha.validate();
    rates.validate();
    Assembled a = assemble(ch, rates, alpha, sigma2);
    sdp::ConicSolution sol = sdp::solve(a.problem, solver_tol);
    if (sol.status != sdp::SolveStatus::Optimal) {
        char ctx[128];
        std::snprintf(ctx, sizeof ctx, " at alpha=(%.17g, %.17g)", alpha.alpha1, alpha.alpha2);
        throw SolverFailure(std::string("BS power solve not optimal: ") +
                            sdp::to_string(sol.status) + ctx +
                            (sol.message.empty() ? "" : " (" + sol.message + ")"));
    }

    BsPowerSolution out;
    out.scheme = Scheme::WEW;
    out.alpha = alpha;
    out.status = sol.status;
    out.solver_gap = sol.gap;
    out.solver_residual = sol.max_primal_residual;
    out.solver_iterations = sol.iterations;
    out.P1 = a.has_private ? (sol.scalars[0] + a.betas.beta1[0]) / a.gains[0] : 0.0;
    out.P2 = a.has_private ? (sol.scalars[1] + a.betas.beta1[1]) / a.gains[1] : 0.0;
    out.W_C = sol.matrix_value;
    out.total_power = out.P1 + out.P2 + out.W_C.trace_real();
    polish(a, sol, out);
    classify_rank(out);
    return out;
}

BsPowerSolution solve_zf_only(const channel::ChannelRealization& ch,
                              const RateRequirements& rates, double sigma2) {
    rates.validate();
    const SplitFactors alpha{1.0, 1.0};
    const auto bf = beamforming::zf_beamformers(ch.h1, ch.h2);
    const auto betas =
        rate_model::beta_coefficients(rates, alpha, {ch.gammaM1, ch.gammaM2}, sigma2);
    BsPowerSolution out;
    out.scheme = Scheme::ZFOnly;
    out.alpha = alpha;
    out.P1 = betas.beta1[0] / bf.gain1;
    out.P2 = betas.beta1[1] / bf.gain2;
    out.W_C = CMat(ch.h1.dim(), true);
    out.w_C = CVec(ch.h1.dim());
    out.total_power = out.P1 + out.P2;
    out.status = sdp::SolveStatus::Optimal;
    return out;
}

BsPowerSolution solve_common_only(const channel::ChannelRealization& ch,
                                  const RateRequirements& rates, double sigma2,
                                  double solver_tol) {
    BsPowerSolution out = solve_fixed_alpha(ch, rates, SplitFactors{0.0, 0.0}, sigma2, solver_tol);
    out.scheme = Scheme::CommonOnly;
    return out;
}

namespace {

// Golden-section minimization over [lo, hi] that reports every evaluation
// through `eval`; `eval` returns the objective and owns incumbent tracking.
template <typename F>
void golden_section(F&& eval, double lo, double hi, double xtol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = eval(d);
        }
    }
}

}  // namespace

BsPowerSolution optimize_alpha(const channel::ChannelRealization& ch,
                               const RateRequirements& rates, double sigma2, double grid_step,
                               double solver_tol) {
    if (!(grid_step > 0.0 && grid_step <= 0.5)) throw ConfigError("grid_step must be in (0, 0.5]");
    const double rho = beamforming::collinearity(ch.h1, ch.h2);
    if (1.0 - rho <= beamforming::kCollinearEps) {
        BsPowerSolution out = solve_common_only(ch, rates, sigma2, solver_tol);
        out.scheme = Scheme::WEW;
        return out;
    }

    const int n = std::max(2, static_cast<int>(std::llround(1.0 / grid_step)));
    BsPowerSolution best;
    double best_total = std::numeric_limits<double>::infinity();
    double best_a1 = 0.0, best_a2 = 0.0;

    auto eval = [&](double a1, double a2) {
        BsPowerSolution sol =
            solve_fixed_alpha(ch, rates, SplitFactors{a1, a2}, sigma2, solver_tol);
        if (sol.total_power < best_total) {
            best_total = sol.total_power;
            best = std::move(sol);
            best_a1 = a1;
            best_a2 = a2;
        }
        return sol.total_power;
    };

    for (int k1 = 0; k1 <= n; ++k1)
        for (int k2 = 0; k2 <= n; ++k2)
            eval(static_cast<double>(k1) / n, static_cast<double>(k2) / n);

    const double window = 1.0 / n;
    for (int pass = 0; pass < 2; ++pass) {
        {
            const double lo = std::max(0.0, best_a1 - window);
            const double hi = std::min(1.0, best_a1 + window);
            const double a2 = best_a2;
            golden_section([&](double a1) { return eval(a1, a2); }, lo, hi, 1e-4);
        }
        {
            const double lo = std::max(0.0, best_a2 - window);
            const double hi = std::min(1.0, best_a2 + window);
            const double a1 = best_a1;
            golden_section([&](double a2) { return eval(a1, a2); }, lo, hi, 1e-4);
        }
    }

    best.scheme = Scheme::WEW;
    return best;
}

BsPowerSolution solve_random_alpha(const channel::ChannelRealization& ch,
                                   const RateRequirements& rates, double sigma2, Rng& rng,
                                   double solver_tol) {
    const double a1 = rng.uniform();
    const double a2 = rng.uniform();
    BsPowerSolution out = solve_fixed_alpha(ch, rates, SplitFactors{a1, a2}, sigma2, solver_tol);
    out.scheme = Scheme::RandomSplit;
    return out;
}

std::pair<CVec, double> extract_rank1(const CMat& W_C,
                                      const std::vector<Rank1Constraint>& constraints,
                                      int n_samples, std::uint64_t seed) {
    const std::size_t d = W_C.n;
    bool any_required = false;
    for (const auto& con : constraints) any_required = any_required || con.required > 0.0;
    if (!any_required) return {CVec(d), 0.0};

    // Sampling transform for CN(0, W_C): real-embedding eigenbasis, each
    // eigenvalue halved.
    const auto es = linalg::jacobi_eigh(linalg::real_embedding(W_C));
    const std::size_t e = 2 * d;

    Rng rng(seed);
    auto draw = [&]() {
        std::vector<double> g(e);
        for (auto& v : g) v = rng.gaussian();
        CVec v(d);
        for (std::size_t c = 0; c < e; ++c) {
            const double amp = std::sqrt(std::max(es.values[c], 0.0) * 0.5) * g[c];
            if (amp == 0.0) continue;
            for (std::size_t i = 0; i < d; ++i) {
                v[i] += cplx{es.vectors.at(i, c) * amp, es.vectors.at(i + d, c) * amp};
            }
        }
        return v;
    };

    CVec best_w(d);
    double best_power = std::numeric_limits<double>::infinity();
    auto consider = [&](const CVec& v) {
        const double nsq = v.norm_sq();
        if (nsq <= 0.0) return;
        double scale = 0.0;
        for (const auto& con : constraints) {
            if (con.required <= 0.0) continue;
            const double gain = linalg::herm_inner(con.sensing, linalg::outer(v));
            if (gain <= 1e-300) return;  // this direction cannot serve the constraint
            scale = std::max(scale, con.required / gain);
        }
        const double power = scale * nsq;
        if (power < best_power) {
            best_power = power;
            best_w = v;
            const double amp = std::sqrt(scale);
            for (auto& z : best_w.e) z *= amp;
        }
    };

    consider(top_direction(W_C, 1.0));
    for (int k = 0; k < n_samples; ++k) consider(draw());
    return {best_w, best_power};
}

std::string to_jsonl(const BsPowerSolution& sol, std::uint64_t seed_id) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\"seed_id\":%llu,\"scheme\":\"%s\",\"alpha1\":%.12g,\"alpha2\":%.12g,"
                  "\"P1\":%.12g,\"P2\":%.12g,\"trace_wc\":%.12g,\"total\":%.12g,"
                  "\"status\":\"%s\",\"gap\":%.3g,\"lower_bound\":%s}",
                  static_cast<unsigned long long>(seed_id), to_string(sol.scheme),
                  sol.alpha.alpha1, sol.alpha.alpha2, sol.P1, sol.P2, sol.W_C.trace_real(),
                  sol.total_power, sdp::to_string(sol.status), sol.solver_gap,
                  sol.is_lower_bound ? "true" : "false");
    return buf;
}

}  // namespace wew::bs_power
