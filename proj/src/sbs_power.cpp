#include "wew/sbs_power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wew/errors.hpp"

namespace wew::sbs_power {

using channel::ChannelRealization;
using rate_model::RateRequirements;

namespace {

constexpr double kEtaMax = 1e6;
constexpr double kBisectTol = 1e-10;

double require_norm_sq(const linalg::CVec& h) {
    const double nsq = h.norm_sq();
    if (std::sqrt(nsq) <= linalg::kZeroVectorEps * static_cast<double>(h.dim()))
        throw ZeroVectorError{};
    return nsq;
}

}  // namespace

std::pair<double, double> individual_eta_bounds(const ChannelRealization& ch,
                                                const RateRequirements& rates, double P_S,
                                                double sigma2) {
    const double n1 = require_norm_sq(ch.h1);
    const double n2 = require_norm_sq(ch.h2);
    const double a1 = std::max(1.0, sigma2 * (std::exp2(rates.R_D1) - 1.0) / (P_S * n1));
    const double a2 = std::max(1.0, sigma2 * (std::exp2(rates.R_D2) - 1.0) / (P_S * n2));
    return {a1, a2};
}

double sumrate_value_weighted(double eta1, double eta2, const ChannelRealization& ch, double P_S1,
                              double P_S2, double sigma2) {
    const double c1 = eta1 * P_S1 / sigma2;
    const double c2 = eta2 * P_S2 / sigma2;
    if (ch.h1.dim() == 2) {
        const double n1 = ch.h1.norm_sq();
        const double n2 = ch.h2.norm_sq();
        const double cross = std::norm(linalg::hdot(ch.h1, ch.h2));
        return std::log2((1.0 + c1 * n1) * (1.0 + c2 * n2) - c1 * c2 * cross);
    }
    linalg::CMat m = linalg::CMat::identity(ch.h1.dim());
    m = linalg::add(m, linalg::scale(linalg::outer(ch.h1), c1));
    m = linalg::add(m, linalg::scale(linalg::outer(ch.h2), c2));
    return linalg::logdet2_psd(m);
}

double sumrate_value(double eta1, double eta2, const ChannelRealization& ch, double P_S,
                     double sigma2) {
    return sumrate_value_weighted(eta1, eta2, ch, P_S, P_S, sigma2);
}

EtaSolution solve_eta_weighted(const ChannelRealization& ch, const RateRequirements& rates,
                               double P_S1, double P_S2, double sigma2) {
    rates.validate();
    const double n1 = require_norm_sq(ch.h1);
    const double n2 = require_norm_sq(ch.h2);
    const double a1 = std::max(1.0, sigma2 * (std::exp2(rates.R_D1) - 1.0) / (P_S1 * n1));
    const double a2 = std::max(1.0, sigma2 * (std::exp2(rates.R_D2) - 1.0) / (P_S2 * n2));
    const double rsum = rates.R_D1 + rates.R_D2;

    EtaSolution sol;
    sol.P_S1 = P_S1;
    sol.P_S2 = P_S2;

    auto f = [&](double e1, double e2) {
        return sumrate_value_weighted(e1, e2, ch, P_S1, P_S2, sigma2);
    };

    double eta1 = a1, eta2 = a2;
    if (f(a1, a2) < rsum - 1e-12) {
        // sum-rate boundary: for fixed eta1, the smallest feasible eta2
        auto eta2_of = [&](double e1) {
            double lo = a2, hi = std::max(a2, 1.0);
            while (f(e1, hi) < rsum) {
                hi *= 2.0;
                if (hi > kEtaMax) {
                    sol.status = EtaStatus::SolverFailure;
                    return kEtaMax;
                }
            }
            while (hi - lo > kBisectTol * std::max(1.0, lo)) {
                const double mid = 0.5 * (lo + hi);
                (f(e1, mid) >= rsum ? hi : lo) = mid;
            }
            return hi;
        };

        // search interval end: smallest eta1 with (eta1, a2) already feasible
        double e1_hi = std::max(a1, 1.0);
        while (f(e1_hi, a2) < rsum) {
            e1_hi *= 2.0;
            if (e1_hi > kEtaMax) {
                sol.status = EtaStatus::SolverFailure;
                break;
            }
        }
        if (sol.status == EtaStatus::SolverFailure) {
            sol.eta1 = a1;
            sol.eta2 = a2;
            sol.extra_power = (sol.eta1 - 1.0) * P_S1 + (sol.eta2 - 1.0) * P_S2;
            return sol;
        }
        {
            double lo = a1, hi = e1_hi;
            while (hi - lo > kBisectTol * std::max(1.0, lo)) {
                const double mid = 0.5 * (lo + hi);
                (f(mid, a2) >= rsum ? hi : lo) = mid;
            }
            e1_hi = hi;
        }

        auto objective = [&](double e1) { return e1 * P_S1 + eta2_of(e1) * P_S2; };

        double best_e1 = a1;
        double best_obj = objective(a1);
        auto consider = [&](double e1) {
            const double v = objective(e1);
            if (v < best_obj) {
                best_obj = v;
                best_e1 = e1;
            }
            return v;
        };
        consider(e1_hi);
        {
            constexpr double invphi = 0.6180339887498949;
            double lo = a1, hi = e1_hi;
            double c = hi - invphi * (hi - lo);
            double d = lo + invphi * (hi - lo);
            double fc = consider(c);
            double fd = consider(d);
            while (hi - lo > 1e-9 * std::max(1.0, hi)) {
                if (fc < fd) {
                    hi = d;
                    d = c;
                    fd = fc;
                    c = hi - invphi * (hi - lo);
                    fc = consider(c);
                } else {
                    lo = c;
                    c = d;
                    fc = fd;
                    d = lo + invphi * (hi - lo);
                    fd = consider(d);
                }
            }
        }

        // balanced tie-break: on a flat boundary pick the point nearest
        // eta1 == eta2 among minimizers
        {
            double lo = a1, hi = e1_hi;
            if (eta2_of(lo) >= lo && eta2_of(hi) <= hi) {
                while (hi - lo > kBisectTol * std::max(1.0, lo)) {
                    const double mid = 0.5 * (lo + hi);
                    (eta2_of(mid) <= mid ? hi : lo) = mid;
                }
                const double e1_eq = 0.5 * (lo + hi);
                if (objective(e1_eq) <= best_obj + 1e-9 * std::max(1.0, std::abs(best_obj))) {
                    const double worst_eq = std::max(e1_eq, eta2_of(e1_eq));
                    const double worst_best = std::max(best_e1, eta2_of(best_e1));
                    if (worst_eq < worst_best) best_e1 = e1_eq;
                }
            }
        }

        eta1 = best_e1;
        eta2 = eta2_of(best_e1);
    }

    sol.eta1 = eta1;
    sol.eta2 = eta2;
    sol.extra_power = (eta1 - 1.0) * P_S1 + (eta2 - 1.0) * P_S2;
    const double slack_tol = 1e-8;
    sol.active_constraints[0] =
        std::log2(1.0 + eta1 * P_S1 * n1 / sigma2) - rates.R_D1 <= slack_tol * (1.0 + rates.R_D1);
    sol.active_constraints[1] =
        std::log2(1.0 + eta2 * P_S2 * n2 / sigma2) - rates.R_D2 <= slack_tol * (1.0 + rates.R_D2);
    sol.active_constraints[2] = f(eta1, eta2) - rsum <= slack_tol * (1.0 + rsum);
    return sol;
}

EtaSolution solve_eta(const ChannelRealization& ch, const RateRequirements& rates, double P_S,
                      double sigma2) {
    return solve_eta_weighted(ch, rates, P_S, P_S, sigma2);
}

}  // namespace wew::sbs_power
