#include "wew/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wew::sdp {

using linalg::CMat;
using linalg::EigenSym;
using linalg::SymMat;

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::Unbounded: return "Unbounded";
        case SolveStatus::MaxIterations: return "MaxIterations";
    }
    return "Unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sqrt_fn(double x) { return std::sqrt(std::max(x, 0.0)); }
double isqrt_fn(double x) { return 1.0 / std::sqrt(std::max(x, 1e-300)); }
double inv_fn(double x) { return 1.0 / x; }

// Element of the product cone R^q_+ x S^e_+.
struct ConeVec {
    std::vector<double> d;
    SymMat X;

    ConeVec() = default;
    ConeVec(int q, int e) : d(q, 0.0), X(e) {}
};

double cv_inner(const ConeVec& a, const ConeVec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.d.size(); ++i) s += a.d[i] * b.d[i];
    if (a.X.n > 0) s += linalg::sym_inner(a.X, b.X);
    return s;
}

void cv_axpy(ConeVec& y, double alpha, const ConeVec& x) {
    for (std::size_t i = 0; i < y.d.size(); ++i) y.d[i] += alpha * x.d[i];
    if (y.X.n > 0) linalg::sym_axpy(y.X, alpha, x.X);
}

double cv_maxabs(const ConeVec& a) {
    double m = 0.0;
    for (double v : a.d) m = std::max(m, std::abs(v));
    for (double v : a.X.a) m = std::max(m, std::abs(v));
    return m;
}

// Scaled internal problem: equality form over the product cone, where each
// inequality has its own slack slot appended to the orthant block.
struct Internal {
    int n = 0;  // scalar variables
    int m = 0;  // constraints
    int q = 0;  // orthant block size = n + m
    int e = 0;  // PSD block size = 2 * psd_dim

    std::vector<std::vector<double>> avec;  // per constraint, orthant coefficients
    std::vector<SymMat> amat;               // per constraint, PSD coefficients
    std::vector<double> b;
    std::vector<double> cd;
    SymMat cX;

    std::vector<double> row_scale;  // d_j applied to constraint j
    double b_scale = 1.0;
    double c_scale = 1.0;
};

double constraint_lhs(const Internal& p, int j, const ConeVec& x) {
    double v = 0.0;
    for (int i = 0; i < p.q; ++i) v += p.avec[j][i] * x.d[i];
    if (p.e > 0) v += linalg::sym_inner(p.amat[j], x.X);
    return v;
}

ConeVec adjoint_apply(const Internal& p, const std::vector<double>& y) {
    ConeVec out(p.q, p.e);
    for (int j = 0; j < p.m; ++j) {
        for (int i = 0; i < p.q; ++i) out.d[i] += y[j] * p.avec[j][i];
        if (p.e > 0) linalg::sym_axpy(out.X, y[j], p.amat[j]);
    }
    return out;
}

Internal build_internal(const ConicProblem& prob) {
    Internal p;
    p.n = prob.n_scalars;
    p.m = static_cast<int>(prob.constraints.size());
    p.q = p.n + p.m;
    p.e = 2 * prob.psd_dim;

    p.cd.assign(p.q, 0.0);
    for (int i = 0; i < p.n; ++i) p.cd[i] = prob.scalar_cost[i];
    if (p.e > 0) p.cX = linalg::sym_scale(linalg::real_embedding(prob.matrix_cost), 0.5);

    p.row_scale.resize(p.m);
    p.b.resize(p.m);
    p.avec.resize(p.m);
    p.amat.resize(p.m);
    for (int j = 0; j < p.m; ++j) {
        const auto& con = prob.constraints[j];
        double nrm_sq = 0.0;
        for (int i = 0; i < p.n; ++i) nrm_sq += con.scalar_coeff[i] * con.scalar_coeff[i];
        SymMat mj;
        if (p.e > 0) {
            mj = linalg::sym_scale(linalg::real_embedding(con.matrix_coeff), 0.5);
            nrm_sq += linalg::sym_inner(mj, mj);
        }
        const double dj = 1.0 / std::max(std::sqrt(nrm_sq), 1e-12);
        p.row_scale[j] = dj;
        p.avec[j].assign(p.q, 0.0);
        for (int i = 0; i < p.n; ++i) p.avec[j][i] = dj * con.scalar_coeff[i];
        p.avec[j][p.n + j] = -1.0;
        if (p.e > 0) p.amat[j] = linalg::sym_scale(mj, dj);
        p.b[j] = dj * con.bound;
    }

    double bmax = 0.0;
    for (double v : p.b) bmax = std::max(bmax, std::abs(v));
    p.b_scale = std::max(bmax, 1.0);
    for (double& v : p.b) v /= p.b_scale;

    double cmax = 0.0;
    for (double v : p.cd) cmax = std::max(cmax, std::abs(v));
    for (double v : p.cX.a) cmax = std::max(cmax, std::abs(v));
    p.c_scale = std::max(cmax, 1.0);
    for (double& v : p.cd) v /= p.c_scale;
    for (double& v : p.cX.a) v /= p.c_scale;
    return p;
}

// Largest alpha with x + alpha*dx staying in the cone, +inf if unbounded.
double max_step(const ConeVec& x, const ConeVec& dx) {
    double alpha = kInf;
    for (std::size_t i = 0; i < x.d.size(); ++i)
        if (dx.d[i] < 0.0) alpha = std::min(alpha, -x.d[i] / dx.d[i]);
    if (x.X.n > 0) {
        SymMat l;
        if (!linalg::cholesky(x.X, l)) return 0.0;
        const int e = static_cast<int>(x.X.n);
        // K = L^{-1} dX L^{-T}
        SymMat y(e);
        for (int c = 0; c < e; ++c) {
            for (int i = 0; i < e; ++i) {
                double s = dx.X.at(i, c);
                for (int j = 0; j < i; ++j) s -= l.at(i, j) * y.at(j, c);
                y.at(i, c) = s / l.at(i, i);
            }
        }
        SymMat k(e);
        for (int r = 0; r < e; ++r) {
            for (int i = 0; i < e; ++i) {
                double s = y.at(r, i);
                for (int j = 0; j < i; ++j) s -= l.at(i, j) * k.at(r, j);
                k.at(r, i) = s / l.at(i, i);
            }
        }
        k.symmetrize();
        const double lmin = linalg::jacobi_eigh(k).values.front();
        if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
    }
    return alpha;
}

struct IpmResult {
    bool converged = false;
    bool breakdown = false;
    bool unbounded = false;
    int iterations = 0;
    ConeVec x;
    ConeVec s;
    std::vector<double> y;
    double best_certified_dual = -kInf;  // in scaled units
};

inline double row_tolerance_hint(int j, const std::vector<double>& row_tol) {
    return std::max(row_tol[j], 1e-300);
}

// Infeasible-start NT path following with adaptive centering from a
// Mehrotra-style affine predictor. `obj_scale` converts scaled objective
// values back to original units so the gap test matches what is reported.
IpmResult run_ipm(const Internal& p, const SolverOptions& opt, const std::vector<double>& row_tol,
                  double dual_tol, double obj_scale) {
    IpmResult res;
    const int q = p.q, e = p.e, m = p.m;
    const double nu = static_cast<double>(q + e);

    double bmax = 0.0;
    for (double v : p.b) bmax = std::max(bmax, std::abs(v));
    const double eta = 1.0 + bmax;

    ConeVec x(q, e), s(q, e);
    for (int i = 0; i < p.n; ++i) x.d[i] = 1.0;
    for (int j = 0; j < m; ++j) x.d[p.n + j] = eta;
    for (int i = 0; i < e; ++i) x.X.at(i, i) = eta;
    for (int i = 0; i < q; ++i) s.d[i] = 1.0;
    for (int i = 0; i < e; ++i) s.X.at(i, i) = 1.0;
    std::vector<double> y(m, 0.0);

    IpmResult best;
    double best_merit = kInf;

    std::vector<double> rp(m);
    for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
        // residuals
        for (int j = 0; j < m; ++j) rp[j] = p.b[j] - constraint_lhs(p, j, x);
        ConeVec rd = adjoint_apply(p, y);
        for (int i = 0; i < q; ++i) rd.d[i] = p.cd[i] - s.d[i] - rd.d[i];
        if (e > 0) {
            SymMat t = linalg::sym_sub(p.cX, s.X);
            rd.X = linalg::sym_sub(t, rd.X);
        }

        const double gap_abs = cv_inner(x, s);
        const double mu = gap_abs / nu;
        double pval = 0.0;
        for (int i = 0; i < q; ++i) pval += p.cd[i] * x.d[i];
        if (e > 0) pval += linalg::sym_inner(p.cX, x.X);
        double dval = 0.0;
        for (int j = 0; j < m; ++j) dval += p.b[j] * y[j];

        bool pres_ok = true;
        for (int j = 0; j < m; ++j)
            if (std::abs(rp[j]) > row_tol[j]) { pres_ok = false; break; }
        const double dres = cv_maxabs(rd);
        // gap normalized as reported, in original objective units
        const double relgap = gap_abs * obj_scale /
                              std::max({1.0, std::abs(pval) * obj_scale,
                                        std::abs(dval) * obj_scale});

        // certified dual bound: y >= 0 and c - A*y in the cone
        {
            bool ok = true;
            for (int j = 0; j < m; ++j)
                if (y[j] < -1e-12) { ok = false; break; }
            if (ok) {
                ConeVec sl = adjoint_apply(p, y);
                for (int i = 0; i < q; ++i) {
                    sl.d[i] = p.cd[i] - sl.d[i];
                    if (sl.d[i] < -1e-11) { ok = false; break; }
                }
                if (ok && e > 0) {
                    SymMat sw = linalg::sym_sub(p.cX, sl.X);
                    const double lmin = linalg::jacobi_eigh(sw).values.front();
                    if (lmin < -1e-11 * std::max(1.0, sw.fro_norm())) ok = false;
                }
                if (ok) res.best_certified_dual = std::max(res.best_certified_dual, dval);
            }
        }

        if (std::getenv("WEW_SDP_TRACE")) {
            double presmax = 0.0;
            for (int j = 0; j < m; ++j) presmax = std::max(presmax, std::abs(rp[j]) / row_tolerance_hint(j, row_tol));
            std::fprintf(stderr, "it %3d  pobj %+.6e dobj %+.6e mu %.3e pres %.3e dres %.3e gap %.3e\n",
                         res.iterations, pval, dval, mu, presmax, dres, relgap);
        }

        const double merit = std::max({pres_ok ? 0.0 : 1.0, dres / dual_tol, relgap / opt.tol});
        if (merit < best_merit) {
            best_merit = merit;
            best.x = x;
            best.s = s;
            best.y = y;
        }

        if (pres_ok && dres <= dual_tol && relgap <= opt.tol) {
            res.converged = true;
            break;
        }
        if (pval < -1e12 && pres_ok) {
            res.unbounded = true;
            break;
        }
        if (cv_maxabs(x) > 1e16 || cv_maxabs(s) > 1e16) {
            res.breakdown = true;
            break;
        }

        // NT scaling
        std::vector<double> w2(q);
        for (int i = 0; i < q; ++i) {
            if (x.d[i] <= 0.0 || s.d[i] <= 0.0) { res.breakdown = true; break; }
            w2[i] = x.d[i] / s.d[i];
        }
        if (res.breakdown) break;

        SymMat W, Sinv;
        if (e > 0) {
            EigenSym es = linalg::jacobi_eigh(s.X);
            if (es.values.front() <= 0.0) { res.breakdown = true; break; }
            SymMat s_half = linalg::eig_apply(es, sqrt_fn);
            SymMat s_ihalf = linalg::eig_apply(es, isqrt_fn);
            Sinv = linalg::eig_apply(es, inv_fn);
            SymMat bmat = linalg::mat_mul(linalg::mat_mul(s_half, x.X), s_half);
            bmat.symmetrize();
            EigenSym eb = linalg::jacobi_eigh(bmat);
            if (eb.values.front() <= 0.0) { res.breakdown = true; break; }
            SymMat b_half = linalg::eig_apply(eb, sqrt_fn);
            W = linalg::mat_mul(linalg::mat_mul(s_ihalf, b_half), s_ihalf);
            W.symmetrize();
        }

        // Schur complement M_jk = sum_i a_j a_k w2 + <A_j, W A_k W>
        std::vector<SymMat> wakw(m);
        if (e > 0)
            for (int k = 0; k < m; ++k) {
                wakw[k] = linalg::mat_mul(linalg::mat_mul(W, p.amat[k]), W);
                wakw[k].symmetrize();
            }
        SymMat schur(m);
        for (int j = 0; j < m; ++j)
            for (int k = j; k < m; ++k) {
                double v = 0.0;
                for (int i = 0; i < q; ++i) v += p.avec[j][i] * p.avec[k][i] * w2[i];
                if (e > 0) v += linalg::sym_inner(p.amat[j], wakw[k]);
                schur.at(j, k) = v;
                schur.at(k, j) = v;
            }
        // the Schur solve needs a strictly positive factor; near the optimal
        // face the system can go numerically singular, so retry once with a
        // tiny diagonal lift before giving up on this iterate
        SymMat schur_l;
        bool factor_ok = false;
        for (int attempt = 0; attempt < 2 && !factor_ok; ++attempt) {
            if (attempt == 1) {
                double dmax = 0.0;
                for (int j = 0; j < m; ++j) dmax = std::max(dmax, schur.at(j, j));
                for (int j = 0; j < m; ++j) schur.at(j, j) += 1e-13 * std::max(dmax, 1e-300);
            }
            factor_ok = linalg::cholesky(schur, schur_l);
            if (factor_ok)
                for (int j = 0; j < m; ++j)
                    if (!(schur_l.at(j, j) > 0.0)) factor_ok = false;
        }
        if (!factor_ok) { res.breakdown = true; break; }

        auto solve_direction = [&](const ConeVec& rc, ConeVec& dx, ConeVec& ds,
                                   std::vector<double>& dy) {
            // rhs_j = rp_j - <A_j, rc> + <A_j, W rd W>
            ConeVec wrdw(q, e);
            for (int i = 0; i < q; ++i) wrdw.d[i] = w2[i] * rd.d[i];
            if (e > 0) {
                wrdw.X = linalg::mat_mul(linalg::mat_mul(W, rd.X), W);
                wrdw.X.symmetrize();
            }
            std::vector<double> rhs(m);
            for (int j = 0; j < m; ++j)
                rhs[j] = rp[j] - constraint_lhs(p, j, rc) + constraint_lhs(p, j, wrdw);
            dy = linalg::cholesky_solve(schur_l, rhs);
            // iterative refinement keeps the direction accurate once the
            // Schur system turns ill-conditioned near the optimal face
            for (int pass = 0; pass < 3; ++pass) {
                std::vector<double> resid(m);
                double rnorm = 0.0, bnorm = 0.0;
                for (int j = 0; j < m; ++j) {
                    double mv = 0.0;
                    for (int k = 0; k < m; ++k) mv += schur.at(j, k) * dy[k];
                    resid[j] = rhs[j] - mv;
                    rnorm = std::max(rnorm, std::abs(resid[j]));
                    bnorm = std::max(bnorm, std::abs(rhs[j]));
                }
                if (rnorm <= 1e-14 * (1.0 + bnorm)) break;
                const auto corr = linalg::cholesky_solve(schur_l, resid);
                for (int j = 0; j < m; ++j) dy[j] += corr[j];
            }
            ConeVec ady = adjoint_apply(p, dy);
            ds = ConeVec(q, e);
            for (int i = 0; i < q; ++i) ds.d[i] = rd.d[i] - ady.d[i];
            if (e > 0) ds.X = linalg::sym_sub(rd.X, ady.X);
            dx = ConeVec(q, e);
            for (int i = 0; i < q; ++i) dx.d[i] = rc.d[i] - w2[i] * ds.d[i];
            if (e > 0) {
                SymMat wdsw = linalg::mat_mul(linalg::mat_mul(W, ds.X), W);
                dx.X = linalg::sym_sub(rc.X, wdsw);
                dx.X.symmetrize();
            }
        };

        // predictor (affine direction, sigma = 0)
        ConeVec rc_aff(q, e);
        for (int i = 0; i < q; ++i) rc_aff.d[i] = -x.d[i];
        if (e > 0) rc_aff.X = linalg::sym_scale(x.X, -1.0);
        ConeVec dxa, dsa;
        std::vector<double> dya;
        solve_direction(rc_aff, dxa, dsa, dya);
        const double ap_aff = std::min(1.0, max_step(x, dxa));
        const double ad_aff = std::min(1.0, max_step(s, dsa));
        ConeVec xa = x, sa = s;
        cv_axpy(xa, ap_aff, dxa);
        cv_axpy(sa, ad_aff, dsa);
        const double mu_aff = cv_inner(xa, sa) / nu;
        double sigma = mu_aff / std::max(mu, 1e-300);
        sigma = std::clamp(sigma * sigma * sigma, 1e-6, 1.0 - 1e-6);

        // corrector (centering) direction
        ConeVec rc(q, e);
        for (int i = 0; i < q; ++i) rc.d[i] = sigma * mu / s.d[i] - x.d[i];
        if (e > 0) {
            rc.X = linalg::sym_scale(Sinv, sigma * mu);
            linalg::sym_axpy(rc.X, -1.0, x.X);
        }
        ConeVec dx, ds;
        std::vector<double> dy;
        solve_direction(rc, dx, ds, dy);

        const double ap = std::min(1.0, opt.step_fraction * max_step(x, dx));
        const double ad = std::min(1.0, opt.step_fraction * max_step(s, ds));
        bool finite = std::isfinite(ap) && std::isfinite(ad);
        for (double v : dx.d) finite = finite && std::isfinite(v);
        for (double v : dx.X.a) finite = finite && std::isfinite(v);
        for (double v : ds.d) finite = finite && std::isfinite(v);
        for (double v : ds.X.a) finite = finite && std::isfinite(v);
        for (double v : dy) finite = finite && std::isfinite(v);
        if (!finite) { res.breakdown = true; break; }
        cv_axpy(x, ap, dx);
        cv_axpy(s, ad, ds);
        for (int j = 0; j < m; ++j) y[j] += ad * dy[j];
        if (e > 0) {
            x.X.symmetrize();
            s.X.symmetrize();
        }
    }

    if (res.converged || res.unbounded || best.y.empty()) {
        res.x = std::move(x);
        res.s = std::move(s);
        res.y = std::move(y);
    } else {
        res.x = std::move(best.x);
        res.s = std::move(best.s);
        res.y = std::move(best.y);
    }
    return res;
}

void validate(const ConicProblem& prob, const SolverOptions& opt) {
    if (prob.n_scalars < 0 || prob.psd_dim < 0) throw std::invalid_argument("negative dimension");
    if (static_cast<int>(prob.scalar_cost.size()) != prob.n_scalars)
        throw std::invalid_argument("scalar_cost size mismatch");
    if (prob.psd_dim > 0 && prob.matrix_cost.n != static_cast<std::size_t>(prob.psd_dim))
        throw std::invalid_argument("matrix_cost size mismatch");
    for (const auto& con : prob.constraints) {
        if (static_cast<int>(con.scalar_coeff.size()) != prob.n_scalars)
            throw std::invalid_argument("constraint scalar_coeff size mismatch");
        if (prob.psd_dim > 0 && con.matrix_coeff.n != static_cast<std::size_t>(prob.psd_dim))
            throw std::invalid_argument("constraint matrix size mismatch");
        if (!std::isfinite(con.bound)) throw std::invalid_argument("non-finite bound");
    }
    if (!(opt.tol >= 1e-10 && opt.tol <= 1e-2)) throw std::invalid_argument("tol out of range");
}

// Fill reporting fields of a solution from original-space data.
void certify(const ConicProblem& prob, ConicSolution& sol) {
    const int m = static_cast<int>(prob.constraints.size());
    sol.constraint_values.resize(m);
    double pres = 0.0;
    for (int j = 0; j < m; ++j) {
        const auto& con = prob.constraints[j];
        double v = 0.0;
        for (int i = 0; i < prob.n_scalars; ++i) v += con.scalar_coeff[i] * sol.scalars[i];
        if (prob.psd_dim > 0) v += linalg::herm_inner(con.matrix_coeff, sol.matrix_value);
        sol.constraint_values[j] = v;
        const double viol = std::max(0.0, con.bound - v);
        pres = std::max(pres, viol / (1.0 + std::abs(con.bound)));
    }
    sol.max_primal_residual = pres;

    double pobj = 0.0;
    for (int i = 0; i < prob.n_scalars; ++i) pobj += prob.scalar_cost[i] * sol.scalars[i];
    if (prob.psd_dim > 0) pobj += linalg::herm_inner(prob.matrix_cost, sol.matrix_value);
    sol.primal_objective = pobj;
    sol.gap = std::abs(sol.primal_objective - sol.dual_objective) /
              std::max({1.0, std::abs(sol.primal_objective), std::abs(sol.dual_objective)});
}

ConicSolution solve_impl(const ConicProblem& prob, const SolverOptions& opt,
                         bool allow_feasibility_phase);

// Feasibility phase: append one scalar slack with unit cost; the original
// objective is dropped. Optimal slack above tolerance certifies infeasibility.
ConicSolution feasibility_phase(const ConicProblem& prob, const SolverOptions& opt,
                                ConicSolution main_result) {
    ConicProblem aux;
    aux.n_scalars = prob.n_scalars + 1;
    aux.psd_dim = prob.psd_dim;
    aux.scalar_cost.assign(aux.n_scalars, 0.0);
    aux.scalar_cost.back() = 1.0;
    aux.matrix_cost = prob.psd_dim > 0 ? CMat(prob.psd_dim, true) : CMat{};
    aux.constraints = prob.constraints;
    for (auto& con : aux.constraints) con.scalar_coeff.push_back(1.0);

    ConicSolution aux_sol = solve_impl(aux, opt, false);
    double bmax = 0.0;
    for (const auto& con : prob.constraints) bmax = std::max(bmax, std::abs(con.bound));
    if (aux_sol.status == SolveStatus::Optimal &&
        aux_sol.scalars.back() > opt.tol * (1.0 + bmax) * 10.0) {
        ConicSolution out = std::move(main_result);
        out.status = SolveStatus::Infeasible;
        out.infeasibility_ray = aux_sol.duals;
        for (double& v : out.infeasibility_ray) v = std::max(v, 0.0);
        out.message = "infeasible: minimal constraint violation " +
                      std::to_string(aux_sol.scalars.back());
        return out;
    }
    main_result.message = main_result.message.empty()
                              ? "did not converge within iteration limit"
                              : main_result.message;
    return main_result;
}

ConicSolution solve_impl(const ConicProblem& prob, const SolverOptions& opt,
                         bool allow_feasibility_phase) {
    validate(prob, opt);
    const int m = static_cast<int>(prob.constraints.size());

    ConicSolution sol;
    sol.scalars.assign(prob.n_scalars, 0.0);
    if (prob.psd_dim > 0) sol.matrix_value = CMat(prob.psd_dim, true);
    sol.duals.assign(m, 0.0);

    if (m == 0) {
        // cone minimum of a linear objective: zero if costs are in the dual cone
        bool nonneg = true;
        for (double v : prob.scalar_cost) nonneg = nonneg && v >= 0.0;
        if (prob.psd_dim > 0) {
            const auto es = linalg::jacobi_eigh(linalg::real_embedding(prob.matrix_cost));
            nonneg = nonneg && es.values.front() >= -linalg::kPsdEps;
        }
        sol.status = nonneg ? SolveStatus::Optimal : SolveStatus::Unbounded;
        sol.dual_objective = 0.0;
        certify(prob, sol);
        return sol;
    }

    Internal p = build_internal(prob);
    std::vector<double> row_tol(m);
    for (int j = 0; j < m; ++j)
        row_tol[j] = opt.tol * (1.0 + std::abs(prob.constraints[j].bound)) * p.row_scale[j] /
                     p.b_scale;
    const double dual_tol = opt.tol;

    IpmResult r = run_ipm(p, opt, row_tol, dual_tol, p.c_scale * p.b_scale);
    sol.iterations = r.iterations;

    // unscale
    for (int i = 0; i < prob.n_scalars; ++i) sol.scalars[i] = std::max(0.0, p.b_scale * r.x.d[i]);
    if (prob.psd_dim > 0)
        sol.matrix_value = linalg::complex_from_embedding(linalg::sym_scale(r.x.X, p.b_scale));
    for (int j = 0; j < m; ++j) sol.duals[j] = std::max(0.0, p.c_scale * p.row_scale[j] * r.y[j]);
    if (r.converged) {
        double dobj = 0.0;
        for (int j = 0; j < m; ++j) dobj += prob.constraints[j].bound * sol.duals[j];
        sol.dual_objective = dobj;
    } else {
        sol.dual_objective = r.best_certified_dual > -kInf
                                 ? r.best_certified_dual * p.c_scale * p.b_scale
                                 : -kInf;
    }
    certify(prob, sol);
    sol.max_dual_residual = 0.0;  // refreshed below from the certified dual slack
    {
        double dres = 0.0;
        for (int i = 0; i < prob.n_scalars; ++i) {
            double s = prob.scalar_cost[i];
            for (int j = 0; j < m; ++j) s -= sol.duals[j] * prob.constraints[j].scalar_coeff[i];
            dres = std::max(dres, -s);
        }
        if (prob.psd_dim > 0) {
            CMat sw = prob.matrix_cost;
            for (int j = 0; j < m; ++j)
                sw = linalg::add(sw, linalg::scale(prob.constraints[j].matrix_coeff, -sol.duals[j]));
            const auto es = linalg::jacobi_eigh(linalg::real_embedding(sw));
            dres = std::max(dres, -es.values.front());
        }
        sol.max_dual_residual = std::max(0.0, dres) / (1.0 + p.c_scale);
    }

    if (r.converged) {
        sol.status = SolveStatus::Optimal;
        return sol;
    }
    if (r.unbounded) {
        sol.status = SolveStatus::Unbounded;
        sol.message = "objective unbounded below";
        return sol;
    }
    sol.status = SolveStatus::MaxIterations;
    if (allow_feasibility_phase) return feasibility_phase(prob, opt, std::move(sol));
    return sol;
}

}  // namespace

ConicSolution solve(const ConicProblem& problem, const SolverOptions& options) {
    return solve_impl(problem, options, true);
}

ConicSolution solve(const ConicProblem& problem, double tol) {
    SolverOptions opt;
    opt.tol = tol;
    return solve_impl(problem, opt, true);
}

namespace {

void write_cmat(std::ostream& os, const CMat& m) {
    char buf[64];
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        std::snprintf(buf, sizeof buf, " %.17g %.17g", m.a[i].real(), m.a[i].imag());
        os << buf;
    }
}

CMat read_cmat(std::istream& is, int dim) {
    CMat m(static_cast<std::size_t>(dim), true);
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        double re = 0.0, im = 0.0;
        is >> re >> im;
        m.a[i] = linalg::cplx{re, im};
    }
    return m;
}

}  // namespace

void dump(const ConicProblem& problem, std::ostream& os) {
    char buf[64];
    os << "conic-problem v1\n";
    os << "scalars " << problem.n_scalars << "\n";
    os << "psd_dim " << problem.psd_dim << "\n";
    os << "scalar_cost";
    for (double v : problem.scalar_cost) {
        std::snprintf(buf, sizeof buf, " %.17g", v);
        os << buf;
    }
    os << "\n";
    if (problem.psd_dim > 0) {
        os << "matrix_cost";
        write_cmat(os, problem.matrix_cost);
        os << "\n";
    }
    for (const auto& con : problem.constraints) {
        std::snprintf(buf, sizeof buf, "%.17g", con.bound);
        os << "constraint bound " << buf << " scalar_coeff";
        for (double v : con.scalar_coeff) {
            std::snprintf(buf, sizeof buf, " %.17g", v);
            os << buf;
        }
        if (problem.psd_dim > 0) {
            os << " matrix_coeff";
            write_cmat(os, con.matrix_coeff);
        }
        os << "\n";
    }
    os << "end\n";
}

ConicProblem load(std::istream& is) {
    ConicProblem prob;
    std::string line;
    if (!std::getline(is, line) || line != "conic-problem v1")
        throw ConfigError("bad problem header: " + line);
    std::string tok;
    is >> tok >> prob.n_scalars;
    if (tok != "scalars") throw ConfigError("expected 'scalars'");
    is >> tok >> prob.psd_dim;
    if (tok != "psd_dim") throw ConfigError("expected 'psd_dim'");
    is >> tok;
    if (tok != "scalar_cost") throw ConfigError("expected 'scalar_cost'");
    prob.scalar_cost.resize(prob.n_scalars);
    for (double& v : prob.scalar_cost) is >> v;
    is >> tok;
    if (prob.psd_dim > 0) {
        if (tok != "matrix_cost") throw ConfigError("expected 'matrix_cost'");
        prob.matrix_cost = read_cmat(is, prob.psd_dim);
        is >> tok;
    }
    while (tok == "constraint") {
        ConicProblem::Constraint con;
        is >> tok >> con.bound;
        if (tok != "bound") throw ConfigError("expected 'bound'");
        is >> tok;
        if (tok != "scalar_coeff") throw ConfigError("expected 'scalar_coeff'");
        con.scalar_coeff.resize(prob.n_scalars);
        for (double& v : con.scalar_coeff) is >> v;
        if (prob.psd_dim > 0) {
            is >> tok;
            if (tok != "matrix_coeff") throw ConfigError("expected 'matrix_coeff'");
            con.matrix_coeff = read_cmat(is, prob.psd_dim);
        }
        prob.constraints.push_back(std::move(con));
        is >> tok;
    }
    if (tok != "end") throw ConfigError("expected 'end'");
    return prob;
}

}  // namespace wew::sdp
