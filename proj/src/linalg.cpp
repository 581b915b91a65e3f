#include "wew/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wew::linalg {

double CVec::norm_sq() const {
    double s = 0.0;
    for (const cplx& x : e) s += std::norm(x);
    return s;
}

double CVec::norm() const { return std::sqrt(norm_sq()); }

cplx hdot(const CVec& a, const CVec& b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.e.size(); ++i) s += std::conj(a.e[i]) * b.e[i];
    return s;
}

CVec normalized(const CVec& h) {
    const double nrm = h.norm();
    if (nrm <= kZeroVectorEps * static_cast<double>(h.dim())) throw ZeroVectorError{};
    CVec out(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) out[i] = h[i] / nrm;
    return out;
}

CMat CMat::identity(std::size_t dim) {
    CMat m(dim, true);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = cplx{1.0, 0.0};
    return m;
}

double CMat::trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += at(i, i).real();
    return t;
}

CMat outer(const CVec& h) {
    CMat m(h.dim(), true);
    for (std::size_t i = 0; i < h.dim(); ++i)
        for (std::size_t j = 0; j < h.dim(); ++j) m.at(i, j) = h[i] * std::conj(h[j]);
    return m;
}

CMat add(const CMat& x, const CMat& y) {
    CMat m(x.n, x.hermitian && y.hermitian);
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
    return m;
}

CMat scale(const CMat& x, double s) {
    CMat m = x;
    for (cplx& v : m.a) v *= s;
    return m;
}

CVec matvec(const CMat& m, const CVec& v) {
    CVec out(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < m.n; ++j) s += m.at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double herm_inner(const CMat& x, const CMat& y) {
    // Tr(XY) = sum_ij X_ij Y_ji = sum_ij X_ij conj(Y_ij) for Hermitian Y.
    double s = 0.0;
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) s += (x.at(i, j) * y.at(j, i)).real();
    return s;
}

CMat orth_projector(const CVec& h) {
    const double nsq = h.norm_sq();
    if (std::sqrt(nsq) <= kZeroVectorEps * static_cast<double>(h.dim())) throw ZeroVectorError{};
    CMat p = CMat::identity(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i)
        for (std::size_t j = 0; j < h.dim(); ++j) p.at(i, j) -= h[i] * std::conj(h[j]) / nsq;
    p.hermitian = true;
    return p;
}

namespace {

// In-place complex LL^H factorization. Returns false on a pivot below -tol
// (relative to trace) or when the matrix is numerically singular.
bool chol_complex(CMat a, double& log2det) {
    const std::size_t n = a.n;
    const double tol = kPsdEps * std::max(std::abs(a.trace_real()), 1.0);
    log2det = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cplx pivot = a.at(k, k);
        for (std::size_t j = 0; j < k; ++j) pivot -= a.at(k, j) * std::conj(a.at(k, j));
        const double d = pivot.real();
        if (d <= tol * 1e-3) return false;  // singular or indefinite beyond tolerance
        const double lkk = std::sqrt(d);
        a.at(k, k) = cplx{lkk, 0.0};
        log2det += 2.0 * std::log2(lkk);
        for (std::size_t i = k + 1; i < n; ++i) {
            cplx s = a.at(i, k);
            for (std::size_t j = 0; j < k; ++j) s -= a.at(i, j) * std::conj(a.at(k, j));
            a.at(i, k) = s / lkk;
        }
    }
    return true;
}

}  // namespace

double logdet2_psd(const CMat& a) {
    double ld = 0.0;
    if (!chol_complex(a, ld)) throw NotPsdError{};
    return ld;
}

SymMat SymMat::identity(std::size_t dim) {
    SymMat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

double SymMat::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += at(i, i);
    return t;
}

double SymMat::fro_norm() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

void SymMat::symmetrize() {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = 0.5 * (at(i, j) + at(j, i));
            at(i, j) = m;
            at(j, i) = m;
        }
}

SymMat sym_add(const SymMat& x, const SymMat& y) {
    SymMat m(x.n);
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
    return m;
}

SymMat sym_sub(const SymMat& x, const SymMat& y) {
    SymMat m(x.n);
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] - y.a[i];
    return m;
}

SymMat sym_scale(const SymMat& x, double s) {
    SymMat m = x;
    for (double& v : m.a) v *= s;
    return m;
}

void sym_axpy(SymMat& y, double alpha, const SymMat& x) {
    for (std::size_t i = 0; i < y.a.size(); ++i) y.a[i] += alpha * x.a[i];
}

SymMat mat_mul(const SymMat& x, const SymMat& y) {
    const std::size_t n = x.n;
    SymMat m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double xik = x.at(i, k);
            if (xik == 0.0) continue;
            const double* yrow = &y.a[k * n];
            double* mrow = &m.a[i * n];
            for (std::size_t j = 0; j < n; ++j) mrow[j] += xik * yrow[j];
        }
    }
    return m;
}

double sym_inner(const SymMat& x, const SymMat& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
    return s;
}

SymMat real_embedding(const CMat& a) {
    const std::size_t d = a.n;
    SymMat m(2 * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double re = a.at(i, j).real();
            const double im = a.at(i, j).imag();
            m.at(i, j) = re;
            m.at(i + d, j + d) = re;
            m.at(i, j + d) = -im;
            m.at(i + d, j) = im;
        }
    return m;
}

CMat complex_from_embedding(const SymMat& x) {
    const std::size_t d = x.n / 2;
    CMat a(d, true);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double re = 0.5 * (x.at(i, j) + x.at(i + d, j + d));
            const double im = 0.5 * (x.at(i + d, j) - x.at(i, j + d));
            a.at(i, j) = cplx{re, im};
        }
    // enforce exact Hermitian symmetry
    for (std::size_t i = 0; i < d; ++i) {
        a.at(i, i) = cplx{a.at(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx m = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            a.at(i, j) = m;
            a.at(j, i) = std::conj(m);
        }
    }
    return a;
}

bool cholesky(const SymMat& s, SymMat& l) {
    const std::size_t n = s.n;
    const double tol = kPsdEps * std::max(s.trace(), 1.0);
    l = SymMat(n);
    for (std::size_t k = 0; k < n; ++k) {
        double pivot = s.at(k, k);
        for (std::size_t j = 0; j < k; ++j) pivot -= l.at(k, j) * l.at(k, j);
        if (pivot <= 0.0) {
            if (pivot < -tol) return false;
            // semidefinite direction: accept only if the rest of the column vanishes
            double col = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) {
                double v = s.at(i, k);
                for (std::size_t j = 0; j < k; ++j) v -= l.at(i, j) * l.at(k, j);
                col += std::abs(v);
            }
            if (col > tol) return false;
            l.at(k, k) = 0.0;
            continue;
        }
        const double lkk = std::sqrt(pivot);
        l.at(k, k) = lkk;
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = s.at(i, k);
            for (std::size_t j = 0; j < k; ++j) v -= l.at(i, j) * l.at(k, j);
            l.at(i, k) = v / lkk;
        }
    }
    return true;
}

std::vector<double> cholesky_solve(const SymMat& l, const std::vector<double>& b) {
    const std::size_t n = l.n;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= l.at(i, j) * y[j];
        y[i] = s / l.at(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= l.at(j, ii) * y[j];
        y[ii] = s / l.at(ii, ii);
    }
    return y;
}

EigenSym jacobi_eigh(const SymMat& s) {
    const std::size_t n = s.n;
    SymMat a = s;
    SymMat v = SymMat::identity(n);
    if (n <= 1) {
        EigenSym es;
        es.values.assign(n, n == 1 ? a.at(0, 0) : 0.0);
        es.vectors = v;
        return es;
    }
    const double fro = std::max(a.fro_norm(), 1e-300);
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (std::sqrt(2.0 * off) <= 1e-15 * fro) break;
        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) <= 1e-18 * fro) continue;
                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sgn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - sgn * akq;
                    a.at(k, q) = sgn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - sgn * aqk;
                    a.at(q, k) = sgn * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p);
                    const double vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - sgn * vkq;
                    v.at(k, q) = sgn * vkp + c * vkq;
                }
            }
        }
    }
    EigenSym es;
    es.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) es.values[i] = a.at(i, i);
    // sort ascending, permuting eigenvector columns alongside
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return es.values[x] < es.values[y]; });
    EigenSym out;
    out.values.resize(n);
    out.vectors = SymMat(n);
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = es.values[idx[c]];
        for (std::size_t r = 0; r < n; ++r) out.vectors.at(r, c) = v.at(r, idx[c]);
    }
    return out;
}

SymMat eig_apply(const EigenSym& es, double (*fn)(double)) {
    const std::size_t n = es.values.size();
    SymMat m(n);
    for (std::size_t c = 0; c < n; ++c) {
        const double f = fn(es.values[c]);
        if (f == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const double vif = es.vectors.at(i, c) * f;
            if (vif == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) += vif * es.vectors.at(j, c);
        }
    }
    return m;
}

}  // namespace wew::linalg
