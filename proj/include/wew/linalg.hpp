#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "wew/errors.hpp"

namespace wew::linalg {

using cplx = std::complex<double>;

inline constexpr double kZeroVectorEps = 1e-12;  // per-dimension zero threshold
inline constexpr double kPsdEps = 1e-9;          // PSD tolerance, relative to trace

// Dense complex column vector.
struct CVec {
    std::vector<cplx> e;

    CVec() = default;
    explicit CVec(std::size_t dim) : e(dim, cplx{0.0, 0.0}) {}
    CVec(std::initializer_list<cplx> init) : e(init) {}

    std::size_t dim() const { return e.size(); }
    cplx& operator[](std::size_t i) { return e[i]; }
    const cplx& operator[](std::size_t i) const { return e[i]; }

    double norm_sq() const;
    double norm() const;
};

// a^H b
cplx hdot(const CVec& a, const CVec& b);

// Returns h / ||h||. Throws ZeroVectorError if ||h|| <= kZeroVectorEps * dim.
CVec normalized(const CVec& h);

// Dense complex square matrix, row-major. `hermitian` is set by construction
// for matrices built from Hermitian-preserving operations.
struct CMat {
    std::size_t n = 0;
    bool hermitian = false;
    std::vector<cplx> a;

    CMat() = default;
    CMat(std::size_t dim, bool herm) : n(dim), hermitian(herm), a(dim * dim, cplx{0.0, 0.0}) {}

    static CMat identity(std::size_t dim);

    cplx& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double trace_real() const;
};

// h h^H (Hermitian, PSD, rank one)
CMat outer(const CVec& h);

CMat add(const CMat& x, const CMat& y);
CMat scale(const CMat& x, double s);
CVec matvec(const CMat& m, const CVec& v);

// Tr(A B) for Hermitian A, B (a real number).
double herm_inner(const CMat& x, const CMat& y);

// I - h (h^H h)^{-1} h^H. Annihilates h; Hermitian and idempotent.
// Throws ZeroVectorError if ||h|| <= kZeroVectorEps * dim.
CMat orth_projector(const CVec& h);

// log2 det(A) for Hermitian PSD A, via Cholesky. Throws NotPsdError when a
// pivot falls below -kPsdEps * trace (or the matrix is numerically singular).
double logdet2_psd(const CMat& a);

// Dense real symmetric matrix, row-major full storage.
struct SymMat {
    std::size_t n = 0;
    std::vector<double> a;

    SymMat() = default;
    explicit SymMat(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

    static SymMat identity(std::size_t dim);

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const double& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double trace() const;
    double fro_norm() const;
    void symmetrize();
};

SymMat sym_add(const SymMat& x, const SymMat& y);
SymMat sym_sub(const SymMat& x, const SymMat& y);
SymMat sym_scale(const SymMat& x, double s);
void sym_axpy(SymMat& y, double alpha, const SymMat& x);  // y += alpha * x

// General (non-symmetric) product; result need not be symmetric.
SymMat mat_mul(const SymMat& x, const SymMat& y);

// Frobenius inner product <X, Y> = Tr(X Y) for symmetric X, Y.
double sym_inner(const SymMat& x, const SymMat& y);

// [[Re A, -Im A], [Im A, Re A]]: symmetric when A is Hermitian; eigenvalues
// of A each appear twice; A PSD iff the embedding is PSD.
SymMat real_embedding(const CMat& a);

// Inverse of real_embedding with J-averaging, so the result is exactly
// Hermitian even when X carries roundoff asymmetry.
CMat complex_from_embedding(const SymMat& x);

// Lower-triangular Cholesky factor of a symmetric PSD matrix.
// Returns false (leaving `l` unspecified) when a pivot drops below
// -kPsdEps * max(trace, 1); tiny nonnegative pivots are accepted only while
// the remaining column is numerically zero.
bool cholesky(const SymMat& s, SymMat& l);

// Solve L y = b then L^T x = y.
std::vector<double> cholesky_solve(const SymMat& l, const std::vector<double>& b);

// Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.
// Eigenvalues ascending; eigenvectors are the columns of `vectors`.
struct EigenSym {
    std::vector<double> values;
    SymMat vectors;
};
EigenSym jacobi_eigh(const SymMat& s);

// Q f(Lambda) Q^T from a precomputed eigendecomposition.
SymMat eig_apply(const EigenSym& es, double (*fn)(double));

}  // namespace wew::linalg
