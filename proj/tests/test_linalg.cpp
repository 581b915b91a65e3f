#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wew/linalg.hpp"
#include "wew/rng.hpp"

using namespace wew;
using namespace wew::linalg;

namespace {

CVec random_cvec(Rng& rng, std::size_t dim) {
    CVec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = cplx{rng.gaussian(), rng.gaussian()};
    return v;
}

CMat random_hermitian(Rng& rng, std::size_t dim) {
    CMat m(dim, true);
    for (std::size_t i = 0; i < dim; ++i) {
        m.at(i, i) = cplx{rng.gaussian(), 0.0};
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cplx z{rng.gaussian(), rng.gaussian()};
            m.at(i, j) = z;
            m.at(j, i) = std::conj(z);
        }
    }
    return m;
}

CMat random_psd(Rng& rng, std::size_t dim) {
    // G G^H + small ridge
    CMat g(dim, false);
    for (auto& z : g.a) z = cplx{rng.gaussian(), rng.gaussian()};
    CMat m(dim, true);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k) s += g.at(i, k) * std::conj(g.at(j, k));
            m.at(i, j) = s;
        }
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) += 0.01;
    return m;
}

double fro_diff(const CMat& a, const CMat& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.a.size(); ++i) s += std::norm(a.a[i] - b.a[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("orth_projector annihilates an axis vector") {
    CVec h{cplx{0, 0}, cplx{1, 0}};
    CMat p = orth_projector(h);
    CHECK(p.at(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(p.at(0, 1)) == doctest::Approx(0.0));
    CHECK(std::abs(p.at(1, 1)) == doctest::Approx(0.0));
}

TEST_CASE("orth_projector of the diagonal direction") {
    const double r = 1.0 / std::sqrt(2.0);
    CVec h{cplx{r, 0}, cplx{r, 0}};
    CMat p = orth_projector(h);
    CHECK(p.at(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.at(0, 1).real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(p.at(1, 0).real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(p.at(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("orth_projector rejects the zero vector") {
    CVec h{cplx{0, 0}, cplx{0, 0}};
    CHECK_THROWS_AS(orth_projector(h), ZeroVectorError);
}

TEST_CASE("orth_projector kills h and is idempotent on random inputs") {
    Rng rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t dim = 2 + (trial % 3);
        CVec h = random_cvec(rng, dim);
        if (h.norm() < 1e-6) continue;
        CMat p = orth_projector(h);
        CVec ph = matvec(p, h);
        CHECK(ph.norm() <= 1e-10 * h.norm());
        CMat pp(dim, true);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                cplx s{0, 0};
                for (std::size_t k = 0; k < dim; ++k) s += p.at(i, k) * p.at(k, j);
                pp.at(i, j) = s;
            }
        CHECK(fro_diff(pp, p) <= 1e-10);
    }
}

TEST_CASE("logdet2_psd on identity and scaled identity") {
    CHECK(logdet2_psd(CMat::identity(2)) == doctest::Approx(0.0));
    CMat d = CMat::identity(2);
    d.at(0, 0) = 2.0;
    d.at(1, 1) = 2.0;
    CHECK(logdet2_psd(d) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("logdet2_psd matches the rank-one update closed form") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        CVec h1 = random_cvec(rng, 2);
        CVec h2 = random_cvec(rng, 2);
        const double c1 = rng.uniform() * 3.0;
        const double c2 = rng.uniform() * 3.0;
        CMat a = CMat::identity(2);
        a = add(a, scale(outer(h1), c1));
        a = add(a, scale(outer(h2), c2));
        const double expect = std::log2((1.0 + c1 * h1.norm_sq()) * (1.0 + c2 * h2.norm_sq()) -
                                        c1 * c2 * std::norm(hdot(h1, h2)));
        CHECK(logdet2_psd(a) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("logdet2_psd agrees with the eigenvalue-product oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = (trial % 2) ? 4 : 2;
        CMat a = random_psd(rng, dim);
        const auto es = jacobi_eigh(real_embedding(a));
        double oracle = 0.0;  // embedding doubles each eigenvalue
        for (double v : es.values) oracle += 0.5 * std::log2(v);
        CHECK(logdet2_psd(a) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("logdet2_psd rejects indefinite input") {
    CMat a = CMat::identity(2);
    a.at(1, 1) = -1.0;
    CHECK_THROWS_AS(logdet2_psd(a), NotPsdError);
}

TEST_CASE("real_embedding of the identity") {
    SymMat e = real_embedding(CMat::identity(2));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(e.at(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("real_embedding of the Pauli-Y-like matrix") {
    CMat a(2, true);
    a.at(0, 1) = cplx{0, -1};
    a.at(1, 0) = cplx{0, 1};
    SymMat e = real_embedding(a);
    const double expect[4][4] = {
        {0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(e.at(i, j) == doctest::Approx(expect[i][j]));
    auto es = jacobi_eigh(e);
    CHECK(es.values[0] == doctest::Approx(-1.0));
    CHECK(es.values[1] == doctest::Approx(-1.0));
    CHECK(es.values[2] == doctest::Approx(1.0));
    CHECK(es.values[3] == doctest::Approx(1.0));
}

TEST_CASE("real_embedding trace and PSD equivalence") {
    Rng rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t dim = 2 + (trial % 3);
        CMat a = random_hermitian(rng, dim);
        SymMat e = real_embedding(a);
        CHECK(e.trace() == doctest::Approx(2.0 * a.trace_real()).epsilon(1e-12));
        bool complex_psd = true;
        try {
            logdet2_psd(a);
        } catch (const NotPsdError&) {
            complex_psd = false;
        }
        SymMat l;
        const bool embed_psd = cholesky(e, l);
        CHECK(complex_psd == embed_psd);
    }
}

TEST_CASE("jacobi_eigh reconstructs the matrix") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + (trial % 7);
        SymMat s(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double v = rng.gaussian();
                s.at(i, j) = v;
                s.at(j, i) = v;
            }
        auto es = jacobi_eigh(s);
        // Q Lambda Q^T == S
        SymMat rec(n);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    rec.at(i, j) += es.vectors.at(i, c) * es.values[c] * es.vectors.at(j, c);
        double diff = 0.0;
        for (std::size_t i = 0; i < n * n; ++i) diff = std::max(diff, std::abs(rec.a[i] - s.a[i]));
        CHECK(diff <= 1e-10 * std::max(1.0, s.fro_norm()));
        for (std::size_t c = 1; c < n; ++c) CHECK(es.values[c - 1] <= es.values[c]);
    }
}

TEST_CASE("cholesky solve round trip") {
    Rng rng(5);
    SymMat s(5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i; j < 5; ++j) {
            const double v = rng.gaussian() * 0.3;
            s.at(i, j) = v;
            s.at(j, i) = v;
        }
    for (std::size_t i = 0; i < 5; ++i) s.at(i, i) += 4.0;
    SymMat l;
    REQUIRE(cholesky(s, l));
    std::vector<double> b{1, -2, 3, 0.5, -0.25};
    auto x = cholesky_solve(l, b);
    for (std::size_t i = 0; i < 5; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < 5; ++j) r += s.at(i, j) * x[j];
        CHECK(r == doctest::Approx(b[i]).epsilon(1e-10));
    }
}
