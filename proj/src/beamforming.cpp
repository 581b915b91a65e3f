#include "wew/beamforming.hpp"

#include <cmath>

#include "wew/errors.hpp"

namespace wew::beamforming {

using linalg::cplx;
using linalg::CVec;

double collinearity(const CVec& h1, const CVec& h2) {
    const double n1 = h1.norm_sq();
    const double n2 = h2.norm_sq();
    const double floor1 = linalg::kZeroVectorEps * static_cast<double>(h1.dim());
    if (std::sqrt(n1) <= floor1 || std::sqrt(n2) <= floor1) throw ZeroVectorError{};
    return std::norm(linalg::hdot(h1, h2)) / (n1 * n2);
}

namespace {

// Multiply by a unit scalar so the largest-magnitude entry is real positive.
void fix_phase(CVec& w) {
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < w.dim(); ++i) {
        const double m = std::abs(w[i]);
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    if (best <= 0.0) return;
    const cplx rot = std::conj(w[imax]) / best;
    for (auto& z : w.e) z *= rot;
    w[imax] = cplx{std::abs(w[imax]), 0.0};
}

CVec project_and_normalize(const linalg::CMat& proj, const CVec& h) {
    CVec w = linalg::matvec(proj, h);
    const double nrm = w.norm();
    if (nrm * nrm <= kCollinearEps * h.norm_sq()) throw CollinearChannelsError{};
    for (auto& z : w.e) z /= nrm;
    fix_phase(w);
    return w;
}

}  // namespace

BeamformerSet zf_beamformers(const CVec& h1, const CVec& h2) {
    BeamformerSet set;
    set.collinearity = collinearity(h1, h2);
    if (1.0 - set.collinearity <= kCollinearEps) throw CollinearChannelsError{};
    set.w1 = project_and_normalize(linalg::orth_projector(h2), h1);
    set.w2 = project_and_normalize(linalg::orth_projector(h1), h2);
    set.gain1 = std::norm(linalg::hdot(h1, set.w1));
    set.gain2 = std::norm(linalg::hdot(h2, set.w2));
    return set;
}

std::pair<double, double> effective_gains(const BeamformerSet& set, const CVec& h1,
                                          const CVec& h2) {
    return {std::norm(linalg::hdot(h1, set.w1)), std::norm(linalg::hdot(h2, set.w2))};
}

}  // namespace wew::beamforming
