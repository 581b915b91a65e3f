#pragma once

#include <utility>

#include "wew/linalg.hpp"

namespace wew::beamforming {

// Channels closer to parallel than this cannot be zero-forced.
inline constexpr double kCollinearEps = 1e-8;

struct BeamformerSet {
    linalg::CVec w1, w2;  // unit norm, h2^H w1 = h1^H w2 = 0
    double gain1 = 0.0;   // |h1^H w1|^2
    double gain2 = 0.0;
    double collinearity = 0.0;  // |h1^H h2|^2 / (|h1|^2 |h2|^2)
};

// |h1^H h2|^2 / (|h1|^2 |h2|^2), in [0, 1]. Throws ZeroVectorError on
// degenerate inputs.
double collinearity(const linalg::CVec& h1, const linalg::CVec& h2);

// w_i = normalize((I - h_j (h_j^H h_j)^{-1} h_j^H) h_i), with the global phase
// fixed so the largest-magnitude entry is real positive. Throws
// CollinearChannelsError when 1 - collinearity <= kCollinearEps.
BeamformerSet zf_beamformers(const linalg::CVec& h1, const linalg::CVec& h2);

// (|h1^H w1|^2, |h2^H w2|^2)
std::pair<double, double> effective_gains(const BeamformerSet& set, const linalg::CVec& h1,
                                          const linalg::CVec& h2);

}  // namespace wew::beamforming
