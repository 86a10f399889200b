#pragma once

#include <vector>

#include "tubekit/tensor.hpp"
#include "tubekit/tube.hpp"

namespace tubekit {

/// Sample positions of a proposal mapped onto 0-based feature-index
/// coordinates: q_i = s' + (e' - s') * (i - 1) / (n - 1), i = 1..n, where
/// s' = s * (T_f - 1) and e' = e * (T_f - 1). A degenerate proposal
/// (s == e) puts every sample at s'.
std::vector<double> dts_sample_positions(const TemporalProposal& proposal, std::size_t t_f, int n);

/// Dynamic temporal sampling: n 2-D feature maps (C, H, W) cut from a
/// (C, T, H, W) volume by linear interpolation along time with the tent
/// kernel max(0, 1 - |q - k|). Each output value is a convex combination of
/// at most two adjacent temporal slices. Requires n >= 2.
std::vector<Tensor> dts_sample(const Tensor& f_hat, const TemporalProposal& proposal, int n);

}  // namespace tubekit
