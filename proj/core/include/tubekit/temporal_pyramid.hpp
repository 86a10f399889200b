#pragma once

#include <array>
#include <span>
#include <vector>

#include "tubekit/tensor.hpp"
#include "tubekit/tube.hpp"

namespace tubekit {

/// Squeeze a (C, T, H, W) volume to (C, T) by averaging over H and W.
Tensor spatial_avg_pool(const Tensor& volume);

struct PyramidResult {
    std::vector<Tensor> levels;  ///< upsample-path features, smallest T first
    Tensor f_p;                  ///< last upsample level, temporal size T_f
};

/// Two-path temporal pyramid over a (C, T) feature: each down conv must
/// halve T (stride 2), each up deconv must double it back. T must be
/// divisible by 2^depth. With empty paths the input passes through as f_p.
PyramidResult build_temporal_pyramid(const Tensor& f, std::span<const ConvParams> down,
                                     std::span<const ConvParams> up);

/// Down/up parameter pair that makes the pyramid an exact identity on f_p:
/// the down convs split even/odd phases into doubled channels, the up
/// deconvs reassemble them. Useful as an untrained default.
struct PyramidParams {
    std::vector<ConvParams> down;
    std::vector<ConvParams> up;
};

PyramidParams perfect_reconstruction_pyramid_params(std::size_t channels, std::size_t depth);

struct TemporalAnchor {
    double center = 0.5;  ///< normalized
    double length = 1.0;  ///< normalized
};

/// One anchor per (temporal position, scale): centers at (i + 0.5) / t_len.
std::vector<TemporalAnchor> make_temporal_anchors(std::size_t t_len, std::span<const double> scales);

/// Decode per-anchor head outputs into proposals:
///   center' = center + dc * length,  length' = length * exp(dl),
///   (s, e) clipped to [0, 1], actioness = sigmoid(score).
std::vector<TemporalProposal> decode_temporal_proposals(std::span<const TemporalAnchor> anchors,
                                                        std::span<const double> scores,
                                                        std::span<const std::array<double, 2>> offsets);

/// Run a (score, dc, dl)-per-anchor 1-D conv head over a pyramid level and
/// decode. Head output must have 3 * scales channels and preserve T.
std::vector<TemporalProposal> propose_from_level(const Tensor& level, const ConvParams& head,
                                                 std::span<const double> scales);

}  // namespace tubekit
