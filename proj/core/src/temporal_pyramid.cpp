#include "tubekit/temporal_pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tubekit {

Tensor spatial_avg_pool(const Tensor& volume) {
    if (volume.rank() != 4) throw std::invalid_argument("spatial_avg_pool: expected (C, T, H, W)");
    const std::size_t c = volume.dim(0), t = volume.dim(1), h = volume.dim(2), w = volume.dim(3);
    Tensor out({c, t});
    for (std::size_t ci = 0; ci < c; ++ci)
        for (std::size_t ti = 0; ti < t; ++ti) {
            double acc = 0.0;
            for (std::size_t hi = 0; hi < h; ++hi)
                for (std::size_t wi = 0; wi < w; ++wi) acc += volume.at(ci, ti, hi, wi);
            out.at(ci, ti) = acc / static_cast<double>(h * w);
        }
    return out;
}

PyramidResult build_temporal_pyramid(const Tensor& f, std::span<const ConvParams> down,
                                     std::span<const ConvParams> up) {
    if (f.rank() != 2) throw std::invalid_argument("build_temporal_pyramid: expected (C, T)");
    if (down.size() != up.size())
        throw std::invalid_argument("build_temporal_pyramid: down/up depth mismatch");

    PyramidResult result;
    if (down.empty()) {
        result.levels.push_back(f);
        result.f_p = f;
        return result;
    }

    Tensor cur = f;
    for (const auto& params : down) {
        if (cur.dim(1) % 2 != 0)
            throw std::invalid_argument("build_temporal_pyramid: T must be divisible at every level");
        Tensor next = convolve(cur, params);
        if (next.dim(1) != cur.dim(1) / 2)
            throw std::invalid_argument("build_temporal_pyramid: down level must halve T");
        cur = std::move(next);
    }
    for (const auto& params : up) {
        Tensor next = transposed_convolve(cur, params);
        if (next.dim(1) != cur.dim(1) * 2)
            throw std::invalid_argument("build_temporal_pyramid: up level must double T");
        cur = std::move(next);
        result.levels.push_back(cur);
    }
    result.f_p = result.levels.back();
    return result;
}

PyramidParams perfect_reconstruction_pyramid_params(std::size_t channels, std::size_t depth) {
    PyramidParams params;
    std::size_t c = channels;
    for (std::size_t level = 0; level < depth; ++level) {
        // Down: (c) -> (2c), kernel k=2 stride 2; channel i keeps phase 0 of
        // input channel i, channel c+i keeps phase 1.
        ConvParams dn;
        dn.kernel = Tensor({2 * c, c, 2});
        dn.stride = {2};
        for (std::size_t i = 0; i < c; ++i) {
            dn.kernel.at(i, i, 0) = 1.0;
            dn.kernel.at(c + i, i, 1) = 1.0;
        }
        params.down.push_back(std::move(dn));
        c *= 2;
    }
    for (std::size_t level = 0; level < depth; ++level) {
        // Up: (c) -> (c/2), transposed k=2 stride 2 re-interleaving phases.
        ConvParams upp;
        const std::size_t half = c / 2;
        upp.kernel = Tensor({half, c, 2});
        upp.stride = {2};
        for (std::size_t i = 0; i < half; ++i) {
            upp.kernel.at(i, i, 0) = 1.0;
            upp.kernel.at(i, half + i, 1) = 1.0;
        }
        params.up.push_back(std::move(upp));
        c = half;
    }
    return params;
}

std::vector<TemporalAnchor> make_temporal_anchors(std::size_t t_len, std::span<const double> scales) {
    if (t_len == 0) throw std::invalid_argument("make_temporal_anchors: empty level");
    std::vector<TemporalAnchor> anchors;
    anchors.reserve(t_len * scales.size());
    for (std::size_t i = 0; i < t_len; ++i)
        for (double s : scales)
            anchors.push_back({(static_cast<double>(i) + 0.5) / static_cast<double>(t_len), s});
    return anchors;
}

std::vector<TemporalProposal> decode_temporal_proposals(std::span<const TemporalAnchor> anchors,
                                                        std::span<const double> scores,
                                                        std::span<const std::array<double, 2>> offsets) {
    if (scores.size() != anchors.size() || offsets.size() != anchors.size())
        throw std::invalid_argument("decode_temporal_proposals: per-anchor arrays must match");
    std::vector<TemporalProposal> out;
    out.reserve(anchors.size());
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const double center = anchors[i].center + offsets[i][0] * anchors[i].length;
        const double length = anchors[i].length * std::exp(offsets[i][1]);
        TemporalProposal p;
        p.s = std::clamp(center - length / 2, 0.0, 1.0);
        p.e = std::clamp(center + length / 2, 0.0, 1.0);
        p.actioness = 1.0 / (1.0 + std::exp(-scores[i]));
        out.push_back(p);
    }
    return out;
}

std::vector<TemporalProposal> propose_from_level(const Tensor& level, const ConvParams& head,
                                                 std::span<const double> scales) {
    const Tensor raw = convolve(level, head);
    if (raw.dim(0) != 3 * scales.size())
        throw std::invalid_argument("propose_from_level: head must emit 3 channels per scale");
    if (raw.dim(1) != level.dim(1))
        throw std::invalid_argument("propose_from_level: head must preserve T");
    const auto anchors = make_temporal_anchors(level.dim(1), scales);
    std::vector<double> scores;
    std::vector<std::array<double, 2>> offsets;
    scores.reserve(anchors.size());
    offsets.reserve(anchors.size());
    for (std::size_t t = 0; t < raw.dim(1); ++t)
        for (std::size_t a = 0; a < scales.size(); ++a) {
            scores.push_back(raw.at(3 * a, t));
            offsets.push_back({raw.at(3 * a + 1, t), raw.at(3 * a + 2, t)});
        }
    return decode_temporal_proposals(anchors, scores, offsets);
}

}  // namespace tubekit
