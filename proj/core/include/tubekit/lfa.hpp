#pragma once

#include <span>
#include <vector>

#include "tubekit/tensor.hpp"

namespace tubekit {

/// T_f x T_f attention map. Entry (t, k) weights how much of input slice k
/// flows into output slice t. lfa_weight_map always produces entries in
/// (0, 1); constructing one directly is unchecked so tests can bypass the
/// sigmoid (e.g. an all-zero map).
struct WeightMap {
    std::size_t t_f = 0;
    std::vector<double> data;  ///< row-major, t_f * t_f

    WeightMap() = default;
    WeightMap(std::size_t n, double fill = 0.0) : t_f(n), data(n * n, fill) {}

    double at(std::size_t t, std::size_t k) const { return data[t * t_f + k]; }
    double& at(std::size_t t, std::size_t k) { return data[t * t_f + k]; }
};

/// Maps the pyramid output f_p (C, T_f) through a stack of 1-D conv blocks
/// (norm + ReLU on all but the last) and a sigmoid. The stack must end with
/// T_f output channels and preserve T_f, yielding the T_f x T_f map; entry
/// (t, k) reads channel k at temporal position t.
WeightMap lfa_weight_map(const Tensor& f_p, std::span<const ConvBlock> blocks);

/// Residual long-term recombination of a (C, T, H, W) volume:
///   out[c,t,h,w] = f[c,t,h,w] + (1/T_f) * sum_k f[c,k,h,w] * s(t,k).
/// Identity when s is the zero map. Requires s.t_f == T.
Tensor lfa_augment(const Tensor& f, const WeightMap& s);

}  // namespace tubekit
