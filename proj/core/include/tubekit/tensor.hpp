#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tubekit {

/// Dense row-major tensor of 64-bit reals, rank 1 to 4.
///
/// Dimension conventions used across the library:
///   temporal feature  (C, T)
///   feature map       (C, H, W)
///   feature volume    (C, T, H, W)
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> dims, double fill = 0.0);
    Tensor(std::vector<std::size_t> dims, std::vector<double> data);

    std::size_t rank() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim(std::size_t i) const { return dims_[i]; }
    std::size_t size() const { return data_.size(); }

    double& at(std::size_t i0) { return data_[i0]; }
    double at(std::size_t i0) const { return data_[i0]; }
    double& at(std::size_t i0, std::size_t i1) { return data_[i0 * dims_[1] + i1]; }
    double at(std::size_t i0, std::size_t i1) const { return data_[i0 * dims_[1] + i1]; }
    double& at(std::size_t i0, std::size_t i1, std::size_t i2) {
        return data_[(i0 * dims_[1] + i1) * dims_[2] + i2];
    }
    double at(std::size_t i0, std::size_t i1, std::size_t i2) const {
        return data_[(i0 * dims_[1] + i1) * dims_[2] + i2];
    }
    double& at(std::size_t i0, std::size_t i1, std::size_t i2, std::size_t i3) {
        return data_[((i0 * dims_[1] + i1) * dims_[2] + i2) * dims_[3] + i3];
    }
    double at(std::size_t i0, std::size_t i1, std::size_t i2, std::size_t i3) const {
        return data_[((i0 * dims_[1] + i1) * dims_[2] + i2) * dims_[3] + i3];
    }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    bool same_shape(const Tensor& other) const { return dims_ == other.dims_; }

private:
    std::vector<std::size_t> dims_;
    std::vector<double> data_;
};

enum class PaddingMode { Zero, Periodic };

/// Parameters of one convolution: kernel of shape (out_c, in_c, k_1..k_r)
/// for r spatial/temporal axes, optional per-out-channel bias, and per-axis
/// stride/padding (scalars broadcast to every axis when size 1).
struct ConvParams {
    Tensor kernel;
    std::vector<double> bias;     ///< empty means zero bias
    std::vector<long> stride;     ///< default 1
    std::vector<long> padding;    ///< default 0
    PaddingMode padding_mode = PaddingMode::Zero;
};

/// Cross-correlation (no kernel flip) of a (C_in, n_1..n_r) input with the
/// kernel, r in {1, 2, 3}. Output extent per axis is
/// floor((n + 2*pad - k) / stride) + 1.
Tensor convolve(const Tensor& input, const ConvParams& params);

/// Transposed convolution along the single temporal axis of a (C_in, T)
/// input. Output length is stride*(T - 1) + k - 2*pad.
Tensor transposed_convolve(const Tensor& input, const ConvParams& params);

/// Per-channel affine standardization over all non-channel axes:
/// (x - mean) / sqrt(var + epsilon) * scale + offset.
struct NormParams {
    std::vector<double> scale;   ///< per channel; empty means 1
    std::vector<double> offset;  ///< per channel; empty means 0
    double epsilon = 1e-5;
};

Tensor channel_norm(const Tensor& input, const NormParams& params);

Tensor relu(Tensor t);

/// conv -> channel norm -> ReLU, the block unit of the 1-D stacks. The last
/// block of a stack runs the convolution only (no norm, no activation).
struct ConvBlock {
    ConvParams conv;
    NormParams norm;
};

Tensor conv_block_forward(const Tensor& input, const ConvBlock& block, bool activate);

}  // namespace tubekit
