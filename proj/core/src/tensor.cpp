#include "tubekit/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace tubekit {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return n;
}

void check_dims(const std::vector<std::size_t>& dims) {
    if (dims.empty() || dims.size() > 4) throw std::invalid_argument("Tensor: rank must be 1..4");
    for (auto d : dims)
        if (d == 0) throw std::invalid_argument("Tensor: zero extent");
}

// Broadcast a scalar-or-per-axis parameter list to r axes.
std::array<long, 3> per_axis(const std::vector<long>& v, std::size_t r, long fallback, const char* what) {
    std::array<long, 3> out{fallback, fallback, fallback};
    if (v.empty()) return out;
    if (v.size() != 1 && v.size() != r)
        throw std::invalid_argument(std::string("convolve: ") + what + " size mismatch");
    for (std::size_t i = 0; i < r; ++i) out[i] = v.size() == 1 ? v[0] : v[i];
    return out;
}

long wrap(long i, long n) {
    i %= n;
    return i < 0 ? i + n : i;
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> dims, double fill) : dims_(std::move(dims)) {
    check_dims(dims_);
    data_.assign(product(dims_), fill);
}

Tensor::Tensor(std::vector<std::size_t> dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
    check_dims(dims_);
    if (data_.size() != product(dims_)) throw std::invalid_argument("Tensor: data length mismatch");
}

Tensor convolve(const Tensor& input, const ConvParams& params) {
    const std::size_t r = input.rank() - 1;  // spatial/temporal axes
    if (r < 1 || r > 3) throw std::invalid_argument("convolve: input rank must be 2..4");
    const Tensor& k = params.kernel;
    if (k.rank() != r + 2) throw std::invalid_argument("convolve: kernel rank must be input rank + 1");
    const std::size_t out_c = k.dim(0);
    const std::size_t in_c = k.dim(1);
    if (in_c != input.dim(0)) throw std::invalid_argument("convolve: channel mismatch");
    if (!params.bias.empty() && params.bias.size() != out_c)
        throw std::invalid_argument("convolve: bias size mismatch");

    const auto stride = per_axis(params.stride, r, 1, "stride");
    const auto pad = per_axis(params.padding, r, 0, "padding");

    std::array<long, 3> in_ext{1, 1, 1}, kern{1, 1, 1}, out_ext{1, 1, 1};
    for (std::size_t a = 0; a < r; ++a) {
        in_ext[a] = static_cast<long>(input.dim(a + 1));
        kern[a] = static_cast<long>(k.dim(a + 2));
        if (stride[a] < 1 || pad[a] < 0) throw std::invalid_argument("convolve: bad stride/padding");
        out_ext[a] = (in_ext[a] + 2 * pad[a] - kern[a]) / stride[a] + 1;
        if (in_ext[a] + 2 * pad[a] < kern[a] || out_ext[a] < 1)
            throw std::invalid_argument("convolve: kernel does not fit input");
    }

    std::vector<std::size_t> out_dims{out_c};
    for (std::size_t a = 0; a < r; ++a) out_dims.push_back(static_cast<std::size_t>(out_ext[a]));
    Tensor out(out_dims);

    const bool periodic = params.padding_mode == PaddingMode::Periodic;
    const std::span<const double> in = input.data();
    const std::span<const double> kd = k.data();
    std::span<double> od = out.data();

    const long in_plane = in_ext[1] * in_ext[2];
    const long out_plane = out_ext[1] * out_ext[2];
    const long k_plane = kern[1] * kern[2];

    for (std::size_t oc = 0; oc < out_c; ++oc) {
        const double bias = params.bias.empty() ? 0.0 : params.bias[oc];
        for (long o0 = 0; o0 < out_ext[0]; ++o0)
            for (long o1 = 0; o1 < out_ext[1]; ++o1)
                for (long o2 = 0; o2 < out_ext[2]; ++o2) {
                    double acc = bias;
                    for (std::size_t ic = 0; ic < in_c; ++ic) {
                        const double* in_ch = in.data() + ic * static_cast<std::size_t>(in_ext[0] * in_plane);
                        const double* k_ch =
                            kd.data() + (oc * in_c + ic) * static_cast<std::size_t>(kern[0] * k_plane);
                        for (long j0 = 0; j0 < kern[0]; ++j0)
                            for (long j1 = 0; j1 < kern[1]; ++j1)
                                for (long j2 = 0; j2 < kern[2]; ++j2) {
                                    long i0 = o0 * stride[0] + j0 - pad[0];
                                    long i1 = o1 * stride[1] + j1 - pad[1];
                                    long i2 = o2 * stride[2] + j2 - pad[2];
                                    if (periodic) {
                                        i0 = wrap(i0, in_ext[0]);
                                        i1 = wrap(i1, in_ext[1]);
                                        i2 = wrap(i2, in_ext[2]);
                                    } else if (i0 < 0 || i0 >= in_ext[0] || i1 < 0 || i1 >= in_ext[1] ||
                                               i2 < 0 || i2 >= in_ext[2]) {
                                        continue;  // zero padding
                                    }
                                    acc += in_ch[(i0 * in_ext[1] + i1) * in_ext[2] + i2] *
                                           k_ch[(j0 * kern[1] + j1) * kern[2] + j2];
                                }
                    }
                    od[oc * static_cast<std::size_t>(out_ext[0] * out_plane) +
                       static_cast<std::size_t>((o0 * out_ext[1] + o1) * out_ext[2] + o2)] = acc;
                }
    }
    return out;
}

Tensor transposed_convolve(const Tensor& input, const ConvParams& params) {
    if (input.rank() != 2) throw std::invalid_argument("transposed_convolve: input must be (C, T)");
    const Tensor& k = params.kernel;
    if (k.rank() != 3) throw std::invalid_argument("transposed_convolve: kernel must be (out_c, in_c, k)");
    const std::size_t out_c = k.dim(0);
    const std::size_t in_c = k.dim(1);
    const long kt = static_cast<long>(k.dim(2));
    if (in_c != input.dim(0)) throw std::invalid_argument("transposed_convolve: channel mismatch");
    if (!params.bias.empty() && params.bias.size() != out_c)
        throw std::invalid_argument("transposed_convolve: bias size mismatch");
    const long stride = params.stride.empty() ? 1 : params.stride[0];
    const long pad = params.padding.empty() ? 0 : params.padding[0];
    if (stride < 1 || pad < 0) throw std::invalid_argument("transposed_convolve: bad stride/padding");

    const long in_t = static_cast<long>(input.dim(1));
    const long out_t = stride * (in_t - 1) + kt - 2 * pad;
    if (out_t < 1) throw std::invalid_argument("transposed_convolve: empty output");

    Tensor out({out_c, static_cast<std::size_t>(out_t)});
    for (std::size_t oc = 0; oc < out_c; ++oc) {
        const double bias = params.bias.empty() ? 0.0 : params.bias[oc];
        for (long o = 0; o < out_t; ++o) out.at(oc, static_cast<std::size_t>(o)) = bias;
        for (std::size_t ic = 0; ic < in_c; ++ic)
            for (long i = 0; i < in_t; ++i)
                for (long j = 0; j < kt; ++j) {
                    const long o = i * stride + j - pad;
                    if (o < 0 || o >= out_t) continue;
                    out.at(oc, static_cast<std::size_t>(o)) +=
                        input.at(ic, static_cast<std::size_t>(i)) *
                        k.at(oc, ic, static_cast<std::size_t>(j));
                }
    }
    return out;
}

Tensor channel_norm(const Tensor& input, const NormParams& params) {
    const std::size_t c = input.dim(0);
    const std::size_t per = input.size() / c;
    if (!params.scale.empty() && params.scale.size() != c)
        throw std::invalid_argument("channel_norm: scale size mismatch");
    if (!params.offset.empty() && params.offset.size() != c)
        throw std::invalid_argument("channel_norm: offset size mismatch");
    Tensor out(input.dims());
    const auto in = input.data();
    auto od = out.data();
    for (std::size_t ch = 0; ch < c; ++ch) {
        const double* src = in.data() + ch * per;
        double mean = 0.0;
        for (std::size_t i = 0; i < per; ++i) mean += src[i];
        mean /= static_cast<double>(per);
        double var = 0.0;
        for (std::size_t i = 0; i < per; ++i) var += (src[i] - mean) * (src[i] - mean);
        var /= static_cast<double>(per);
        const double inv = 1.0 / std::sqrt(var + params.epsilon);
        const double scale = params.scale.empty() ? 1.0 : params.scale[ch];
        const double offset = params.offset.empty() ? 0.0 : params.offset[ch];
        for (std::size_t i = 0; i < per; ++i) od[ch * per + i] = (src[i] - mean) * inv * scale + offset;
    }
    return out;
}

Tensor relu(Tensor t) {
    for (double& v : t.data()) v = std::max(v, 0.0);
    return t;
}

Tensor conv_block_forward(const Tensor& input, const ConvBlock& block, bool activate) {
    Tensor out = convolve(input, block.conv);
    if (activate) out = relu(channel_norm(out, block.norm));
    return out;
}

}  // namespace tubekit
