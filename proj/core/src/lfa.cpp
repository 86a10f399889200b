#include "tubekit/lfa.hpp"

#include <cmath>
#include <stdexcept>

namespace tubekit {

WeightMap lfa_weight_map(const Tensor& f_p, std::span<const ConvBlock> blocks) {
    if (f_p.rank() != 2) throw std::invalid_argument("lfa_weight_map: expected (C, T_f)");
    if (blocks.empty()) throw std::invalid_argument("lfa_weight_map: need at least one conv block");
    const std::size_t t_f = f_p.dim(1);

    Tensor cur = f_p;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const bool last = i + 1 == blocks.size();
        cur = conv_block_forward(cur, blocks[i], /*activate=*/!last);
    }
    if (cur.dim(0) != t_f || cur.dim(1) != t_f)
        throw std::invalid_argument("lfa_weight_map: stack must produce a (T_f, T_f) map");

    WeightMap s(t_f);
    for (std::size_t t = 0; t < t_f; ++t)
        for (std::size_t k = 0; k < t_f; ++k) s.at(t, k) = 1.0 / (1.0 + std::exp(-cur.at(k, t)));
    return s;
}

Tensor lfa_augment(const Tensor& f, const WeightMap& s) {
    if (f.rank() != 4) throw std::invalid_argument("lfa_augment: expected (C, T, H, W)");
    const std::size_t c = f.dim(0), t_f = f.dim(1), h = f.dim(2), w = f.dim(3);
    if (s.t_f != t_f) throw std::invalid_argument("lfa_augment: weight map size != temporal extent");

    Tensor out(f.dims());
    const double inv = 1.0 / static_cast<double>(t_f);
    for (std::size_t ci = 0; ci < c; ++ci)
        for (std::size_t ti = 0; ti < t_f; ++ti)
            for (std::size_t hi = 0; hi < h; ++hi)
                for (std::size_t wi = 0; wi < w; ++wi) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < t_f; ++k) acc += f.at(ci, k, hi, wi) * s.at(ti, k);
                    out.at(ci, ti, hi, wi) = f.at(ci, ti, hi, wi) + inv * acc;
                }
    return out;
}

}  // namespace tubekit
