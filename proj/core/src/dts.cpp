#include "tubekit/dts.hpp"

#include <cmath>
#include <stdexcept>

namespace tubekit {

std::vector<double> dts_sample_positions(const TemporalProposal& proposal, std::size_t t_f, int n) {
    if (n < 2) throw std::invalid_argument("dts_sample_positions: need n >= 2");
    if (t_f == 0) throw std::invalid_argument("dts_sample_positions: empty temporal extent");
    if (!(proposal.s >= 0.0 && proposal.e <= 1.0 && proposal.s <= proposal.e))
        throw std::invalid_argument("dts_sample_positions: proposal must satisfy 0 <= s <= e <= 1");
    const double span = static_cast<double>(t_f - 1);
    const double q_s = proposal.s * span;
    const double q_e = proposal.e * span;
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        q[static_cast<std::size_t>(i)] = q_s + (q_e - q_s) * static_cast<double>(i) / static_cast<double>(n - 1);
    return q;
}

std::vector<Tensor> dts_sample(const Tensor& f_hat, const TemporalProposal& proposal, int n) {
    if (f_hat.rank() != 4) throw std::invalid_argument("dts_sample: expected (C, T, H, W)");
    const std::size_t c = f_hat.dim(0), t_f = f_hat.dim(1), h = f_hat.dim(2), w = f_hat.dim(3);
    const auto positions = dts_sample_positions(proposal, t_f, n);

    std::vector<Tensor> out;
    out.reserve(positions.size());
    for (double q : positions) {
        Tensor map({c, h, w});
        // Tent kernel touches at most floor(q) and floor(q)+1.
        const long k0 = static_cast<long>(std::floor(q));
        for (long k = k0; k <= k0 + 1; ++k) {
            if (k < 0 || k >= static_cast<long>(t_f)) continue;
            const double weight = 1.0 - std::abs(q - static_cast<double>(k));
            if (weight <= 0.0) continue;
            for (std::size_t ci = 0; ci < c; ++ci)
                for (std::size_t hi = 0; hi < h; ++hi)
                    for (std::size_t wi = 0; wi < w; ++wi)
                        map.at(ci, hi, wi) += weight * f_hat.at(ci, static_cast<std::size_t>(k), hi, wi);
        }
        out.push_back(std::move(map));
    }
    return out;
}

}  // namespace tubekit
