#include "tubekit/dynamic_level.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tubekit {

void require_valid(const DynamicLevelConfig& cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0))
        throw std::invalid_argument("DynamicLevelConfig: epsilon must be in (0, 1]");
    if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0))
        throw std::invalid_argument("DynamicLevelConfig: gamma must be in (0, 1]");
    if (cfg.n_min < 2 || cfg.n_max < cfg.n_min)
        throw std::invalid_argument("DynamicLevelConfig: need n_max >= n_min >= 2");
}

double reconstruction_iou(const Tube& tube, long d) {
    require_valid_tube(tube);
    const long t = tube.length();
    const auto idx = uniform_sample_indices(t, d);
    std::vector<BoxSample> samples;
    samples.reserve(idx.size());
    for (long k : idx) samples.push_back({k, tube.boxes[static_cast<std::size_t>(k - 1)]});
    const auto rec = interpolate_box_sequence(samples, 1, t);
    double r = 0.0;
    for (long f = 1; f <= t; ++f)
        r += box_iou(tube.boxes[static_cast<std::size_t>(f - 1)], rec[static_cast<std::size_t>(f - 1)]);
    return r / static_cast<double>(t);
}

long ground_truth_dynamic_level(const Tube& tube, double epsilon) {
    require_valid_tube(tube);
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("ground_truth_dynamic_level: epsilon must be in (0, 1]");
    const long t = tube.length();
    for (long d = 1; d <= t; ++d) {
        if (reconstruction_iou(tube, d) >= epsilon) return d;
    }
    return t;
}

LossGrad dynamic_level_loss(double d, double d_hat, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("dynamic_level_loss: gamma must be in (0, 1]");
    const double x = d - d_hat;
    double base, dbase_dx;
    if (std::abs(x) < 1.0) {
        base = 0.5 * x * x;
        dbase_dx = x;
    } else {
        base = std::abs(x) - 0.5;
        dbase_dx = x > 0.0 ? 1.0 : -1.0;
    }
    const double weight = x >= 0.0 ? 1.0 : gamma;
    // d x / d d_hat = -1
    return {weight * base, -weight * dbase_dx};
}

int clamp_sample_count(double d_hat, const DynamicLevelConfig& cfg) {
    require_valid(cfg);
    if (!std::isfinite(d_hat)) throw std::invalid_argument("clamp_sample_count: d_hat must be finite");
    const double up = std::ceil(d_hat);
    long n = up <= static_cast<double>(cfg.n_min) ? cfg.n_min : static_cast<long>(up);
    n = std::min<long>(n, cfg.n_max);
    return static_cast<int>(std::max<long>(n, cfg.n_min));
}

}  // namespace tubekit
