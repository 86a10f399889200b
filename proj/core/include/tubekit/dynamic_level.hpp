#pragma once

#include "tubekit/tube.hpp"

namespace tubekit {

struct DynamicLevelConfig {
    double epsilon = 0.7;  ///< reconstruction IoU threshold, (0, 1]
    double gamma = 0.1;    ///< overestimation suppression factor, (0, 1]
    int n_max = 10;        ///< sample-count cap
    int n_min = 2;         ///< sample-count floor (interpolation needs two points)
};

void require_valid(const DynamicLevelConfig& cfg);

/// Smallest d in 1..T such that interpolating the d uniform samples of the
/// tube reconstructs it to mean per-frame IoU >= epsilon. Falls back to T
/// when no d qualifies (only possible for epsilon > attainable IoU, since
/// reconstruction at d = T is exact).
long ground_truth_dynamic_level(const Tube& tube, double epsilon);

/// Mean per-frame IoU between a tube and its reconstruction from d uniform
/// samples; the quantity Algorithm-style level search thresholds against.
double reconstruction_iou(const Tube& tube, long d);

struct LossGrad {
    double loss = 0.0;
    double grad = 0.0;  ///< d loss / d d_hat
};

/// Weighted smooth-L1 on x = d - d_hat: quadratic inside |x| < 1, linear
/// outside, and the x < 0 (overestimation) branch scaled by gamma so that
/// undersampling is penalized 1/gamma times harder.
LossGrad dynamic_level_loss(double d, double d_hat, double gamma);

/// Inference-time sample count: min(max(ceil(d_hat), n_min), n_max).
int clamp_sample_count(double d_hat, const DynamicLevelConfig& cfg);

}  // namespace tubekit
