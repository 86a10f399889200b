#pragma once

#include <span>
#include <vector>

namespace tubekit {

/// Axis-aligned box in center/size form, frame-pixel or normalized units.
struct BoundingBox {
    double x = 0.0;  ///< center x
    double y = 0.0;  ///< center y
    double w = 0.0;  ///< width, > 0
    double h = 0.0;  ///< height, > 0
};

bool box_is_valid(const BoundingBox& b);

/// Throws std::invalid_argument if the box has non-finite fields or
/// non-positive extents.
void require_valid_box(const BoundingBox& b);

/// Intersection-over-union of two boxes. Symmetric, in [0, 1], 1 iff equal.
double box_iou(const BoundingBox& a, const BoundingBox& b);

/// One action instance: class label, inclusive 1-based frame interval and a
/// dense box per frame. score is 0 for ground truth.
struct Tube {
    int class_id = 0;
    long start = 1;
    long end = 1;
    std::vector<BoundingBox> boxes;
    double score = 0.0;

    long length() const { return end - start + 1; }
    const BoundingBox& box_at(long frame) const { return boxes[static_cast<std::size_t>(frame - start)]; }
};

void require_valid_tube(const Tube& t);

struct TemporalProposal {
    double s = 0.0;             ///< normalized start, [0, 1]
    double e = 0.0;             ///< normalized end, s <= e <= 1
    double actioness = 0.0;     ///< confidence, [0, 1]
    double dynamic_level = 1.0; ///< predicted sample-count estimate, >= 1
};

/// The d uniform sample positions floor(k*T/d), k = 1..d, as 1-based frame
/// indices. Strictly increasing, last element is always T.
std::vector<long> uniform_sample_indices(long t, long d);

struct BoxSample {
    long frame = 0;
    BoundingBox box;
};

/// Linear per-coordinate interpolation of (x, y, w, h) between consecutive
/// samples over the inclusive frame range [first, last]. Frames before the
/// first sample and after the last hold the nearest sampled box constant.
/// Sample frames must be strictly increasing and inside [first, last].
std::vector<BoundingBox> interpolate_box_sequence(std::span<const BoxSample> samples,
                                                  long first, long last);

/// Spatio-temporal overlap: temporal IoU of the frame intervals times the
/// mean per-frame box IoU over the temporal intersection. Zero when the
/// intervals are disjoint.
double tube_st_iou(const Tube& a, const Tube& b);

}  // namespace tubekit
