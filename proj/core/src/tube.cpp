#include "tubekit/tube.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tubekit {

bool box_is_valid(const BoundingBox& b) {
    return std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(b.w) &&
           std::isfinite(b.h) && b.w > 0.0 && b.h > 0.0;
}

void require_valid_box(const BoundingBox& b) {
    if (!box_is_valid(b)) throw std::invalid_argument("invalid box: extents must be finite and positive");
}

double box_iou(const BoundingBox& a, const BoundingBox& b) {
    require_valid_box(a);
    require_valid_box(b);
    const double ax0 = a.x - a.w / 2, ax1 = a.x + a.w / 2;
    const double ay0 = a.y - a.h / 2, ay1 = a.y + a.h / 2;
    const double bx0 = b.x - b.w / 2, bx1 = b.x + b.w / 2;
    const double by0 = b.y - b.h / 2, by1 = b.y + b.h / 2;
    const double iw = std::min(ax1, bx1) - std::max(ax0, bx0);
    const double ih = std::min(ay1, by1) - std::max(ay0, by0);
    if (iw <= 0.0 || ih <= 0.0) return 0.0;
    const double inter = iw * ih;
    const double uni = a.w * a.h + b.w * b.h - inter;
    return inter / uni;
}

void require_valid_tube(const Tube& t) {
    if (t.end < t.start) throw std::invalid_argument("tube: end < start");
    if (t.boxes.size() != static_cast<std::size_t>(t.length()))
        throw std::invalid_argument("tube: boxes length != end - start + 1");
    for (const auto& b : t.boxes) require_valid_box(b);
}

std::vector<long> uniform_sample_indices(long t, long d) {
    if (t < 1 || d < 1 || d > t) throw std::invalid_argument("uniform_sample_indices: need 1 <= d <= T");
    std::vector<long> out;
    out.reserve(static_cast<std::size_t>(d));
    for (long k = 1; k <= d; ++k) out.push_back(k * t / d);
    return out;
}

std::vector<BoundingBox> interpolate_box_sequence(std::span<const BoxSample> samples,
                                                  long first, long last) {
    if (samples.empty()) throw std::invalid_argument("interpolate_box_sequence: no samples");
    if (last < first) throw std::invalid_argument("interpolate_box_sequence: empty range");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].frame < first || samples[i].frame > last)
            throw std::invalid_argument("interpolate_box_sequence: sample outside range");
        if (i > 0 && samples[i].frame <= samples[i - 1].frame)
            throw std::invalid_argument("interpolate_box_sequence: sample frames must strictly increase");
    }

    std::vector<BoundingBox> out(static_cast<std::size_t>(last - first + 1));
    std::size_t seg = 0;  // index of the sample at or after the current frame
    for (long f = first; f <= last; ++f) {
        auto& dst = out[static_cast<std::size_t>(f - first)];
        while (seg < samples.size() && samples[seg].frame < f) ++seg;
        if (seg == 0) {
            dst = samples.front().box;  // before the first sample: hold
        } else if (seg == samples.size()) {
            dst = samples.back().box;   // after the last sample: hold
        } else if (samples[seg].frame == f) {
            dst = samples[seg].box;
        } else {
            const auto& lo = samples[seg - 1];
            const auto& hi = samples[seg];
            const double u = static_cast<double>(f - lo.frame) / static_cast<double>(hi.frame - lo.frame);
            dst.x = lo.box.x + u * (hi.box.x - lo.box.x);
            dst.y = lo.box.y + u * (hi.box.y - lo.box.y);
            dst.w = lo.box.w + u * (hi.box.w - lo.box.w);
            dst.h = lo.box.h + u * (hi.box.h - lo.box.h);
        }
    }
    return out;
}

double tube_st_iou(const Tube& a, const Tube& b) {
    require_valid_tube(a);
    require_valid_tube(b);
    const long inter_start = std::max(a.start, b.start);
    const long inter_end = std::min(a.end, b.end);
    if (inter_end < inter_start) return 0.0;
    const long union_start = std::min(a.start, b.start);
    const long union_end = std::max(a.end, b.end);
    const double temporal = static_cast<double>(inter_end - inter_start + 1) /
                            static_cast<double>(union_end - union_start + 1);
    double spatial = 0.0;
    for (long f = inter_start; f <= inter_end; ++f) spatial += box_iou(a.box_at(f), b.box_at(f));
    spatial /= static_cast<double>(inter_end - inter_start + 1);
    return temporal * spatial;
}

}  // namespace tubekit
