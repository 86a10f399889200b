#include "tubekit/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tubekit {

std::vector<DetectionOutcome> match_and_score(std::span<const Tube> detections,
                                              std::span<const Tube> ground_truth, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("match_and_score: delta must be in (0, 1)");

    std::vector<std::size_t> order(detections.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return detections[a].score > detections[b].score;
    });

    std::vector<bool> consumed(ground_truth.size(), false);
    std::vector<DetectionOutcome> outcomes;
    outcomes.reserve(detections.size());
    for (std::size_t idx : order) {
        const Tube& det = detections[idx];
        DetectionOutcome outcome;
        outcome.det_index = idx;
        outcome.class_id = det.class_id;
        outcome.score = det.score;

        double best_iou = 0.0;
        std::size_t best_gt = ground_truth.size();
        for (std::size_t g = 0; g < ground_truth.size(); ++g) {
            if (consumed[g] || ground_truth[g].class_id != det.class_id) continue;
            const double iou = tube_st_iou(det, ground_truth[g]);
            if (iou > best_iou) {
                best_iou = iou;
                best_gt = g;
            }
        }
        outcome.iou = best_iou;
        if (best_gt != ground_truth.size() && best_iou > delta) {
            outcome.tp = true;
            consumed[best_gt] = true;
        }
        outcomes.push_back(outcome);
    }
    return outcomes;
}

namespace {

/// Area under the precision envelope of an ordered TP/FP sequence.
double average_precision(const std::vector<std::pair<double, bool>>& scored, int num_gt) {
    if (num_gt == 0) return 0.0;
    std::vector<double> precision, recall;
    int tp = 0, fp = 0;
    for (const auto& [score, is_tp] : scored) {
        (is_tp ? tp : fp) += 1;
        precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
        recall.push_back(static_cast<double>(tp) / static_cast<double>(num_gt));
    }
    std::vector<double> envelope(precision);
    for (std::size_t i = envelope.size(); i-- > 1;)
        envelope[i - 1] = std::max(envelope[i - 1], envelope[i]);
    double ap = 0.0;
    double prev_recall = 0.0;
    for (std::size_t i = 0; i < envelope.size(); ++i) {
        if (recall[i] > prev_recall) {
            ap += (recall[i] - prev_recall) * envelope[i];
            prev_recall = recall[i];
        }
    }
    return ap;
}

}  // namespace

EvalReport video_map(const VideoTubes& detections, const VideoTubes& ground_truth, double delta) {
    EvalReport report;
    report.delta = delta;

    std::set<int> gt_classes;
    for (const auto& [video, tubes] : ground_truth) {
        report.num_ground_truth += static_cast<int>(tubes.size());
        for (const auto& t : tubes) gt_classes.insert(t.class_id);
    }

    // Pool scored outcomes per class across videos.
    std::map<int, std::vector<std::pair<double, bool>>> pooled;
    std::map<int, int> gt_count;
    for (int c : gt_classes) {
        pooled[c];
        gt_count[c] = 0;
    }
    for (const auto& [video, tubes] : ground_truth)
        for (const auto& t : tubes) gt_count[t.class_id] += 1;

    static const std::vector<Tube> kNoTubes;
    for (const auto& [video, dets] : detections) {
        report.num_detections += static_cast<int>(dets.size());
        const auto git = ground_truth.find(video);
        const auto& gts = git == ground_truth.end() ? kNoTubes : git->second;
        const auto outcomes = match_and_score(dets, gts, delta);
        auto& counts = report.per_video[video];
        for (const auto& outcome : outcomes) {
            (outcome.tp ? counts.tp : counts.fp) += 1;
            if (gt_classes.count(outcome.class_id))
                pooled[outcome.class_id].push_back({outcome.score, outcome.tp});
        }
    }
    for (const auto& [video, gts] : ground_truth)
        report.per_video.try_emplace(video);

    double ap_sum = 0.0;
    for (int c : gt_classes) {
        auto& scored = pooled[c];
        std::stable_sort(scored.begin(), scored.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        const double ap = average_precision(scored, gt_count[c]);
        report.per_class_ap[c] = ap;
        ap_sum += ap;
    }
    report.v_map = gt_classes.empty() ? 0.0 : ap_sum / static_cast<double>(gt_classes.size());
    return report;
}

}  // namespace tubekit
