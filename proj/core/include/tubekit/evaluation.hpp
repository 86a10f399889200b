#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tubekit/tube.hpp"

namespace tubekit {

/// TP/FP verdict for one detection tube of one video.
struct DetectionOutcome {
    std::size_t det_index = 0;  ///< index into the input detection list
    int class_id = 0;
    double score = 0.0;
    bool tp = false;
    double iou = 0.0;  ///< ST-IoU against the matched ground truth, 0 if none
};

/// Greedy matching within one video: detections in score-descending order
/// (ties keep input order) each claim the highest-ST-IoU unconsumed
/// same-class ground truth; TP iff that overlap is strictly larger than
/// delta. A consumed ground truth makes later detections FPs.
std::vector<DetectionOutcome> match_and_score(std::span<const Tube> detections,
                                              std::span<const Tube> ground_truth, double delta);

struct VideoCounts {
    int tp = 0;
    int fp = 0;
};

struct EvalReport {
    double delta = 0.0;
    std::map<int, double> per_class_ap;            ///< classes present in ground truth
    double v_map = 0.0;                            ///< unweighted mean of per_class_ap
    std::map<std::string, VideoCounts> per_video;  ///< TP/FP tallies
    int num_ground_truth = 0;
    int num_detections = 0;
};

using VideoTubes = std::map<std::string, std::vector<Tube>>;

/// Video-mAP at one overlap threshold. AP per class integrates the area
/// under the all-point precision envelope of the pooled PR curve.
/// Detections of classes absent from the ground truth count as FPs in the
/// tallies but join no AP.
EvalReport video_map(const VideoTubes& detections, const VideoTubes& ground_truth, double delta);

}  // namespace tubekit
