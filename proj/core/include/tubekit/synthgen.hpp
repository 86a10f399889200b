#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tubekit/dynamic_level.hpp"
#include "tubekit/spatial_detection.hpp"
#include "tubekit/tensor.hpp"
#include "tubekit/tube.hpp"

namespace tubekit {

enum class TrajectoryKind { Constant, Linear, Sinusoidal, RandomWalk };

/// Everything a scene draw depends on. Two identical specs produce
/// byte-identical scenes.
struct SceneSpec {
    std::uint64_t seed = 0;
    long video_len = 96;
    int num_instances = 1;
    std::vector<TrajectoryKind> trajectories;  ///< cycled per instance; empty = random walks
    double walk_step = 0.02;                   ///< random-walk step scale, normalized units/frame
    int num_classes = 3;

    // Oracle candidate generation.
    int embed_dim = 8;
    double embed_spread = 0.1;       ///< intra-instance embedding sigma
    double embed_separation = 1.0;   ///< distance between instance embedding centers
    double shift_noise = 0.0;        ///< sigma in box-width units
    double score_noise = 0.0;        ///< sigma on class scores
    double box_center_noise = 0.0;   ///< candidate box jitter, normalized units
    double score_base = 0.9;         ///< own-instance class score before noise
    int distractors = 0;             ///< extra junk candidates per sample set

    // Sampling parameters used to place oracle candidates.
    double epsilon = 0.7;
    int n_max = 10;
    int n_min = 2;

    // Feature volume shape.
    std::size_t feature_channels = 4;
    std::size_t feature_t = 16;
    std::size_t feature_hw = 8;

    // Box geometry.
    double min_box_size = 0.12;
    double max_box_size = 0.22;
};

void require_valid(const SceneSpec& spec);

/// One instance with its oracle inputs for the downstream stages: the
/// proposal covering its interval, the frames the oracle sampled, candidate
/// sets (own candidate, same-video confusers, distractors) and the ordinal
/// of the own candidate within each set.
struct SceneInstance {
    TemporalProposal proposal;
    long oracle_d = 1;                                        ///< ground-truth dynamic level
    std::vector<long> sample_frames;                          ///< n absolute frames
    std::vector<std::vector<DetectionCandidate>> candidates;  ///< per sample
    std::vector<std::size_t> true_picks;                      ///< own candidate index per sample
};

struct Scene {
    std::string video_id;
    long video_len = 0;
    std::vector<Tube> ground_truth;       ///< one per instance, same order
    std::vector<SceneInstance> instances;
    Tensor feature_volume;                ///< (C, T_f, H, W) with per-instance bumps
};

Scene generate_scene(const SceneSpec& spec);

/// Normalized position of a 1-based frame in a video of len frames,
/// inverse of the frame mapping used by reconstruction and sampling.
double frame_to_normalized(long frame, long video_len);
long normalized_to_frame(double pos, long video_len);

}  // namespace tubekit
