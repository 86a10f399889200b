#pragma once

#include <span>
#include <vector>

#include "tubekit/spatial_detection.hpp"
#include "tubekit/tube.hpp"

namespace tubekit {

/// One linked chain of candidates, one per temporal sample, for one class.
struct LinkedTubeDraft {
    TemporalProposal proposal;
    std::vector<DetectionCandidate> picked;
    int class_id = 0;
};

/// Linking affinity between boxes in adjacent samples:
/// exp(-(D_a + D_s) / 2) with D_a the L2 embedding distance and D_s the L2
/// distance between a's predicted shift and the actual center offset from
/// a.box to b.box. Requires b to be the sample right after a.
double connectivity(const DetectionCandidate& a, const DetectionCandidate& b);

/// Greedy chain: the start is the highest class-score candidate of the
/// first set, each following pick maximizes connectivity to the previous
/// one. Ties go to the lower candidate ordinal. Every set must be nonempty.
LinkedTubeDraft link_greedy(std::span<const std::vector<DetectionCandidate>> candidate_sets,
                            int class_id, const TemporalProposal& proposal);

/// One draft per class whose mean best-candidate score clears the floor.
std::vector<LinkedTubeDraft> link_all_classes(
    std::span<const std::vector<DetectionCandidate>> candidate_sets, int num_classes,
    const TemporalProposal& proposal, double score_floor = 0.05);

/// Spread the n picked boxes over the proposal's frame interval (rounded to
/// nearest frame, clamped to [1, video_len_frames], duplicate frames keep
/// the first pick), interpolate densely between them and score the tube as
/// mean picked class score times the proposal actioness.
Tube reconstruct_dense_tube(const LinkedTubeDraft& draft, long video_len_frames);

}  // namespace tubekit
