#include "tubekit/tube_linking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tubekit {

double connectivity(const DetectionCandidate& a, const DetectionCandidate& b) {
    if (a.sample_index + 1 != b.sample_index)
        throw std::invalid_argument("connectivity: candidates must sit in adjacent samples");
    if (a.embedding.size() != b.embedding.size())
        throw std::invalid_argument("connectivity: embedding dimension mismatch");
    double d_a = 0.0;
    for (std::size_t i = 0; i < a.embedding.size(); ++i) {
        const double diff = a.embedding[i] - b.embedding[i];
        d_a += diff * diff;
    }
    d_a = std::sqrt(d_a);
    const double off_x = b.box.x - a.box.x;
    const double off_y = b.box.y - a.box.y;
    const double dx = a.shift[0] - off_x;
    const double dy = a.shift[1] - off_y;
    const double d_s = std::sqrt(dx * dx + dy * dy);
    return std::exp(-(d_a + d_s) / 2.0);
}

LinkedTubeDraft link_greedy(std::span<const std::vector<DetectionCandidate>> candidate_sets,
                            int class_id, const TemporalProposal& proposal) {
    if (candidate_sets.empty()) throw std::invalid_argument("link_greedy: no sample sets");
    for (const auto& set : candidate_sets)
        if (set.empty()) throw std::invalid_argument("link_greedy: empty sample set");

    const auto cls = static_cast<std::size_t>(class_id);
    LinkedTubeDraft draft;
    draft.proposal = proposal;
    draft.class_id = class_id;
    draft.picked.reserve(candidate_sets.size());

    const auto& first = candidate_sets[0];
    for (const auto& cand : first)
        if (class_id < 0 || cls >= cand.scores.size())
            throw std::invalid_argument("link_greedy: class_id out of range");
    std::size_t best = 0;
    for (std::size_t j = 1; j < first.size(); ++j)
        if (first[j].scores[cls] > first[best].scores[cls]) best = j;
    draft.picked.push_back(first[best]);

    for (std::size_t t = 1; t < candidate_sets.size(); ++t) {
        const auto& set = candidate_sets[t];
        std::size_t pick = 0;
        double best_conn = connectivity(draft.picked.back(), set[0]);
        for (std::size_t j = 1; j < set.size(); ++j) {
            const double conn = connectivity(draft.picked.back(), set[j]);
            if (conn > best_conn) {
                best_conn = conn;
                pick = j;
            }
        }
        draft.picked.push_back(set[pick]);
    }
    return draft;
}

std::vector<LinkedTubeDraft> link_all_classes(
    std::span<const std::vector<DetectionCandidate>> candidate_sets, int num_classes,
    const TemporalProposal& proposal, double score_floor) {
    if (candidate_sets.empty()) throw std::invalid_argument("link_all_classes: no sample sets");
    std::vector<LinkedTubeDraft> drafts;
    for (int c = 0; c < num_classes; ++c) {
        double mean_best = 0.0;
        for (const auto& set : candidate_sets) {
            double best = 0.0;
            for (const auto& cand : set)
                best = std::max(best, cand.scores[static_cast<std::size_t>(c)]);
            mean_best += best;
        }
        mean_best /= static_cast<double>(candidate_sets.size());
        if (mean_best >= score_floor) drafts.push_back(link_greedy(candidate_sets, c, proposal));
    }
    return drafts;
}

Tube reconstruct_dense_tube(const LinkedTubeDraft& draft, long video_len_frames) {
    if (draft.picked.empty()) throw std::invalid_argument("reconstruct_dense_tube: empty draft");
    if (video_len_frames < 1) throw std::invalid_argument("reconstruct_dense_tube: empty video");
    if (!(draft.proposal.e > draft.proposal.s))
        throw std::invalid_argument("reconstruct_dense_tube: degenerate proposal interval");

    const std::size_t n = draft.picked.size();
    const double span = static_cast<double>(video_len_frames - 1);
    std::vector<BoxSample> samples;
    samples.reserve(n);
    double score_acc = 0.0;
    const auto cls = static_cast<std::size_t>(draft.class_id);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        const double pos = draft.proposal.s + (draft.proposal.e - draft.proposal.s) * u;
        const long frame = std::clamp(static_cast<long>(std::lround(1.0 + pos * span)), 1L,
                                      video_len_frames);
        if (samples.empty() || frame > samples.back().frame)
            samples.push_back({frame, draft.picked[i].box});
        score_acc += draft.picked[i].scores[cls];
    }

    Tube tube;
    tube.class_id = draft.class_id;
    tube.start = samples.front().frame;
    tube.end = samples.back().frame;
    tube.boxes = interpolate_box_sequence(samples, tube.start, tube.end);
    tube.score = (score_acc / static_cast<double>(n)) * draft.proposal.actioness;
    return tube;
}

}  // namespace tubekit
