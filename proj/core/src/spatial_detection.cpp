#include "tubekit/spatial_detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tubekit {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

std::vector<AnchorBox> make_anchor_grid(int rows, int cols,
                                        std::span<const std::array<double, 2>> sizes) {
    if (rows < 1 || cols < 1 || sizes.empty())
        throw std::invalid_argument("make_anchor_grid: need positive grid and at least one size");
    std::vector<AnchorBox> anchors;
    anchors.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) * sizes.size());
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            for (std::size_t s = 0; s < sizes.size(); ++s) {
                AnchorBox a;
                a.box.x = (static_cast<double>(c) + 0.5) / static_cast<double>(cols);
                a.box.y = (static_cast<double>(r) + 0.5) / static_cast<double>(rows);
                a.box.w = sizes[s][0];
                a.box.h = sizes[s][1];
                a.row = r;
                a.col = c;
                a.slot = static_cast<int>(s);
                anchors.push_back(a);
            }
    return anchors;
}

std::vector<DetectionCandidate> detect_boxes(const Tensor& fmap, const ConvParams& box_params,
                                             std::span<const AnchorBox> anchors, int num_classes) {
    if (fmap.rank() != 3) throw std::invalid_argument("detect_boxes: expected (C, H, W)");
    if (num_classes < 1) throw std::invalid_argument("detect_boxes: need num_classes >= 1");
    const Tensor raw = convolve(fmap, box_params);
    const std::size_t h = raw.dim(1), w = raw.dim(2);
    const std::size_t cells = h * w;
    if (anchors.empty() || anchors.size() % cells != 0)
        throw std::invalid_argument("detect_boxes: anchor count must be a multiple of the grid cells");
    const std::size_t per_cell = anchors.size() / cells;
    const std::size_t fields = static_cast<std::size_t>(num_classes) + 4;
    if (raw.dim(0) != per_cell * fields)
        throw std::invalid_argument("detect_boxes: head channels != anchors-per-cell * (classes + 4)");

    std::vector<DetectionCandidate> out;
    out.reserve(anchors.size());
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c)
            for (std::size_t slot = 0; slot < per_cell; ++slot) {
                const AnchorBox& anchor = anchors[(r * w + c) * per_cell + slot];
                const std::size_t base = slot * fields;
                DetectionCandidate cand;
                cand.scores.resize(static_cast<std::size_t>(num_classes));
                for (int k = 0; k < num_classes; ++k)
                    cand.scores[static_cast<std::size_t>(k)] =
                        sigmoid(raw.at(base + static_cast<std::size_t>(k), r, c));
                const double dx = raw.at(base + fields - 4, r, c);
                const double dy = raw.at(base + fields - 3, r, c);
                const double dw = raw.at(base + fields - 2, r, c);
                const double dh = raw.at(base + fields - 1, r, c);
                cand.box.x = anchor.box.x + dx * anchor.box.w;
                cand.box.y = anchor.box.y + dy * anchor.box.h;
                cand.box.w = anchor.box.w * std::exp(dw);
                cand.box.h = anchor.box.h * std::exp(dh);
                out.push_back(std::move(cand));
            }
    return out;
}

AssociationVectors association_vectors(const Tensor& stacked, const ConvParams& assoc_params,
                                       std::size_t anchors_per_cell, std::size_t embed_dim) {
    if (stacked.rank() != 4) throw std::invalid_argument("association_vectors: expected (C, n, H, W)");
    const Tensor raw = convolve(stacked, assoc_params);
    if (raw.dim(1) != stacked.dim(1) || raw.dim(2) != stacked.dim(2) || raw.dim(3) != stacked.dim(3))
        throw std::invalid_argument("association_vectors: head must preserve (n, H, W)");
    const std::size_t fields = embed_dim + 2;
    if (raw.dim(0) != anchors_per_cell * fields)
        throw std::invalid_argument("association_vectors: head channels != anchors-per-cell * (E + 2)");

    const std::size_t n = raw.dim(1), h = raw.dim(2), w = raw.dim(3);
    AssociationVectors out;
    out.embeddings.resize(n);
    out.shifts.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        out.embeddings[t].reserve(h * w * anchors_per_cell);
        out.shifts[t].reserve(h * w * anchors_per_cell);
        for (std::size_t r = 0; r < h; ++r)
            for (std::size_t c = 0; c < w; ++c)
                for (std::size_t slot = 0; slot < anchors_per_cell; ++slot) {
                    const std::size_t base = slot * fields;
                    std::vector<double> embed(embed_dim);
                    for (std::size_t e = 0; e < embed_dim; ++e) embed[e] = raw.at(base + e, t, r, c);
                    out.embeddings[t].push_back(std::move(embed));
                    out.shifts[t].push_back(
                        {raw.at(base + embed_dim, t, r, c), raw.at(base + embed_dim + 1, t, r, c)});
                }
    }
    return out;
}

void attach_association(std::vector<std::vector<DetectionCandidate>>& per_sample,
                        const AssociationVectors& assoc) {
    if (per_sample.size() != assoc.embeddings.size())
        throw std::invalid_argument("attach_association: sample count mismatch");
    for (std::size_t t = 0; t < per_sample.size(); ++t) {
        if (per_sample[t].size() != assoc.embeddings[t].size())
            throw std::invalid_argument("attach_association: anchor count mismatch");
        for (std::size_t i = 0; i < per_sample[t].size(); ++i) {
            per_sample[t][i].embedding = assoc.embeddings[t][i];
            per_sample[t][i].shift = assoc.shifts[t][i];
            per_sample[t][i].sample_index = static_cast<int>(t) + 1;
        }
    }
}

MatchLabels match_anchors(std::span<const AnchorBox> anchors, const BoundingBox& gt_box,
                          double threshold) {
    if (anchors.empty()) throw std::invalid_argument("match_anchors: empty anchor set");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("match_anchors: threshold must be in (0, 1)");
    MatchLabels labels;
    labels.positive.assign(anchors.size(), 0);
    labels.matched_box = gt_box;
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const double iou = box_iou(anchors[i].box, gt_box);
        if (iou >= threshold) labels.positive[i] = 1;
        if (iou > best) {
            best = iou;
            best_i = i;
        }
    }
    labels.positive[best_i] = 1;
    return labels;
}

namespace {

double squared_l2(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return acc;
}

}  // namespace

EmbeddingLossResult embedding_loss(const std::vector<std::vector<double>>& embeddings,
                                   const MatchLabels& labels, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("embedding_loss: alpha must be positive");
    if (embeddings.size() != labels.positive.size())
        throw std::invalid_argument("embedding_loss: labels size mismatch");
    std::size_t num_pos = 0;
    for (auto p : labels.positive) num_pos += p;
    if (num_pos == 0) throw std::invalid_argument("embedding_loss: need at least one positive anchor");

    const std::size_t dim = embeddings.empty() ? 0 : embeddings[0].size();
    std::vector<double> mean(dim, 0.0);
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        if (embeddings[i].size() != dim) throw std::invalid_argument("embedding_loss: ragged embeddings");
        if (labels.positive[i])
            for (std::size_t e = 0; e < dim; ++e) mean[e] += embeddings[i][e];
    }
    for (double& m : mean) m /= static_cast<double>(num_pos);

    EmbeddingLossResult result;
    result.grads.assign(embeddings.size(), std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        const double d2 = squared_l2(embeddings[i], mean);
        if (labels.positive[i]) {
            result.loss += d2;
            for (std::size_t e = 0; e < dim; ++e)
                result.grads[i][e] = 2.0 * (embeddings[i][e] - mean[e]);
        } else if (d2 < alpha) {
            result.loss += alpha - d2;
            for (std::size_t e = 0; e < dim; ++e)
                result.grads[i][e] = -2.0 * (embeddings[i][e] - mean[e]);
        }
    }
    return result;
}

ShiftLossResult shift_loss(const std::vector<std::vector<std::array<double, 2>>>& shifts,
                           const std::vector<MatchLabels>& labels,
                           std::span<const BoundingBox> gt_sampled_boxes) {
    const std::size_t n = shifts.size();
    if (n < 2) throw std::invalid_argument("shift_loss: need at least 2 samples");
    if (labels.size() != n || gt_sampled_boxes.size() != n)
        throw std::invalid_argument("shift_loss: per-sample arrays must match");

    ShiftLossResult result;
    result.grads.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        result.grads[k].assign(shifts[k].size(), {0.0, 0.0});

    // Targets exist for samples 1..n-1: the offset to the next sampled box.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (labels[k].positive.size() != shifts[k].size())
            throw std::invalid_argument("shift_loss: labels/shifts anchor count mismatch");
        const std::array<double, 2> target{gt_sampled_boxes[k + 1].x - gt_sampled_boxes[k].x,
                                           gt_sampled_boxes[k + 1].y - gt_sampled_boxes[k].y};
        for (std::size_t i = 0; i < shifts[k].size(); ++i) {
            if (!labels[k].positive[i]) continue;
            const double ddx = shifts[k][i][0] - target[0];
            const double ddy = shifts[k][i][1] - target[1];
            result.loss += ddx * ddx + ddy * ddy;
            result.grads[k][i] = {2.0 * ddx, 2.0 * ddy};
        }
    }
    return result;
}

}  // namespace tubekit
