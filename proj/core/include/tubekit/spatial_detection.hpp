#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tubekit/tensor.hpp"
#include "tubekit/tube.hpp"

namespace tubekit {

/// One anchor of the detection grid, in normalized image coordinates.
struct AnchorBox {
    BoundingBox box;
    int row = 0;
    int col = 0;
    int slot = 0;
};

/// rows x cols cells, one anchor per (cell, size). Centers sit at cell
/// centers; sizes are (w, h) pairs in normalized units.
std::vector<AnchorBox> make_anchor_grid(int rows, int cols,
                                        std::span<const std::array<double, 2>> sizes);

/// A decoded box with per-class scores plus the association vectors used by
/// the linking stage. sample_index is the 1-based temporal sample t.
struct DetectionCandidate {
    BoundingBox box;
    std::vector<double> scores;
    std::vector<double> embedding;
    std::array<double, 2> shift{0.0, 0.0};
    int sample_index = 1;
};

/// Box branch: a 2-D conv head over one sampled feature map. The head must
/// emit anchors-per-cell * (num_classes + 4) channels on a grid matching
/// the anchor layout. Scores go through a sigmoid; offsets decode as
///   x = ax + dx * aw,  y = ay + dy * ah,  w = aw * exp(dw),  h = ah * exp(dh).
std::vector<DetectionCandidate> detect_boxes(const Tensor& fmap, const ConvParams& box_params,
                                             std::span<const AnchorBox> anchors, int num_classes);

/// Association branch output: embedding and shift per sample and anchor,
/// indexed [sample][anchor] in the same anchor order as detect_boxes.
struct AssociationVectors {
    std::vector<std::vector<std::vector<double>>> embeddings;
    std::vector<std::vector<std::array<double, 2>>> shifts;
};

/// 3-D conv over the stacked (C, n, H, W) samples. The head must preserve
/// n, H and W and emit anchors_per_cell * (embed_dim + 2) channels; the
/// last two channels per anchor are the shift, the rest the raw embedding.
AssociationVectors association_vectors(const Tensor& stacked, const ConvParams& assoc_params,
                                       std::size_t anchors_per_cell, std::size_t embed_dim);

/// Copy association vectors into per-sample candidate lists (in place).
void attach_association(std::vector<std::vector<DetectionCandidate>>& per_sample,
                        const AssociationVectors& assoc);

/// Per-anchor match indicators against one ground-truth box.
struct MatchLabels {
    std::vector<std::uint8_t> positive;  ///< 1 iff the anchor matches
    BoundingBox matched_box;             ///< the ground-truth box
};

/// IoU >= threshold marks an anchor positive; the single best-IoU anchor is
/// always positive regardless of threshold.
MatchLabels match_anchors(std::span<const AnchorBox> anchors, const BoundingBox& gt_box,
                          double threshold = 0.5);

struct EmbeddingLossResult {
    double loss = 0.0;
    std::vector<std::vector<double>> grads;  ///< per anchor, same dims as inputs
};

/// Cluster loss on embeddings: positives pull toward the positive mean
/// (squared L2), negatives are hinged away by margin alpha. Gradients treat
/// the mean as a constant. Requires at least one positive anchor.
EmbeddingLossResult embedding_loss(const std::vector<std::vector<double>>& embeddings,
                                   const MatchLabels& labels, double alpha);

struct ShiftLossResult {
    double loss = 0.0;
    std::vector<std::vector<std::array<double, 2>>> grads;  ///< [sample][anchor]
};

/// Squared-L2 loss between each positive anchor's shift at sample k and the
/// ground-truth center offset from sampled box k to k + 1 (k = 1..n-1; the
/// last sample has no target and contributes nothing). Requires n >= 2.
ShiftLossResult shift_loss(const std::vector<std::vector<std::array<double, 2>>>& shifts,
                           const std::vector<MatchLabels>& labels,
                           std::span<const BoundingBox> gt_sampled_boxes);

}  // namespace tubekit
