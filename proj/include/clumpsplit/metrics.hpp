#pragma once

#include <vector>

#include "clumpsplit/geometry.hpp"
#include "clumpsplit/image.hpp"

namespace clumpsplit {

struct ObjectMatch {
    int pred_id = 0;
    int gt_id = 0;
    double iou = 0.0;
};

/// Greedy one-to-one matching by descending pairwise IoU, keeping pairs with
/// IoU >= iou_min. Throws on dimension mismatch.
std::vector<ObjectMatch> match_objects(const LabelMask& pred, const LabelMask& gt,
                                       double iou_min = 0.5);

struct MetricReport {
    double jaccard = 0.0;    // mean IoU over matched pairs
    double precision = 0.0;  // TP / #pred objects
    double recall = 0.0;     // TP / #gt objects
    double f1 = 0.0;
    double hausdorff = 0.0;  // mean symmetric boundary Hausdorff over matches, px
    int tp = 0;
    int n_pred = 0;
    int n_gt = 0;
    std::vector<ObjectMatch> matches;
};

MetricReport compute_metrics(const std::vector<ObjectMatch>& matches, const LabelMask& pred,
                             const LabelMask& gt);

/// max(sup_a inf_b d, sup_b inf_a d), Euclidean. Throws on an empty set.
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

/// Pixels of the labelled object with a 4-neighbor outside it.
std::vector<Vec2> boundary_points(const LabelMask& labels, int label);

}  // namespace clumpsplit
