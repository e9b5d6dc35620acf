#include "clumpsplit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace clumpsplit {

std::vector<ObjectMatch> match_objects(const LabelMask& pred, const LabelMask& gt, double iou_min) {
    if (pred.width != gt.width || pred.height != gt.height)
        throw std::invalid_argument("match_objects: dimension mismatch");

    std::vector<std::int64_t> pred_area(pred.max_label + 1, 0), gt_area(gt.max_label + 1, 0);
    std::map<std::pair<int, int>, std::int64_t> inter;
    for (std::size_t i = 0; i < pred.labels.size(); ++i) {
        std::int32_t a = pred.labels[i], b = gt.labels[i];
        if (a > 0) ++pred_area[a];
        if (b > 0) ++gt_area[b];
        if (a > 0 && b > 0) ++inter[{a, b}];
    }

    std::vector<ObjectMatch> all;
    for (const auto& [key, n] : inter) {
        double uni = static_cast<double>(pred_area[key.first] + gt_area[key.second] - n);
        double iou = uni > 0.0 ? static_cast<double>(n) / uni : 0.0;
        if (iou >= iou_min) all.push_back({key.first, key.second, iou});
    }
    std::sort(all.begin(), all.end(), [](const ObjectMatch& a, const ObjectMatch& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.pred_id != b.pred_id) return a.pred_id < b.pred_id;
        return a.gt_id < b.gt_id;
    });

    std::vector<char> used_pred(pred.max_label + 1, 0), used_gt(gt.max_label + 1, 0);
    std::vector<ObjectMatch> matches;
    for (const ObjectMatch& m : all) {
        if (used_pred[m.pred_id] || used_gt[m.gt_id]) continue;
        used_pred[m.pred_id] = 1;
        used_gt[m.gt_id] = 1;
        matches.push_back(m);
    }
    return matches;
}

std::vector<Vec2> boundary_points(const LabelMask& labels, int label) {
    std::vector<Vec2> pts;
    for (int y = 0; y < labels.height; ++y)
        for (int x = 0; x < labels.width; ++x) {
            if (labels.at(x, y) != label) continue;
            bool edge = x == 0 || y == 0 || x == labels.width - 1 || y == labels.height - 1 ||
                        labels.at(x - 1, y) != label || labels.at(x + 1, y) != label ||
                        labels.at(x, y - 1) != label || labels.at(x, y + 1) != label;
            if (edge) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
        }
    return pts;
}

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_distance: empty point set");
    auto directed = [](const std::vector<Vec2>& s, const std::vector<Vec2>& t) {
        double worst = 0.0;
        for (const Vec2& p : s) {
            double best = std::numeric_limits<double>::max();
            for (const Vec2& q : t) best = std::min(best, (p - q).norm2());
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

MetricReport compute_metrics(const std::vector<ObjectMatch>& matches, const LabelMask& pred,
                             const LabelMask& gt) {
    MetricReport r;
    r.matches = matches;
    r.tp = static_cast<int>(matches.size());
    r.n_pred = pred.max_label;
    r.n_gt = gt.max_label;

    if (r.n_pred == 0 && r.n_gt == 0) {  // both empty: perfect agreement
        r.precision = r.recall = r.f1 = r.jaccard = 1.0;
        return r;
    }
    r.precision = r.n_pred > 0 ? static_cast<double>(r.tp) / r.n_pred : 0.0;
    r.recall = r.n_gt > 0 ? static_cast<double>(r.tp) / r.n_gt : 0.0;
    r.f1 = (r.precision + r.recall) > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    if (!matches.empty()) {
        double iou_sum = 0.0, hd_sum = 0.0;
        for (const ObjectMatch& m : matches) {
            iou_sum += m.iou;
            hd_sum += hausdorff_distance(boundary_points(pred, m.pred_id),
                                         boundary_points(gt, m.gt_id));
        }
        r.jaccard = iou_sum / matches.size();
        r.hausdorff = hd_sum / matches.size();
    }
    return r;
}

}  // namespace clumpsplit
