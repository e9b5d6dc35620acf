#include "clumpsplit/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "clumpsplit/image_prep.hpp"

namespace clumpsplit {

namespace {

[[noreturn]] void stage_fail(const char* stage, const std::exception& e) {
    throw std::runtime_error(std::string(stage) + ": " + e.what());
}

// nearest foreground pixel within a small window; candidates sit on the
// boundary so a subpixel round can land just outside
PixelPoint snap_to_mask(const BinaryMask& mask, Vec2 p) {
    PixelPoint px{static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
    if (mask.at(px.x, px.y)) return px;
    PixelPoint best = px;
    double best_d = std::numeric_limits<double>::max();
    for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx) {
            int nx = px.x + dx, ny = px.y + dy;
            if (!mask.at(nx, ny)) continue;
            double d = std::hypot(p.x - nx, p.y - ny);
            if (d < best_d) {
                best_d = d;
                best = {nx, ny};
            }
        }
    return best;
}

}  // namespace

PipelineResult run_pipeline(const RasterImage& img, const PipelineConfig& cfg) {
    cfg.validate();
    PipelineResult result;

    RasterImage chan;
    try {
        chan = select_nuclear_channel(img);
        result.mask = binarize(chan, {cfg.min_area, cfg.max_hole});
    } catch (const std::exception& e) {
        stage_fail("image_prep", e);
    }

    PairingParams pparams;
    pparams.r1 = cfg.r1;
    pparams.r2 = cfg.r2;
    pparams.alpha = cfg.alpha;
    pparams.beta = cfg.beta;
    pparams.v_threshold = cfg.v_threshold;
    pparams.walk_energy_threshold = cfg.walk_energy_threshold;
    pparams.c1_requires_v = cfg.c1_requires_v;

    QualityParams qparams;
    qparams.mu = cfg.mu;
    qparams.nu = cfg.nu;
    qparams.gamma1 = cfg.gamma1;
    qparams.gamma2 = cfg.gamma2;
    qparams.q_threshold = cfg.q_threshold;
    qparams.sharp_angle_min_deg = cfg.sharp_angle_min;
    qparams.psi_in_degrees = cfg.psi_in_degrees;

    std::vector<EvaluatedPair> pool;
    std::vector<PointPair> chords;  // C- partition chords across all contours
    try {
        auto raw = trace_contours(result.mask);
        for (std::size_t ci = 0; ci < raw.size(); ++ci) {
            ContourAnalysis ca;
            ca.raw = raw[ci];
            ca.smoothed = smooth_contour(ca.raw, cfg.contour_sigma);
            ca.profile = compute_curvature(ca.smoothed);
            auto candidates = find_candidates(ca.smoothed, ca.profile, cfg.kappa_min, &result.mask);
            candidates = merge_low_energy(std::move(candidates), ca.smoothed, ca.profile, pparams);
            ca.candidates = candidates;

            auto screened = screen_pairs(candidates, ca.smoothed, ca.profile, result.mask, pparams);
            ca.c_plus = screened.c_plus;
            ca.c_minus = resolve_crossing_chords(screened.c_minus);
            ca.subcontours = partition_contour(ca.smoothed, ca.c_minus);

            for (const SubContour& sc : ca.subcontours) {
                for (PointPair& pp : subcontour_adjacent_pairs(sc, candidates, ca.smoothed, ca.profile)) {
                    if (pp.distance > cfg.r1) continue;
                    if (pp.walk_energy < cfg.walk_energy_threshold) continue;
                    EvaluatedPair ep;
                    ep.pair = pp;
                    ep.contour_id = static_cast<int>(ci);
                    ep.region = pair_region(sc, ca.smoothed, pp.a.contour_index, pp.b.contour_index);
                    if (ep.region.size() >= 6 &&
                        std::abs(polygon_signed_area(ep.region)) > 4.0) {
                        ep.ellipse = fit_ellipse(ep.region);
                        if (ep.ellipse)
                            ep.quality = fit_quality(ep.region, pp.a.position, pp.b.position,
                                                     *ep.ellipse, qparams);
                    }
                    ca.evaluated.push_back(ep);
                    pool.push_back(ca.evaluated.back());
                }
            }
            for (const PointPair& pp : ca.c_minus) chords.push_back(pp);
            result.contours.push_back(std::move(ca));
        }
    } catch (const std::exception& e) {
        stage_fail("contour_analysis", e);
    }

    std::vector<EvaluatedPair> committed;
    try {
        committed = select_connections(pool, chords, qparams);
        for (const EvaluatedPair& ep : committed)
            result.contours[ep.contour_id].committed.push_back(ep);
    } catch (const std::exception& e) {
        stage_fail("ellipse_fit", e);
    }

    try {
        std::vector<PointPair> to_trace = chords;
        for (const EvaluatedPair& ep : committed) to_trace.push_back(ep.pair);
        if (!to_trace.empty()) {
            HessianField field = hessian_field(chan, cfg.hessian_sigma);
            TraceParams tp;
            tp.max_dev_deg = cfg.sector_deg;
            tp.lambda1_rel_tol = cfg.lambda1_rel_tol;
            for (const PointPair& pp : to_trace) {
                // seed the walk at the deeper notch
                const CandidatePoint& from =
                    std::abs(pp.a.kappa) >= std::abs(pp.b.kappa) ? pp.a : pp.b;
                const CandidatePoint& to = (&from == &pp.a) ? pp.b : pp.a;
                PixelPoint p = snap_to_mask(result.mask, from.position);
                PixelPoint q = snap_to_mask(result.mask, to.position);
                DividingPath path = trace_dividing_curve(field, p, q, tp);
                path.pair_a = from.contour_index;
                path.pair_b = to.contour_index;
                result.paths.push_back(std::move(path));
            }
        }
        result.labels = apply_divisions(result.mask, result.paths, cfg.min_area);
    } catch (const std::exception& e) {
        stage_fail("curve_trace", e);
    }
    return result;
}

std::string metric_report_json(const std::string& image_name, const MetricReport& report) {
    nlohmann::json j;
    j["image"] = image_name;
    j["jaccard"] = report.jaccard;
    j["precision"] = report.precision;
    j["recall"] = report.recall;
    j["f1"] = report.f1;
    j["hausdorff"] = report.hausdorff;
    j["tp"] = report.tp;
    j["n_pred"] = report.n_pred;
    j["n_gt"] = report.n_gt;
    j["matches"] = nlohmann::json::array();
    for (const ObjectMatch& m : report.matches)
        j["matches"].push_back({{"pred", m.pred_id}, {"gt", m.gt_id}, {"iou", m.iou}});
    return j.dump(2);
}

std::vector<AggregateRow> aggregate_metrics(const std::vector<MetricReport>& reports) {
    struct Extract {
        const char* name;
        double (*get)(const MetricReport&);
    };
    static const Extract extractors[] = {
        {"jaccard", [](const MetricReport& r) { return r.jaccard; }},
        {"precision", [](const MetricReport& r) { return r.precision; }},
        {"recall", [](const MetricReport& r) { return r.recall; }},
        {"f1", [](const MetricReport& r) { return r.f1; }},
        {"hausdorff", [](const MetricReport& r) { return r.hausdorff; }},
    };
    std::vector<AggregateRow> rows;
    if (reports.empty()) return rows;  // header-only CSV downstream
    for (const Extract& ex : extractors) {
        AggregateRow row;
        row.metric = ex.name;
        const std::size_t n = reports.size();
        if (n > 0) {
            double sum = 0.0;
            for (const MetricReport& r : reports) sum += ex.get(r);
            row.mean = sum / static_cast<double>(n);
            if (n > 1) {
                double ss = 0.0;
                for (const MetricReport& r : reports) {
                    double d = ex.get(r) - row.mean;
                    ss += d * d;
                }
                row.stddev = std::sqrt(ss / static_cast<double>(n - 1));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
    std::string out = "metric,mean,std\n";
    char buf[128];
    for (const AggregateRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f\n", row.metric.c_str(), row.mean, row.stddev);
        out += buf;
    }
    return out;
}

}  // namespace clumpsplit
