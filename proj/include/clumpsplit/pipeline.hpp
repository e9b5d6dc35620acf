#pragma once

#include <string>
#include <vector>

#include "clumpsplit/config.hpp"
#include "clumpsplit/curve_trace.hpp"
#include "clumpsplit/ellipse.hpp"
#include "clumpsplit/metrics.hpp"

namespace clumpsplit {

/// Everything derived from one clump contour, kept for debug export.
struct ContourAnalysis {
    Contour raw;
    Contour smoothed;
    CurvatureProfile profile;
    std::vector<CandidatePoint> candidates;  // after low-energy merging
    std::vector<PointPair> c_plus;
    std::vector<PointPair> c_minus;
    std::vector<SubContour> subcontours;
    std::vector<EvaluatedPair> evaluated;  // every Q-assessed adjacent pair
    std::vector<EvaluatedPair> committed;
};

struct PipelineResult {
    BinaryMask mask;
    LabelMask labels;
    std::vector<DividingPath> paths;
    std::vector<ContourAnalysis> contours;
};

/// image_prep -> curvature -> pairing -> ellipse fit -> curve tracing ->
/// division, deterministically. Errors from stages propagate with stage
/// attribution in the message.
PipelineResult run_pipeline(const RasterImage& img, const PipelineConfig& cfg);

/// Per-image metric report serialized as JSON.
std::string metric_report_json(const std::string& image_name, const MetricReport& report);

struct AggregateRow {
    std::string metric;
    double mean = 0.0;
    double stddev = 0.0;
};

/// (mean, std) per metric over a group of reports; sample std, 0 for n < 2.
std::vector<AggregateRow> aggregate_metrics(const std::vector<MetricReport>& reports);

/// CSV with a fixed header "metric,mean,std", one row per metric.
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

}  // namespace clumpsplit
