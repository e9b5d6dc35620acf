#pragma once

#include <vector>

#include "clumpsplit/image.hpp"
#include "clumpsplit/image_prep.hpp"

namespace clumpsplit {

/// Signed curvature along a closed contour. Sign follows the orientation
/// convention: convex boundary (bulging away from the foreground) is
/// positive, concavities are negative.
struct CurvatureProfile {
    std::vector<double> kappa;  // 1/px, one per contour point
    std::vector<double> arc;    // normalized arc position in [0,1), arc[0] = 0
    double total_length = 0.0;  // px
};

/// Voted representative of one concave contour segment.
struct CandidatePoint {
    Vec2 position;
    int contour_index = 0;
    double s_star = 0.0;  // normalized arc position of the point
    double kappa = 0.0;   // signed curvature at contour_index
    Vec2 normal;          // outward unit normal at contour_index
};

/// Inclusive circular index range; end < start means the range wraps.
struct IndexRange {
    int start = 0;
    int end = 0;
};

/// Central finite differences with circular wrap over the chord-length
/// parameterization. Coincident consecutive points inherit the nearest
/// valid neighbor's value.
CurvatureProfile compute_curvature(const Contour& c);

/// Maximal circular runs with kappa <= -kappa_min; runs shorter than two
/// samples are dropped.
std::vector<IndexRange> find_concave_segments(const CurvatureProfile& p, double kappa_min);

/// Curvature-weighted arc centroid of the segment (|kappa| weights,
/// trapezoidal), mapped back to the nearest contour sample.
CandidatePoint vote_candidate(const Contour& c, const CurvatureProfile& p, IndexRange seg);

/// Weighted centroid of positions t in [0,1] with weights |w|, trapezoidal
/// over arbitrary spacing. Degenerate total weight returns 0.5.
double weighted_arc_centroid(const std::vector<double>& t, const std::vector<double>& w);

/// Unit normal perpendicular to the local tangent, pointing away from the
/// foreground (by the orientation convention; the mask overload verifies by
/// sampling 2 px along the normal and flips when needed).
Vec2 outward_normal(const Contour& c, int i);
Vec2 outward_normal(const Contour& c, int i, const BinaryMask& mask);

/// Full segment + vote sweep: one candidate per concave segment.
std::vector<CandidatePoint> find_candidates(const Contour& c, const CurvatureProfile& p,
                                            double kappa_min, const BinaryMask* mask = nullptr);

}  // namespace clumpsplit
