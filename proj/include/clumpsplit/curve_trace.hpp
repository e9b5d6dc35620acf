#pragma once

#include <vector>

#include "clumpsplit/image.hpp"

namespace clumpsplit {

/// Per-pixel symmetric second-derivative matrices of the Gaussian-smoothed
/// intensity (one shared Ixy plane keeps the symmetry exact).
struct HessianField {
    int width = 0;
    int height = 0;
    double sigma = 2.0;
    std::vector<float> ixx;
    std::vector<float> ixy;
    std::vector<float> iyy;

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

HessianField hessian_field(const RasterImage& img, double sigma);

struct Eigen2 {
    double lambda1 = 0.0;  // smaller (signed)
    double lambda2 = 0.0;
    Vec2 v1;
    Vec2 v2;
};

/// Closed-form eigendecomposition of [[ixx, ixy], [ixy, iyy]];
/// lambda1 <= lambda2, orthonormal eigenvectors.
Eigen2 eigen_2x2(double ixx, double ixy, double iyy);

/// Pixel chain separating two nuclei, traced from p to q.
struct DividingPath {
    std::vector<PixelPoint> pixels;  // first == p, last == q, 8-connected, no repeats
    bool fallback = false;           // straight-line fallback was used
    int pair_a = -1;                 // contour indices of the source pair, if any
    int pair_b = -1;
};

struct TraceParams {
    double max_dev_deg = 45.0;      // sector half-angle around the bearing to q
    double lambda1_rel_tol = 0.15;  // |lambda1| <= tol * max(|lambda2|, eps)
    double step_budget_factor = 4.0;
};

/// Greedy valley walk: among 8-neighbors within the sector toward q, step to
/// the one with near-zero lambda1 and maximal positive lambda2. Falls back
/// to the Bresenham chord when no neighbor qualifies or the step budget
/// (factor * |p-q|) is exhausted. Throws if p or q lies outside the field.
DividingPath trace_dividing_curve(const HessianField& field, PixelPoint p, PixelPoint q,
                                  const TraceParams& params = {});

/// Cut the mask along the paths and relabel. Path pixels are reassigned to
/// the adjacent component with the nearest centroid, so areas are conserved.
/// Fragments below min_fragment_area are absorbed into the neighboring
/// component with the longest shared border.
LabelMask apply_divisions(const BinaryMask& mask, const std::vector<DividingPath>& paths,
                          int min_fragment_area = 0);

}  // namespace clumpsplit
