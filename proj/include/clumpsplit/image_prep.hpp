#pragma once

#include <optional>
#include <vector>

#include "clumpsplit/geometry.hpp"
#include "clumpsplit/image.hpp"

namespace clumpsplit {

/// Closed boundary polyline of one foreground component, oriented so the
/// foreground lies on the left (positive shoelace area). Points may carry
/// subpixel coordinates after smoothing.
struct Contour {
    std::vector<Vec2> points;

    /// Cumulative chord-length arc positions, size() entries, arc[0] = 0.
    std::vector<double> cumulative_arc() const;
    /// Total closed length including the closing edge.
    double arc_length() const;
};

/// Blue plane of an RGB image; single-channel images pass through unchanged.
RasterImage select_nuclear_channel(const RasterImage& img);

/// Otsu threshold over a 256-bin histogram of [0,1] intensities.
/// Empty when the histogram admits no foreground/background split.
std::optional<double> otsu_threshold(const RasterImage& img);

struct BinarizeParams {
    int min_area = 50;  // drop smaller foreground components
    int max_hole = 30;  // fill smaller enclosed background holes
};

BinaryMask binarize(const RasterImage& img, const BinarizeParams& params = {});

/// Outer boundary of every 8-connected foreground component, one closed
/// contour each; components whose boundary chain is shorter than 8 pixels
/// are skipped.
std::vector<Contour> trace_contours(const BinaryMask& mask);

/// Circular Gaussian convolution of x(s) and y(s); point count preserved.
Contour smooth_contour(const Contour& c, double sigma);

/// Scanline fill of the contour polygon into a mask of the given size.
BinaryMask fill_contour(const Contour& c, int width, int height);

}  // namespace clumpsplit
