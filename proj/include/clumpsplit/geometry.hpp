#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace clumpsplit {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    Vec2 normalized() const {
        double n = norm();
        return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
    }
};

struct PixelPoint {
    int x = 0;
    int y = 0;
    bool operator==(const PixelPoint&) const = default;
};

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

/// Unsigned angle between two vectors, radians in [0, pi].
double angle_between(Vec2 u, Vec2 v);

// Polygons are implicitly closed (last vertex connects back to the first).
double polygon_signed_area(const std::vector<Vec2>& pts);
double polygon_perimeter(const std::vector<Vec2>& pts);
Vec2 polygon_centroid(const std::vector<Vec2>& pts);

/// Pixels whose integer center lies inside the polygon (even-odd scanline rule).
std::vector<PixelPoint> rasterize_polygon(const std::vector<Vec2>& pts);

/// Proper crossing of open segments ab and cd; touching at shared endpoints
/// does not count.
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// 8-connected integer line from p to q, inclusive of both endpoints.
std::vector<PixelPoint> bresenham_line(PixelPoint p, PixelPoint q);

/// Normalized symmetric Gaussian kernel with radius max(1, ceil(4*sigma)).
std::vector<double> gaussian_kernel(double sigma);

}  // namespace clumpsplit
