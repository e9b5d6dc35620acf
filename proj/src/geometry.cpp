#include "clumpsplit/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace clumpsplit {

double angle_between(Vec2 u, Vec2 v) {
    double nu = u.norm(), nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    double c = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
    return std::acos(c);
}

double polygon_signed_area(const std::vector<Vec2>& pts) {
    double s = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = pts[i];
        const Vec2& q = pts[(i + 1) % n];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

double polygon_perimeter(const std::vector<Vec2>& pts) {
    double s = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) s += (pts[(i + 1) % n] - pts[i]).norm();
    return s;
}

Vec2 polygon_centroid(const std::vector<Vec2>& pts) {
    const std::size_t n = pts.size();
    if (n == 0) return {};
    double a = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = pts[i];
        const Vec2& q = pts[(i + 1) % n];
        double w = p.x * q.y - q.x * p.y;
        a += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    if (std::abs(a) < 1e-12) {  // degenerate: fall back to the vertex mean
        Vec2 m;
        for (const Vec2& p : pts) m = m + p;
        return m / static_cast<double>(n);
    }
    return {cx / (3.0 * a), cy / (3.0 * a)};
}

std::vector<PixelPoint> rasterize_polygon(const std::vector<Vec2>& pts) {
    std::vector<PixelPoint> out;
    if (pts.size() < 3) return out;
    double ymin = pts[0].y, ymax = pts[0].y;
    for (const Vec2& p : pts) {
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const std::size_t n = pts.size();
    std::vector<double> xs;
    for (int y = static_cast<int>(std::ceil(ymin)); y <= static_cast<int>(std::floor(ymax)); ++y) {
        xs.clear();
        const double yc = static_cast<double>(y);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& p = pts[i];
            const Vec2& q = pts[(i + 1) % n];
            // half-open rule: an edge covers [min(y), max(y))
            if ((p.y <= yc && q.y > yc) || (q.y <= yc && p.y > yc)) {
                double t = (yc - p.y) / (q.y - p.y);
                xs.push_back(p.x + t * (q.x - p.x));
            }
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            int x0 = static_cast<int>(std::ceil(xs[k]));
            int x1 = static_cast<int>(std::floor(xs[k + 1]));
            for (int x = x0; x <= x1; ++x) out.push_back({x, y});
        }
    }
    return out;
}

namespace {
int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
    double v = (b - a).cross(c - a);
    const double eps = 1e-12;
    return v > eps ? 1 : (v < -eps ? -1 : 0);
}
bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
           std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}
bool same_point(Vec2 p, Vec2 q) { return (p - q).norm() < 1e-9; }
}  // namespace

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    if (same_point(a, c) || same_point(a, d) || same_point(b, c) || same_point(b, d)) return false;
    int o1 = orient_sign(a, b, c);
    int o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a);
    int o4 = orient_sign(c, d, b);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
    // collinear overlap beyond endpoints counts as a crossing
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

std::vector<PixelPoint> bresenham_line(PixelPoint p, PixelPoint q) {
    std::vector<PixelPoint> out;
    int dx = std::abs(q.x - p.x), dy = -std::abs(q.y - p.y);
    int sx = p.x < q.x ? 1 : -1, sy = p.y < q.y ? 1 : -1;
    int err = dx + dy;
    int x = p.x, y = p.y;
    while (true) {
        out.push_back({x, y});
        if (x == q.x && y == q.y) break;
        int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y += sy;
        }
    }
    return out;
}

std::vector<double> gaussian_kernel(double sigma) {
    int radius = std::max(1, static_cast<int>(std::ceil(4.0 * sigma)));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
        k[i + radius] = w;
        sum += w;
    }
    for (double& w : k) w /= sum;
    return k;
}

}  // namespace clumpsplit
