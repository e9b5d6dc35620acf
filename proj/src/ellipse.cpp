#include "clumpsplit/ellipse.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clumpsplit/curve_trace.hpp"

namespace clumpsplit {

namespace {

std::optional<Ellipse> conic_to_ellipse(double A, double B, double C, double D, double E, double F) {
    double den = B * B - 4.0 * A * C;
    if (den >= -1e-16) return std::nullopt;  // not an ellipse
    if (A < 0.0) {  // normalize so the quadratic form is positive definite
        A = -A;
        B = -B;
        C = -C;
        D = -D;
        E = -E;
        F = -F;
    }
    double x0 = (2.0 * C * D - B * E) / den;
    double y0 = (2.0 * A * E - B * D) / den;
    double fc = A * x0 * x0 + B * x0 * y0 + C * y0 * y0 + D * x0 + E * y0 + F;
    Eigen2 eg = eigen_2x2(A, B / 2.0, C);
    double r1sq = -fc / eg.lambda1;
    double r2sq = -fc / eg.lambda2;
    if (!(r1sq > 0.0) || !(r2sq > 0.0)) return std::nullopt;
    // the smaller eigenvalue carries the major axis
    Ellipse e;
    e.center = {x0, y0};
    e.a = std::sqrt(r1sq);
    e.b = std::sqrt(r2sq);
    Vec2 major = eg.v1;
    if (e.b > e.a) {
        std::swap(e.a, e.b);
        major = eg.v2;
    }
    double theta = std::atan2(major.y, major.x);
    if (theta < 0.0) theta += kPi;
    if (theta >= kPi) theta -= kPi;
    e.orientation = theta;
    return e;
}

}  // namespace

std::optional<Ellipse> fit_ellipse(const std::vector<Vec2>& pts) {
    const std::size_t n = pts.size();
    if (n < 6) return std::nullopt;

    // center and scale for conditioning
    double mx = 0.0, my = 0.0;
    for (const Vec2& p : pts) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sx = 0.0, sy = 0.0;
    for (const Vec2& p : pts) {
        sx += std::abs(p.x - mx);
        sy += std::abs(p.y - my);
    }
    sx = std::max(sx / static_cast<double>(n), 1e-9);
    sy = std::max(sy / static_cast<double>(n), 1e-9);

    Eigen::MatrixXd d1(n, 3), d2(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
        double u = (pts[i].x - mx) / sx;
        double v = (pts[i].y - my) / sy;
        d1(i, 0) = u * u;
        d1(i, 1) = u * v;
        d1(i, 2) = v * v;
        d2(i, 0) = u;
        d2(i, 1) = v;
        d2(i, 2) = 1.0;
    }
    Eigen::Matrix3d s1 = d1.transpose() * d1;
    Eigen::Matrix3d s2 = d1.transpose() * d2;
    Eigen::Matrix3d s3 = d2.transpose() * d2;

    Eigen::FullPivLU<Eigen::Matrix3d> lu(s3);
    if (!lu.isInvertible()) return std::nullopt;  // collinear / degenerate
    Eigen::Matrix3d t = -lu.solve(s2.transpose());

    Eigen::Matrix3d c1inv;
    c1inv << 0.0, 0.0, 0.5, 0.0, -1.0, 0.0, 0.5, 0.0, 0.0;
    Eigen::Matrix3d m = c1inv * (s1 + s2 * t);

    Eigen::EigenSolver<Eigen::Matrix3d> es(m);
    if (es.info() != Eigen::Success) return std::nullopt;

    // the ellipse solution is the eigenvector with 4ac - b^2 > 0
    int pick = -1;
    double best_cond = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(es.eigenvalues()[i].imag()) > 1e-9) continue;
        Eigen::Vector3d v = es.eigenvectors().col(i).real();
        double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
        if (cond > best_cond) {
            best_cond = cond;
            pick = i;
        }
    }
    if (pick < 0) return std::nullopt;

    Eigen::Vector3d a1 = es.eigenvectors().col(pick).real();
    Eigen::Vector3d a2 = t * a1;

    double a = a1(0), b = a1(1), c = a1(2), d = a2(0), e = a2(1), f = a2(2);
    // undo the normalization x=(X-mx)/sx, y=(Y-my)/sy
    double A = a / (sx * sx);
    double B = b / (sx * sy);
    double C = c / (sy * sy);
    double D = -2.0 * a * mx / (sx * sx) - b * my / (sx * sy) + d / sx;
    double E = -b * mx / (sx * sy) - 2.0 * c * my / (sy * sy) + e / sy;
    double F = a * mx * mx / (sx * sx) + b * mx * my / (sx * sy) + c * my * my / (sy * sy) -
               d * mx / sx - e * my / sy + f;
    return conic_to_ellipse(A, B, C, D, E, F);
}

double ellipse_perimeter(const Ellipse& e) {
    double h = (e.a - e.b) * (e.a - e.b) / ((e.a + e.b) * (e.a + e.b));
    return kPi * (e.a + e.b) * (1.0 + 3.0 * h / (10.0 + std::sqrt(4.0 - 3.0 * h)));
}

bool ellipse_contains(const Ellipse& e, Vec2 p) {
    Vec2 d = p - e.center;
    double ct = std::cos(e.orientation), st = std::sin(e.orientation);
    double u = d.x * ct + d.y * st;
    double v = -d.x * st + d.y * ct;
    return (u * u) / (e.a * e.a) + (v * v) / (e.b * e.b) <= 1.0;
}

double quality_score(const QualityParams& params, double s_plus, double psi, double dx, double dy,
                     double dl, double eta) {
    double denom = (dx + dy) + params.gamma1 * dl + params.gamma2 * eta;
    return (params.mu * s_plus + params.nu * psi) / std::max(denom, 1e-3);
}

FitQuality fit_quality(const std::vector<Vec2>& region, Vec2 chord_a, Vec2 chord_b,
                       const Ellipse& e, const QualityParams& params) {
    auto region_px = rasterize_polygon(region);
    if (region_px.empty()) throw std::invalid_argument("fit_quality: empty region");

    // overlap over union, pixel-rasterized
    int xmin = region_px[0].x, xmax = region_px[0].x, ymin = region_px[0].y, ymax = region_px[0].y;
    for (PixelPoint p : region_px) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    xmin = std::min(xmin, static_cast<int>(std::floor(e.center.x - e.a)));
    xmax = std::max(xmax, static_cast<int>(std::ceil(e.center.x + e.a)));
    ymin = std::min(ymin, static_cast<int>(std::floor(e.center.y - e.a)));
    ymax = std::max(ymax, static_cast<int>(std::ceil(e.center.y + e.a)));

    const int w = xmax - xmin + 1, h = ymax - ymin + 1;
    std::vector<std::uint8_t> in_region(static_cast<std::size_t>(w) * h, 0);
    for (PixelPoint p : region_px)
        in_region[static_cast<std::size_t>(p.y - ymin) * w + (p.x - xmin)] = 1;
    std::int64_t inter = 0, uni = 0;
    for (int y = ymin; y <= ymax; ++y)
        for (int x = xmin; x <= xmax; ++x) {
            bool r = in_region[static_cast<std::size_t>(y - ymin) * w + (x - xmin)] != 0;
            bool el = ellipse_contains(e, {static_cast<double>(x), static_cast<double>(y)});
            inter += (r && el);
            uni += (r || el);
        }

    FitQuality q;
    q.s_plus = uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
    double psi_rad = angle_between(chord_a - e.center, chord_b - e.center);
    q.psi = params.psi_in_degrees ? rad_to_deg(psi_rad) : psi_rad / kPi;
    Vec2 rc = polygon_centroid(region);
    q.dx = std::abs(rc.x - e.center.x);
    q.dy = std::abs(rc.y - e.center.y);
    q.dl = std::abs(polygon_perimeter(region) - ellipse_perimeter(e));
    q.eta = e.b > 0.0 ? e.a / e.b : 1e9;
    q.q = quality_score(params, q.s_plus, q.psi, q.dx, q.dy, q.dl, q.eta);
    return q;
}

namespace {

struct Segment {
    Vec2 a, b;
};

bool shares_endpoint(const Segment& s, Vec2 p, Vec2* other) {
    if ((s.a - p).norm() < 1e-9) {
        *other = s.b;
        return true;
    }
    if ((s.b - p).norm() < 1e-9) {
        *other = s.a;
        return true;
    }
    return false;
}

bool same_chord(const Segment& s, Vec2 a, Vec2 b) {
    return ((s.a - a).norm() < 1e-9 && (s.b - b).norm() < 1e-9) ||
           ((s.a - b).norm() < 1e-9 && (s.b - a).norm() < 1e-9);
}

}  // namespace

std::vector<EvaluatedPair> select_connections(const std::vector<EvaluatedPair>& pool,
                                              const std::vector<PointPair>& c_minus,
                                              const QualityParams& params) {
    std::vector<const EvaluatedPair*> remaining;
    for (const EvaluatedPair& ep : pool)
        if (ep.quality.q > params.q_threshold) remaining.push_back(&ep);

    auto rank = [](const EvaluatedPair* e) {
        int lo = std::min(e->pair.a.contour_index, e->pair.b.contour_index);
        int hi = std::max(e->pair.a.contour_index, e->pair.b.contour_index);
        return std::tuple(-e->quality.q, lo, hi, e->contour_id);
    };
    std::sort(remaining.begin(), remaining.end(),
              [&](const EvaluatedPair* x, const EvaluatedPair* y) { return rank(x) < rank(y); });

    std::vector<Segment> committed_geo;
    for (const PointPair& pp : c_minus) committed_geo.push_back({pp.a.position, pp.b.position});

    const double min_angle = deg_to_rad(params.sharp_angle_min_deg);
    std::vector<EvaluatedPair> committed;
    for (const EvaluatedPair* ep : remaining) {
        Vec2 pa = ep->pair.a.position, pb = ep->pair.b.position;
        bool rejected = false;
        for (const Segment& s : committed_geo) {
            if (same_chord(s, pa, pb)) {  // this cut already exists
                rejected = true;
                break;
            }
            if (segments_cross(s.a, s.b, pa, pb)) {
                rejected = true;
                break;
            }
            Vec2 other;
            if (shares_endpoint(s, pa, &other) &&
                angle_between(other - pa, pb - pa) < min_angle) {
                rejected = true;
                break;
            }
            if (shares_endpoint(s, pb, &other) &&
                angle_between(other - pb, pa - pb) < min_angle) {
                rejected = true;
                break;
            }
        }
        if (rejected) continue;
        committed_geo.push_back({pa, pb});
        committed.push_back(*ep);
    }
    return committed;
}

}  // namespace clumpsplit
