#include "clumpsplit/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clumpsplit {

namespace {

// Second-order finite differences on a non-uniform 3-point stencil.
struct Stencil {
    double d1;  // first derivative
    double d2;  // second derivative
};

Stencil nonuniform_diff(double fm, double f0, double fp, double h1, double h2) {
    Stencil s;
    s.d1 = -h2 / (h1 * (h1 + h2)) * fm + (h2 - h1) / (h1 * h2) * f0 +
           h1 / (h2 * (h1 + h2)) * fp;
    s.d2 = 2.0 * (fm / (h1 * (h1 + h2)) - f0 / (h1 * h2) + fp / (h2 * (h1 + h2)));
    return s;
}

}  // namespace

CurvatureProfile compute_curvature(const Contour& c) {
    const int n = static_cast<int>(c.points.size());
    if (n < 8) throw std::invalid_argument("compute_curvature: contour too short");

    auto s = c.cumulative_arc();
    const double total = c.arc_length();

    CurvatureProfile prof;
    prof.total_length = total;
    prof.kappa.assign(n, 0.0);
    prof.arc.resize(n);
    for (int i = 0; i < n; ++i) prof.arc[i] = s[i] / total;

    constexpr double kMinStep = 1e-12;
    std::vector<char> valid(n, 0);
    for (int i = 0; i < n; ++i) {
        int im = (i + n - 1) % n;
        int ip = (i + 1) % n;
        double h1 = (i == 0) ? total - s[n - 1] : s[i] - s[i - 1];
        double h2 = (ip == 0) ? total - s[n - 1] : s[ip] - s[i];
        if (h1 < kMinStep || h2 < kMinStep) continue;  // coincident neighbors
        auto dx = nonuniform_diff(c.points[im].x, c.points[i].x, c.points[ip].x, h1, h2);
        auto dy = nonuniform_diff(c.points[im].y, c.points[i].y, c.points[ip].y, h1, h2);
        double speed2 = dx.d1 * dx.d1 + dy.d1 * dy.d1;
        if (speed2 < kMinStep) continue;
        prof.kappa[i] = (dx.d1 * dy.d2 - dy.d1 * dx.d2) / std::pow(speed2, 1.5);
        valid[i] = 1;
    }
    // degenerate samples inherit from the nearest valid neighbor
    for (int i = 0; i < n; ++i) {
        if (valid[i]) continue;
        for (int d = 1; d < n; ++d) {
            int lo = (i + n - d) % n, hi = (i + d) % n;
            if (valid[lo]) {
                prof.kappa[i] = prof.kappa[lo];
                break;
            }
            if (valid[hi]) {
                prof.kappa[i] = prof.kappa[hi];
                break;
            }
        }
    }
    return prof;
}

std::vector<IndexRange> find_concave_segments(const CurvatureProfile& p, double kappa_min) {
    if (kappa_min <= 0.0) throw std::invalid_argument("kappa_min must be positive");
    const int n = static_cast<int>(p.kappa.size());
    std::vector<IndexRange> runs;
    auto concave = [&](int i) { return p.kappa[i] <= -kappa_min; };

    int i = 0;
    while (i < n) {
        if (!concave(i)) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && concave(j + 1)) ++j;
        runs.push_back({i, j});
        i = j + 1;
    }
    if (runs.empty()) return runs;
    // merge across the seam when both ends are concave
    if (runs.size() >= 2 && runs.front().start == 0 && runs.back().end == n - 1) {
        runs.front().start = runs.back().start;  // wrapped range: start > end
        runs.pop_back();
    } else if (runs.size() == 1 && runs.front().start == 0 && runs.front().end == n - 1) {
        // fully concave contour: one run covering everything
    }
    std::erase_if(runs, [&](const IndexRange& r) {
        int len = r.end >= r.start ? r.end - r.start + 1 : n - r.start + r.end + 1;
        return len < 2;
    });
    return runs;
}

double weighted_arc_centroid(const std::vector<double>& t, const std::vector<double>& w) {
    const std::size_t n = t.size();
    if (n != w.size() || n == 0) throw std::invalid_argument("mismatched centroid inputs");
    if (n == 1) return t[0];
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double dt = t[i + 1] - t[i];
        double wa = std::abs(w[i]), wb = std::abs(w[i + 1]);
        num += 0.5 * (wa * t[i] + wb * t[i + 1]) * dt;
        den += 0.5 * (wa + wb) * dt;
    }
    if (den <= 0.0) return 0.5;  // flat weights: segment midpoint
    return num / den;
}

namespace {

std::vector<int> range_indices(IndexRange seg, int n) {
    std::vector<int> idx;
    int len = seg.end >= seg.start ? seg.end - seg.start + 1 : n - seg.start + seg.end + 1;
    idx.reserve(len);
    for (int k = 0; k < len; ++k) idx.push_back((seg.start + k) % n);
    return idx;
}

}  // namespace

CandidatePoint vote_candidate(const Contour& c, const CurvatureProfile& p, IndexRange seg) {
    const int n = static_cast<int>(p.kappa.size());
    auto idx = range_indices(seg, n);
    if (idx.empty()) throw std::invalid_argument("vote_candidate: empty segment");

    // local arc positions, remapped to [0,1] over the segment
    std::vector<double> local(idx.size()), weights(idx.size());
    local[0] = 0.0;
    for (std::size_t k = 1; k < idx.size(); ++k) {
        double step = p.arc[idx[k]] - p.arc[idx[k - 1]];
        if (step < 0.0) step += 1.0;  // seam wrap
        local[k] = local[k - 1] + step;
    }
    double span = local.back();
    if (span > 0.0)
        for (double& v : local) v /= span;
    for (std::size_t k = 0; k < idx.size(); ++k) weights[k] = std::abs(p.kappa[idx[k]]);

    double t_star = weighted_arc_centroid(local, weights);

    // nearest sample within the segment
    std::size_t best = 0;
    double best_d = std::abs(local[0] - t_star);
    for (std::size_t k = 1; k < idx.size(); ++k) {
        double d = std::abs(local[k] - t_star);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    int ci = idx[best];

    CandidatePoint cand;
    cand.position = c.points[ci];
    cand.contour_index = ci;
    cand.s_star = p.arc[ci];
    cand.kappa = p.kappa[ci];
    cand.normal = outward_normal(c, ci);
    return cand;
}

Vec2 outward_normal(const Contour& c, int i) {
    const int n = static_cast<int>(c.points.size());
    if (i < 0 || i >= n) throw std::invalid_argument("outward_normal: index out of range");
    const Vec2& pm = c.points[(i + n - 1) % n];
    const Vec2& pp = c.points[(i + 1) % n];
    Vec2 tangent = (pp - pm).normalized();
    if (tangent.norm() == 0.0) tangent = {1.0, 0.0};
    // foreground lies on the left under the orientation convention
    return {tangent.y, -tangent.x};
}

Vec2 outward_normal(const Contour& c, int i, const BinaryMask& mask) {
    Vec2 nrm = outward_normal(c, i);
    Vec2 probe = c.points[i] + nrm * 2.0;
    int px = static_cast<int>(std::lround(probe.x));
    int py = static_cast<int>(std::lround(probe.y));
    if (mask.at(px, py)) return nrm * -1.0;  // pointing into the foreground: flip
    return nrm;
}

std::vector<CandidatePoint> find_candidates(const Contour& c, const CurvatureProfile& p,
                                            double kappa_min, const BinaryMask* mask) {
    std::vector<CandidatePoint> out;
    for (IndexRange seg : find_concave_segments(p, kappa_min)) {
        CandidatePoint cand = vote_candidate(c, p, seg);
        if (mask) cand.normal = outward_normal(c, cand.contour_index, *mask);
        out.push_back(cand);
    }
    std::sort(out.begin(), out.end(),
              [](const CandidatePoint& a, const CandidatePoint& b) { return a.contour_index < b.contour_index; });
    return out;
}

}  // namespace clumpsplit
