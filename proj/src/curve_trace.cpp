#include "clumpsplit/curve_trace.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace clumpsplit {

namespace {

// separable Gaussian blur with clamped borders
std::vector<float> gaussian_blur(const RasterImage& img, double sigma) {
    auto kernel = gaussian_kernel(sigma);
    const int radius = static_cast<int>(kernel.size()) / 2;
    const int w = img.width, h = img.height;
    std::vector<float> tmp(static_cast<std::size_t>(w) * h), out(tmp.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int k = -radius; k <= radius; ++k)
                s += kernel[k + radius] * img.at(std::clamp(x + k, 0, w - 1), y);
            tmp[static_cast<std::size_t>(y) * w + x] = static_cast<float>(s);
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int k = -radius; k <= radius; ++k)
                s += kernel[k + radius] * tmp[static_cast<std::size_t>(std::clamp(y + k, 0, h - 1)) * w + x];
            out[static_cast<std::size_t>(y) * w + x] = static_cast<float>(s);
        }
    return out;
}

}  // namespace

HessianField hessian_field(const RasterImage& img, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("hessian_field: sigma must be positive");
    if (img.channels != 1) throw std::invalid_argument("hessian_field expects a single channel");
    const int w = img.width, h = img.height;
    auto smooth = gaussian_blur(img, sigma);
    auto v = [&](int x, int y) {
        return static_cast<double>(smooth[static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * w +
                                          std::clamp(x, 0, w - 1)]);
    };
    HessianField f;
    f.width = w;
    f.height = h;
    f.sigma = sigma;
    f.ixx.resize(static_cast<std::size_t>(w) * h);
    f.ixy.resize(f.ixx.size());
    f.iyy.resize(f.ixx.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t i = f.idx(x, y);
            f.ixx[i] = static_cast<float>(v(x + 1, y) - 2.0 * v(x, y) + v(x - 1, y));
            f.iyy[i] = static_cast<float>(v(x, y + 1) - 2.0 * v(x, y) + v(x, y - 1));
            f.ixy[i] = static_cast<float>(
                (v(x + 1, y + 1) - v(x - 1, y + 1) - v(x + 1, y - 1) + v(x - 1, y - 1)) / 4.0);
        }
    return f;
}

Eigen2 eigen_2x2(double ixx, double ixy, double iyy) {
    Eigen2 e;
    double mean = 0.5 * (ixx + iyy);
    double half_diff = 0.5 * (ixx - iyy);
    double r = std::hypot(half_diff, ixy);
    e.lambda1 = mean - r;
    e.lambda2 = mean + r;
    if (std::abs(ixy) < 1e-300) {  // already diagonal
        if (ixx <= iyy) {
            e.v1 = {1.0, 0.0};
            e.v2 = {0.0, 1.0};
        } else {
            e.v1 = {0.0, 1.0};
            e.v2 = {1.0, 0.0};
        }
        return e;
    }
    // eigenvector for lambda2: (ixx - lambda2) x + ixy y = 0
    Vec2 c1{ixy, e.lambda2 - ixx};
    Vec2 c2{e.lambda2 - iyy, ixy};
    e.v2 = (c1.norm2() >= c2.norm2() ? c1 : c2).normalized();
    e.v1 = {-e.v2.y, e.v2.x};
    return e;
}

namespace {

// 8 neighbor steps, screen order
const PixelPoint kSteps[8] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};

double wrap_angle(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}

struct PixelHash {
    std::size_t operator()(const PixelPoint& p) const {
        return std::hash<std::int64_t>()((static_cast<std::int64_t>(p.x) << 32) ^ p.y);
    }
};

}  // namespace

DividingPath trace_dividing_curve(const HessianField& field, PixelPoint p, PixelPoint q,
                                  const TraceParams& params) {
    auto inside = [&](PixelPoint t) {
        return t.x >= 0 && t.x < field.width && t.y >= 0 && t.y < field.height;
    };
    if (!inside(p) || !inside(q))
        throw std::invalid_argument("trace_dividing_curve: endpoint outside the image");

    DividingPath path;
    if (p == q) {
        path.pixels = {p};
        return path;
    }

    const double dist_pq = std::hypot(q.x - p.x, q.y - p.y);
    const int budget = std::max(2, static_cast<int>(std::ceil(params.step_budget_factor * dist_pq)));
    const double max_dev = deg_to_rad(params.max_dev_deg) + 1e-9;

    auto fallback = [&]() {
        DividingPath fb;
        fb.pixels = bresenham_line(p, q);
        fb.fallback = true;
        return fb;
    };

    std::unordered_set<PixelPoint, PixelHash> visited;
    path.pixels.push_back(p);
    visited.insert(p);
    PixelPoint current = p;
    while (static_cast<int>(path.pixels.size()) < budget) {
        if (std::abs(current.x - q.x) <= 1 && std::abs(current.y - q.y) <= 1) {
            if (!(current == q)) path.pixels.push_back(q);
            return path;
        }
        double bearing = std::atan2(static_cast<double>(q.y - current.y),
                                    static_cast<double>(q.x - current.x));
        // candidate steps inside the sector, nearest-to-bearing first,
        // clockwise preferred on equal deviation
        struct Cand {
            PixelPoint px;
            double dev;
            int cw_rank;
        };
        std::vector<Cand> cands;
        for (const PixelPoint& st : kSteps) {
            PixelPoint nxt{current.x + st.x, current.y + st.y};
            if (!inside(nxt) || visited.count(nxt)) continue;
            double ang = std::atan2(static_cast<double>(st.y), static_cast<double>(st.x));
            double dev = wrap_angle(ang - bearing);
            if (std::abs(dev) > max_dev) continue;
            cands.push_back({nxt, std::abs(dev), dev >= 0.0 ? 0 : 1});
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.dev != b.dev) return a.dev < b.dev;
            return a.cw_rank < b.cw_rank;
        });

        const PixelPoint* best = nullptr;
        double best_l2 = 0.0;
        for (const Cand& cd : cands) {
            std::size_t i = field.idx(cd.px.x, cd.px.y);
            Eigen2 eg = eigen_2x2(field.ixx[i], field.ixy[i], field.iyy[i]);
            if (eg.lambda2 <= 0.0) continue;  // need a valley, not a ridge
            double tol = params.lambda1_rel_tol * std::max(std::abs(eg.lambda2), 1e-12);
            if (std::abs(eg.lambda1) > tol) continue;
            if (!best || eg.lambda2 > best_l2) {  // ties keep the earlier (nearer-bearing) candidate
                best = &cd.px;
                best_l2 = eg.lambda2;
            }
        }
        if (!best) return fallback();
        path.pixels.push_back(*best);
        visited.insert(*best);
        current = *best;
    }
    return fallback();
}

namespace {

// Diagonal adjacency is blocked when a path pixel occupies either shared
// orthogonal neighbor, so a 1-px 8-connected cut actually separates.
LabelMask label_with_cuts(const BinaryMask& fg, const BinaryMask& cut) {
    LabelMask out = LabelMask::zeros(fg.width, fg.height);
    std::int32_t next = 0;
    std::queue<PixelPoint> frontier;
    auto open = [&](int x, int y) { return fg.at(x, y) && !cut.at(x, y); };
    for (int y0 = 0; y0 < fg.height; ++y0)
        for (int x0 = 0; x0 < fg.width; ++x0) {
            if (!open(x0, y0) || out.at(x0, y0) != 0) continue;
            ++next;
            out.at(x0, y0) = next;
            frontier.push({x0, y0});
            while (!frontier.empty()) {
                PixelPoint p = frontier.front();
                frontier.pop();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        int nx = p.x + dx, ny = p.y + dy;
                        if (!open(nx, ny) || !out.in_bounds(nx, ny) || out.at(nx, ny) != 0) continue;
                        if (dx != 0 && dy != 0 &&
                            (cut.at(p.x + dx, p.y) || cut.at(p.x, p.y + dy)))
                            continue;
                        out.at(nx, ny) = next;
                        frontier.push({nx, ny});
                    }
            }
        }
    out.max_label = next;
    return out;
}

}  // namespace

LabelMask apply_divisions(const BinaryMask& mask, const std::vector<DividingPath>& paths,
                          int min_fragment_area) {
    BinaryMask cut = BinaryMask::zeros(mask.width, mask.height);
    for (const DividingPath& dp : paths)
        for (PixelPoint p : dp.pixels)
            if (mask.at(p.x, p.y)) cut.set(p.x, p.y, true);  // clamp to foreground

    LabelMask labels = label_with_cuts(mask, cut);

    // component centroids
    std::vector<double> cx(labels.max_label + 1, 0.0), cy(labels.max_label + 1, 0.0);
    std::vector<int> area(labels.max_label + 1, 0);
    for (int y = 0; y < labels.height; ++y)
        for (int x = 0; x < labels.width; ++x) {
            std::int32_t v = labels.at(x, y);
            if (v == 0) continue;
            cx[v] += x;
            cy[v] += y;
            ++area[v];
        }
    for (int v = 1; v <= labels.max_label; ++v)
        if (area[v] > 0) {
            cx[v] /= area[v];
            cy[v] /= area[v];
        }

    // hand each path pixel to the adjacent component with the nearest centroid
    std::vector<PixelPoint> pending;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (cut.at(x, y)) pending.push_back({x, y});
    while (!pending.empty()) {
        std::vector<PixelPoint> still;
        bool progress = false;
        for (PixelPoint p : pending) {
            std::int32_t best = 0;
            double best_d = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    int nx = p.x + dx, ny = p.y + dy;
                    if (!labels.in_bounds(nx, ny)) continue;
                    std::int32_t v = labels.at(nx, ny);
                    if (v == 0) continue;
                    double d = std::hypot(p.x - cx[v], p.y - cy[v]);
                    if (best == 0 || d < best_d) {
                        best = v;
                        best_d = d;
                    }
                }
            if (best != 0) {
                labels.at(p.x, p.y) = best;
                progress = true;
            } else {
                still.push_back(p);
            }
        }
        if (!progress) break;  // isolated cut pixels with no labelled neighbor
        pending = std::move(still);
    }

    // absorb sub-threshold fragments into the neighbor with the longest shared border
    if (min_fragment_area > 0) {
        for (int round = 0; round < 8; ++round) {
            std::vector<int> areas(labels.max_label + 1, 0);
            for (std::int32_t v : labels.labels) ++areas[v];
            bool changed = false;
            for (std::int32_t frag = 1; frag <= labels.max_label; ++frag) {
                if (areas[frag] == 0 || areas[frag] >= min_fragment_area) continue;
                std::vector<int> contact(labels.max_label + 1, 0);
                for (int y = 0; y < labels.height; ++y)
                    for (int x = 0; x < labels.width; ++x) {
                        if (labels.at(x, y) != frag) continue;
                        for (int dy = -1; dy <= 1; ++dy)
                            for (int dx = -1; dx <= 1; ++dx) {
                                if (!labels.in_bounds(x + dx, y + dy)) continue;
                                std::int32_t v = labels.at(x + dx, y + dy);
                                if (v != 0 && v != frag) ++contact[v];
                            }
                    }
                int target = 0;
                for (std::int32_t v = 1; v <= labels.max_label; ++v)
                    if (contact[v] > (target == 0 ? 0 : contact[target])) target = v;
                if (target != 0) {
                    for (std::int32_t& v : labels.labels)
                        if (v == frag) v = target;
                    changed = true;
                }
            }
            if (!changed) break;
        }
    }

    labels.densify();
    return labels;
}

}  // namespace clumpsplit
