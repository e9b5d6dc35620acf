#include "clumpsplit/image_prep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace clumpsplit {

std::vector<double> Contour::cumulative_arc() const {
    std::vector<double> s(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i)
        s[i] = s[i - 1] + (points[i] - points[i - 1]).norm();
    return s;
}

double Contour::arc_length() const {
    if (points.size() < 2) return 0.0;
    auto s = cumulative_arc();
    return s.back() + (points.front() - points.back()).norm();
}

RasterImage select_nuclear_channel(const RasterImage& img) {
    if (img.channels == 1) return img;
    if (img.channels != 3) throw std::invalid_argument("expected 1 or 3 channels");
    RasterImage out = RasterImage::zeros(img.width, img.height, 1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) out.at(x, y) = img.at(x, y, 2);
    return out;
}

std::optional<double> otsu_threshold(const RasterImage& img) {
    constexpr int kBins = 256;
    std::array<std::int64_t, kBins> hist{};
    for (float v : img.data) {
        int b = std::clamp(static_cast<int>(v * kBins), 0, kBins - 1);
        ++hist[b];
    }
    const double total = static_cast<double>(img.data.size());
    double sum_all = 0.0;
    for (int b = 0; b < kBins; ++b) sum_all += b * static_cast<double>(hist[b]);

    double best = 0.0, w0 = 0.0, sum0 = 0.0;
    int best_bin = -1;
    for (int t = 0; t < kBins - 1; ++t) {
        w0 += static_cast<double>(hist[t]);
        if (w0 == 0.0) continue;
        double w1 = total - w0;
        if (w1 == 0.0) break;
        sum0 += t * static_cast<double>(hist[t]);
        double mu0 = sum0 / w0;
        double mu1 = (sum_all - sum0) / w1;
        double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (between > best) {
            best = between;
            best_bin = t;
        }
    }
    if (best_bin < 0 || best <= 0.0) return std::nullopt;  // constant image
    return (best_bin + 1) / static_cast<double>(kBins);
}

namespace {

void drop_small_components(BinaryMask& mask, int min_area) {
    if (min_area <= 1) return;
    LabelMask cc = label_components(mask, 8);
    std::vector<int> areas(cc.max_label + 1, 0);
    for (std::int32_t v : cc.labels) ++areas[v];
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y) && areas[cc.at(x, y)] < min_area) mask.set(x, y, false);
}

void fill_small_holes(BinaryMask& mask, int max_hole) {
    if (max_hole <= 0) return;
    BinaryMask bg = BinaryMask::zeros(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) bg.set(x, y, !mask.at(x, y));
    LabelMask cc = label_components(bg, 4);
    std::vector<int> areas(cc.max_label + 1, 0);
    std::vector<char> touches_border(cc.max_label + 1, 0);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            std::int32_t v = cc.at(x, y);
            if (v == 0) continue;
            ++areas[v];
            if (x == 0 || y == 0 || x == mask.width - 1 || y == mask.height - 1)
                touches_border[v] = 1;
        }
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            std::int32_t v = cc.at(x, y);
            if (v != 0 && !touches_border[v] && areas[v] < max_hole) mask.set(x, y, true);
        }
}

}  // namespace

BinaryMask binarize(const RasterImage& img, const BinarizeParams& params) {
    if (img.channels != 1) throw std::invalid_argument("binarize expects a single channel");
    BinaryMask mask = BinaryMask::zeros(img.width, img.height);
    auto thr = otsu_threshold(img);
    if (!thr) return mask;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) mask.set(x, y, img.at(x, y) >= *thr);
    drop_small_components(mask, params.min_area);
    fill_small_holes(mask, params.max_hole);
    return mask;
}

namespace {

// Moore neighborhood in clockwise screen order (y grows downward).
const std::array<PixelPoint, 8> kMoore = {{{-1, 0}, {-1, -1}, {0, -1}, {1, -1},
                                           {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int moore_index(PixelPoint from, PixelPoint to) {
    for (int i = 0; i < 8; ++i)
        if (from.x + kMoore[i].x == to.x && from.y + kMoore[i].y == to.y) return i;
    return -1;
}

std::vector<PixelPoint> moore_trace(const BinaryMask& mask, const LabelMask& cc, std::int32_t label,
                                    PixelPoint start) {
    auto is_fg = [&](PixelPoint p) { return mask.at(p.x, p.y) && cc.at(p.x, p.y) == label; };

    std::vector<PixelPoint> chain{start};
    PixelPoint current = start;
    // scan order guarantees the west neighbor of the first pixel is background
    const PixelPoint start_backtrack{start.x - 1, start.y};
    PixelPoint backtrack = start_backtrack;
    const std::size_t guard = mask.bits.size() * 4 + 8;
    while (chain.size() < guard) {
        int bi = moore_index(current, backtrack);
        PixelPoint next{-1, -1};
        PixelPoint next_backtrack{};
        bool found = false;
        for (int k = 1; k <= 8; ++k) {
            int i = (bi + k) % 8;
            PixelPoint cand{current.x + kMoore[i].x, current.y + kMoore[i].y};
            if (is_fg(cand)) {
                // new backtrack: the (background) pixel examined just before the hit
                int j = (i + 7) % 8;
                next = cand;
                next_backtrack = {current.x + kMoore[j].x, current.y + kMoore[j].y};
                found = true;
                break;
            }
        }
        if (!found) break;  // isolated pixel
        // Jacob's criterion: the walk state has returned to its initial value
        if (next == start && next_backtrack == start_backtrack) break;
        chain.push_back(next);
        backtrack = next_backtrack;
        current = next;
    }
    return chain;
}

}  // namespace

std::vector<Contour> trace_contours(const BinaryMask& mask) {
    std::vector<Contour> out;
    LabelMask cc = label_components(mask, 8);
    std::vector<char> done(cc.max_label + 1, 0);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            std::int32_t label = cc.at(x, y);
            if (label == 0 || done[label]) continue;
            done[label] = 1;
            auto chain = moore_trace(mask, cc, label, {x, y});
            if (chain.size() < 8) continue;
            Contour c;
            c.points.reserve(chain.size());
            for (PixelPoint p : chain) c.points.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
            if (polygon_signed_area(c.points) < 0.0)
                std::reverse(c.points.begin(), c.points.end());
            out.push_back(std::move(c));
        }
    }
    return out;
}

Contour smooth_contour(const Contour& c, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("smooth_contour: sigma must be positive");
    const int n = static_cast<int>(c.points.size());
    if (n == 0) return c;
    auto kernel = gaussian_kernel(sigma);
    const int radius = static_cast<int>(kernel.size()) / 2;
    Contour out;
    out.points.resize(n);
    for (int i = 0; i < n; ++i) {
        double sx = 0.0, sy = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            const Vec2& p = c.points[((i + k) % n + n) % n];
            double w = kernel[k + radius];
            sx += w * p.x;
            sy += w * p.y;
        }
        out.points[i] = {sx, sy};
    }
    return out;
}

BinaryMask fill_contour(const Contour& c, int width, int height) {
    BinaryMask mask = BinaryMask::zeros(width, height);
    for (PixelPoint p : rasterize_polygon(c.points))
        if (mask.in_bounds(p.x, p.y)) mask.set(p.x, p.y, true);
    // boundary pixels themselves are foreground
    for (const Vec2& p : c.points) {
        int x = static_cast<int>(std::lround(p.x)), y = static_cast<int>(std::lround(p.y));
        if (mask.in_bounds(x, y)) mask.set(x, y, true);
    }
    return mask;
}

}  // namespace clumpsplit
