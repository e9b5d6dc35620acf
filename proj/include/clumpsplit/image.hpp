#pragma once

#include <cstdint>
#include <vector>

#include "clumpsplit/geometry.hpp"

namespace clumpsplit {

/// Intensity image, row-major, channel-interleaved, values in [0,1].
struct RasterImage {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<float> data;

    static RasterImage zeros(int w, int h, int c = 1) {
        RasterImage img;
        img.width = w;
        img.height = h;
        img.channels = c;
        img.data.assign(static_cast<std::size_t>(w) * h * c, 0.0f);
        return img;
    }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    float at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    float& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
};

struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    static BinaryMask zeros(int w, int h) {
        BinaryMask m;
        m.width = w;
        m.height = h;
        m.bits.assign(static_cast<std::size_t>(w) * h, 0);
        return m;
    }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    /// Out-of-bounds reads as background.
    bool at(int x, int y) const {
        return in_bounds(x, y) && bits[static_cast<std::size_t>(y) * width + x] != 0;
    }
    void set(int x, int y, bool v) {
        bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
    }

    int area() const {
        int n = 0;
        for (auto b : bits) n += (b != 0);
        return n;
    }
};

/// Integer-labelled segmentation; 0 is background, labels are dense 1..max_label.
struct LabelMask {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    std::int32_t max_label = 0;

    static LabelMask zeros(int w, int h) {
        LabelMask m;
        m.width = w;
        m.height = h;
        m.labels.assign(static_cast<std::size_t>(w) * h, 0);
        return m;
    }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    std::int32_t at(int x, int y) const {
        return labels[static_cast<std::size_t>(y) * width + x];
    }
    std::int32_t& at(int x, int y) {
        return labels[static_cast<std::size_t>(y) * width + x];
    }

    /// Remap labels to dense 1..K preserving first-appearance scan order.
    void densify();
};

/// Connected components of a mask, labels assigned in row-major scan order of
/// each component's first pixel. connectivity is 4 or 8.
LabelMask label_components(const BinaryMask& mask, int connectivity);

}  // namespace clumpsplit
