#include "clumpsplit/image.hpp"

#include <queue>
#include <unordered_map>

namespace clumpsplit {

void LabelMask::densify() {
    std::unordered_map<std::int32_t, std::int32_t> remap;
    std::int32_t next = 1;
    for (std::int32_t& v : labels) {
        if (v == 0) continue;
        auto it = remap.find(v);
        if (it == remap.end()) it = remap.emplace(v, next++).first;
        v = it->second;
    }
    max_label = next - 1;
}

LabelMask label_components(const BinaryMask& mask, int connectivity) {
    static const int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
    static const int dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};
    const int ndirs = connectivity == 4 ? 4 : 8;

    LabelMask out = LabelMask::zeros(mask.width, mask.height);
    std::int32_t next = 0;
    std::queue<PixelPoint> frontier;
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            if (!mask.at(x, y) || out.at(x, y) != 0) continue;
            ++next;
            out.at(x, y) = next;
            frontier.push({x, y});
            while (!frontier.empty()) {
                PixelPoint p = frontier.front();
                frontier.pop();
                for (int d = 0; d < ndirs; ++d) {
                    int nx = p.x + dx8[d], ny = p.y + dy8[d];
                    if (mask.at(nx, ny) && out.in_bounds(nx, ny) && out.at(nx, ny) == 0) {
                        out.at(nx, ny) = next;
                        frontier.push({nx, ny});
                    }
                }
            }
        }
    }
    out.max_label = next;
    return out;
}

}  // namespace clumpsplit
