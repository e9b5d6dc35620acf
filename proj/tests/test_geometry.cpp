#include <doctest.h>

#include "clumpsplit/geometry.hpp"

using namespace clumpsplit;

TEST_CASE("polygon area and centroid of a square") {
    std::vector<Vec2> sq = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    CHECK(polygon_signed_area(sq) == doctest::Approx(16.0));
    Vec2 c = polygon_centroid(sq);
    CHECK(c.x == doctest::Approx(2.0));
    CHECK(c.y == doctest::Approx(2.0));
    CHECK(polygon_perimeter(sq) == doctest::Approx(16.0));
}

TEST_CASE("rasterize_polygon counts interior pixel centers") {
    std::vector<Vec2> sq = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    auto px = rasterize_polygon(sq);
    // half-open scanline rule: 4x4 centers for the [0,4) x [0,4) box
    CHECK(px.size() == 16);
}

TEST_CASE("segments_cross") {
    CHECK(segments_cross({0, 0}, {2, 2}, {0, 2}, {2, 0}));
    CHECK_FALSE(segments_cross({0, 0}, {1, 1}, {2, 2}, {3, 1}));
    // shared endpoint is not a crossing
    CHECK_FALSE(segments_cross({0, 0}, {2, 2}, {2, 2}, {4, 0}));
}

TEST_CASE("bresenham endpoints and connectivity") {
    auto line = bresenham_line({1, 1}, {7, 4});
    CHECK(line.front() == PixelPoint{1, 1});
    CHECK(line.back() == PixelPoint{7, 4});
    for (std::size_t i = 1; i < line.size(); ++i) {
        CHECK(std::abs(line[i].x - line[i - 1].x) <= 1);
        CHECK(std::abs(line[i].y - line[i - 1].y) <= 1);
    }
}

TEST_CASE("gaussian kernel normalizes and peaks centrally") {
    auto k = gaussian_kernel(2.0);
    double sum = 0.0;
    for (double w : k) sum += w;
    CHECK(sum == doctest::Approx(1.0));
    CHECK(k[k.size() / 2] > k[0]);
}
