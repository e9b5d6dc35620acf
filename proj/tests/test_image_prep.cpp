#include <doctest.h>

#include <cmath>

#include "clumpsplit/curvature.hpp"
#include "clumpsplit/image_prep.hpp"
#include "clumpsplit/metrics.hpp"
#include "test_support.hpp"

using namespace clumpsplit;
using clumpsplit::testing::circle_contour;
using clumpsplit::testing::rotate_contour;

TEST_CASE("select_nuclear_channel picks the blue plane") {
    RasterImage img = RasterImage::zeros(2, 1, 3);
    img.at(0, 0, 0) = 0.9f;
    img.at(0, 0, 1) = 0.1f;
    img.at(0, 0, 2) = 0.4f;
    RasterImage ch = select_nuclear_channel(img);
    CHECK(ch.channels == 1);
    CHECK(ch.at(0, 0) == doctest::Approx(0.4));

    RasterImage gray = RasterImage::zeros(3, 3, 1);
    gray.at(1, 1) = 0.5f;
    RasterImage same = select_nuclear_channel(gray);
    CHECK(same.at(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("otsu separates a bimodal image and rejects a constant one") {
    RasterImage img = RasterImage::zeros(40, 10, 1);
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 40; ++x) img.at(x, y) = x < 20 ? 0.1f : 0.9f;
    BinaryMask m = binarize(img, {0, 0});
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 40; ++x) CHECK(m.at(x, y) == (x >= 20));

    RasterImage flat = RasterImage::zeros(8, 8, 1);
    CHECK_FALSE(otsu_threshold(flat).has_value());
    CHECK(binarize(flat).area() == 0);
}

TEST_CASE("binarize recovers a noisy synthetic ellipse against the analytic truth") {
    SyntheticSpec spec;
    spec.width = spec.height = 120;
    spec.background = 0.05;
    spec.noise_sigma = 0.02;
    spec.seed = 7;
    NucleusSpec nu;
    nu.center = {60, 60};
    nu.semi_a = 30;
    nu.semi_b = 20;
    nu.orientation = deg_to_rad(25);
    nu.peak = 0.75;
    spec.nuclei = {nu};
    auto sample = generate_synthetic_clump(spec);

    BinaryMask m = binarize(sample.image);
    std::int64_t inter = 0, uni = 0;
    for (int y = 0; y < 120; ++y)
        for (int x = 0; x < 120; ++x) {
            bool got = m.at(x, y);
            bool want = sample.truth.at(x, y) != 0;
            inter += (got && want);
            uni += (got || want);
        }
    double iou = static_cast<double>(inter) / static_cast<double>(uni);
    CHECK(iou >= 0.95);
}

TEST_CASE("binarize is idempotent on its own output") {
    SyntheticSpec spec;
    spec.width = spec.height = 100;
    spec.seed = 11;
    NucleusSpec nu;
    nu.center = {50, 50};
    nu.semi_a = 22;
    nu.semi_b = 18;
    spec.nuclei = {nu};
    auto sample = generate_synthetic_clump(spec);
    BinaryMask m1 = binarize(sample.image);

    RasterImage as_img = RasterImage::zeros(100, 100, 1);
    for (int y = 0; y < 100; ++y)
        for (int x = 0; x < 100; ++x) as_img.at(x, y) = m1.at(x, y) ? 1.0f : 0.0f;
    BinaryMask m2 = binarize(as_img);
    CHECK(m1.bits == m2.bits);
}

TEST_CASE("trace_contours on a 10x10 square yields the 36-pixel ring") {
    BinaryMask m = BinaryMask::zeros(20, 20);
    for (int y = 5; y < 15; ++y)
        for (int x = 5; x < 15; ++x) m.set(x, y, true);
    auto contours = trace_contours(m);
    REQUIRE(contours.size() == 1);
    CHECK(contours[0].points.size() == 36);
    CHECK(contours[0].arc_length() == doctest::Approx(36.0));
    CHECK(polygon_signed_area(contours[0].points) > 0.0);
}

TEST_CASE("trace_contours: empty mask and two blobs") {
    BinaryMask empty = BinaryMask::zeros(16, 16);
    CHECK(trace_contours(empty).empty());

    BinaryMask m = testing::disc_mask(80, 40, {{20, 20}, {60, 20}}, 10.0);
    CHECK(trace_contours(m).size() == 2);
}

TEST_CASE("contour fill round-trip stays within 1.5 px Hausdorff") {
    BinaryMask m = testing::disc_mask(80, 80, {{40, 40}}, 22.0);
    auto contours = trace_contours(m);
    REQUIRE(contours.size() == 1);
    BinaryMask refilled = fill_contour(contours[0], 80, 80);
    auto again = trace_contours(refilled);
    REQUIRE(again.size() == 1);
    CHECK(hausdorff_distance(contours[0].points, again[0].points) <= 1.5);
}

TEST_CASE("smooth_contour matches the analytic circular convolution on a circle") {
    const double radius = 50.0;
    Contour c = circle_contour({100, 100}, radius);
    const int n = static_cast<int>(c.points.size());
    Contour s = smooth_contour(c, 3.0);
    REQUIRE(static_cast<int>(s.points.size()) == n);

    // closed-form result: the kernel only attenuates the fundamental
    auto kernel = gaussian_kernel(3.0);
    int radius_k = static_cast<int>(kernel.size()) / 2;
    double atten = 0.0;
    for (int k = -radius_k; k <= radius_k; ++k)
        atten += kernel[k + radius_k] * std::cos(2.0 * kPi * k / n);

    for (int i = 0; i < n; ++i) {
        double t = std::atan2(c.points[i].y - 100.0, c.points[i].x - 100.0);
        Vec2 expect{100.0 + atten * radius * std::cos(t), 100.0 + atten * radius * std::sin(t)};
        CHECK(std::abs(s.points[i].x - expect.x) < 1e-3);
        CHECK(std::abs(s.points[i].y - expect.y) < 1e-3);
    }
    // shrinkage below 0.5 % at this scale
    CHECK(1.0 - atten < 0.005);
}

TEST_CASE("smooth_contour in the sigma->0 limit is the identity") {
    Contour c = circle_contour({30, 30}, 12.0);
    Contour s = smooth_contour(c, 1e-6);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        CHECK(s.points[i].x == doctest::Approx(c.points[i].x).epsilon(1e-12));
        CHECK(s.points[i].y == doctest::Approx(c.points[i].y).epsilon(1e-12));
    }
}

TEST_CASE("smooth_contour commutes with rigid motion") {
    BinaryMask m = testing::disc_mask(90, 90, {{40, 40}, {58, 48}}, 16.0);
    auto contours = trace_contours(m);
    REQUIRE(contours.size() == 1);
    const Contour& c = contours[0];
    double angle = deg_to_rad(37.0);
    Contour rotated = rotate_contour(c, {45, 45}, angle);
    Contour a = smooth_contour(rotated, 3.0);
    Contour b = rotate_contour(smooth_contour(c, 3.0), {45, 45}, angle);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(std::abs(a.points[i].x - b.points[i].x) < 1e-6);
        CHECK(std::abs(a.points[i].y - b.points[i].y) < 1e-6);
    }
}

TEST_CASE("smoothing a square strictly reduces the curvature extreme") {
    BinaryMask m = BinaryMask::zeros(60, 60);
    for (int y = 15; y < 45; ++y)
        for (int x = 15; x < 45; ++x) m.set(x, y, true);
    auto contours = trace_contours(m);
    REQUIRE(contours.size() == 1);
    Contour rough = smooth_contour(contours[0], 0.7);  // mild: keeps corners sharp
    Contour smooth = smooth_contour(contours[0], 3.0);
    auto peak = [](const Contour& c) {
        auto prof = compute_curvature(c);
        double m = 0.0;
        for (double k : prof.kappa) m = std::max(m, std::abs(k));
        return m;
    };
    CHECK(peak(smooth) < peak(rough));
}
