#include <doctest.h>

#include <cmath>
#include <random>

#include "clumpsplit/curve_trace.hpp"
#include "test_support.hpp"

using namespace clumpsplit;

TEST_CASE("hessian of analytic fields") {
    const int n = 64;

    SUBCASE("I = c*x^2 gives Ixx = 2c") {
        const double c = 1.0 / (63.0 * 63.0);
        RasterImage img = RasterImage::zeros(n, n, 1);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) img.at(x, y) = static_cast<float>(c * x * x);
        HessianField f = hessian_field(img, 2.0);
        for (int y = 16; y < 48; ++y)
            for (int x = 16; x < 48; ++x) {
                std::size_t i = f.idx(x, y);
                CHECK(f.ixx[i] == doctest::Approx(2.0 * c).epsilon(0.02));
                CHECK(std::abs(f.iyy[i]) < 0.02 * 2.0 * c);
                CHECK(std::abs(f.ixy[i]) < 0.02 * 2.0 * c);
            }
    }

    SUBCASE("I = c*x*y gives Ixy = c") {
        const double c = 1.0 / (63.0 * 63.0);
        RasterImage img = RasterImage::zeros(n, n, 1);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) img.at(x, y) = static_cast<float>(c * x * y);
        HessianField f = hessian_field(img, 2.0);
        for (int y = 16; y < 48; ++y)
            for (int x = 16; x < 48; ++x) {
                std::size_t i = f.idx(x, y);
                CHECK(f.ixy[i] == doctest::Approx(c).epsilon(0.02));
                CHECK(std::abs(f.ixx[i]) < 0.02 * c);
                CHECK(std::abs(f.iyy[i]) < 0.02 * c);
            }
    }

    SUBCASE("constant image gives a zero field") {
        RasterImage img = RasterImage::zeros(n, n, 1);
        for (float& v : img.data) v = 0.5f;
        HessianField f = hessian_field(img, 2.0);
        for (std::size_t i = 0; i < f.ixx.size(); ++i) {
            CHECK(std::abs(f.ixx[i]) < 1e-6);
            CHECK(std::abs(f.ixy[i]) < 1e-6);
            CHECK(std::abs(f.iyy[i]) < 1e-6);
        }
    }
}

TEST_CASE("eigen_2x2 closed form") {
    Eigen2 e = eigen_2x2(2.0, 0.0, 0.0);
    CHECK(e.lambda1 == doctest::Approx(0.0));
    CHECK(e.lambda2 == doctest::Approx(2.0));
    CHECK(std::abs(std::abs(e.v2.x) - 1.0) < 1e-12);
    CHECK(std::abs(e.v2.y) < 1e-12);

    e = eigen_2x2(0.0, 1.0, 0.0);
    CHECK(e.lambda1 == doctest::Approx(-1.0));
    CHECK(e.lambda2 == doctest::Approx(1.0));
    CHECK(std::abs(std::abs(e.v2.dot({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)})) - 1.0) < 1e-12);
}

TEST_CASE("eigen_2x2 reconstructs random symmetric matrices") {
    std::mt19937_64 rng(17);
    auto uni = [&]() { return (rng() >> 11) * (1.0 / 9007199254740992.0) * 4.0 - 2.0; };
    for (int trial = 0; trial < 2000; ++trial) {
        double a = uni(), b = uni(), c = uni();
        Eigen2 e = eigen_2x2(a, b, c);
        CHECK(e.lambda1 <= e.lambda2);
        CHECK(std::abs(e.v1.norm() - 1.0) < 1e-12);
        CHECK(std::abs(e.v2.norm() - 1.0) < 1e-12);
        CHECK(std::abs(e.v1.dot(e.v2)) < 1e-12);
        double raa = e.lambda1 * e.v1.x * e.v1.x + e.lambda2 * e.v2.x * e.v2.x;
        double rab = e.lambda1 * e.v1.x * e.v1.y + e.lambda2 * e.v2.x * e.v2.y;
        double rbb = e.lambda1 * e.v1.y * e.v1.y + e.lambda2 * e.v2.y * e.v2.y;
        CHECK(std::abs(raa - a) < 1e-12);
        CHECK(std::abs(rab - b) < 1e-12);
        CHECK(std::abs(rbb - c) < 1e-12);
    }
}

TEST_CASE("tracing follows a parabolic valley floor") {
    const int w = 80, h = 41;
    RasterImage img = RasterImage::zeros(w, h, 1);
    const double y0 = 20.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = static_cast<float>((y - y0) * (y - y0) * 0.01 + 0.5);
    HessianField f = hessian_field(img, 2.0);
    DividingPath path = trace_dividing_curve(f, {5, 20}, {74, 20});
    CHECK_FALSE(path.fallback);
    REQUIRE(path.pixels.front() == PixelPoint{5, 20});
    REQUIRE(path.pixels.back() == PixelPoint{74, 20});
    for (PixelPoint p : path.pixels) CHECK(std::abs(p.y - y0) <= 1.0);
}

TEST_CASE("tracing follows a multiplicative trench without fallback") {
    const int w = 96, h = 96;
    RasterImage img = RasterImage::zeros(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double trench = 1.0 - 0.15 * std::exp(-(x - 48.0) * (x - 48.0) / (2.0 * 1.5 * 1.5));
            img.at(x, y) = static_cast<float>(0.8 * trench);
        }
    HessianField f = hessian_field(img, 2.0);
    DividingPath path = trace_dividing_curve(f, {48, 8}, {48, 88});
    CHECK_FALSE(path.fallback);
    for (PixelPoint p : path.pixels) CHECK(std::abs(p.x - 48) <= 1);
}

TEST_CASE("uniform image falls back to the straight chord") {
    RasterImage img = RasterImage::zeros(64, 64, 1);
    for (float& v : img.data) v = 0.5f;
    HessianField f = hessian_field(img, 2.0);
    DividingPath path = trace_dividing_curve(f, {8, 8}, {50, 30});
    CHECK(path.fallback);
    CHECK(path.pixels == bresenham_line({8, 8}, {50, 30}));
}

TEST_CASE("two-blob saddle: path stays near the minimum-intensity column") {
    const int w = 128, h = 128;
    RasterImage img = RasterImage::zeros(w, h, 1);
    const double sigma = 15.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double g1 = std::exp(-((x - 44.0) * (x - 44.0) + (y - 64.0) * (y - 64.0)) / (2 * sigma * sigma));
            double g2 = std::exp(-((x - 84.0) * (x - 84.0) + (y - 64.0) * (y - 64.0)) / (2 * sigma * sigma));
            img.at(x, y) = static_cast<float>(0.1 + 0.4 * (g1 + g2));
        }
    // oracle: the saddle line is the per-row argmin between the blobs
    for (int y = 40; y <= 88; ++y) {
        int best_x = 40;
        for (int x = 40; x <= 88; ++x)
            if (img.at(x, y) < img.at(best_x, y)) best_x = x;
        CHECK(std::abs(best_x - 64) <= 1);
    }
    HessianField f = hessian_field(img, 2.0);
    DividingPath path = trace_dividing_curve(f, {64, 40}, {64, 88});
    for (PixelPoint p : path.pixels) CHECK(std::abs(p.x - 64) <= 2);
}

TEST_CASE("traced steps obey the sector contract and the budget") {
    const int w = 96, h = 96;
    RasterImage img = RasterImage::zeros(w, h, 1);
    std::mt19937_64 rng(3);
    for (float& v : img.data) v = static_cast<float>((rng() >> 11) * (1.0 / 9007199254740992.0));
    HessianField f = hessian_field(img, 2.0);
    PixelPoint p{10, 12}, q{80, 70};
    DividingPath path = trace_dividing_curve(f, p, q);
    REQUIRE(path.pixels.front() == p);
    REQUIRE(path.pixels.back() == q);
    const double dist = std::hypot(q.x - p.x, q.y - p.y);
    CHECK(static_cast<double>(path.pixels.size() - 1) <= 4.0 * dist + 1.0);
    for (std::size_t i = 0; i + 1 < path.pixels.size(); ++i) {
        PixelPoint a = path.pixels[i], b = path.pixels[i + 1];
        CHECK(std::abs(a.x - b.x) <= 1);
        CHECK(std::abs(a.y - b.y) <= 1);
        double bearing = std::atan2(q.y - a.y, q.x - a.x);
        double step = std::atan2(b.y - a.y, b.x - a.x);
        double dev = std::abs(std::remainder(step - bearing, 2.0 * kPi));
        CHECK(dev <= deg_to_rad(45.0) + 1e-9);
    }
    // no repeated pixels
    for (std::size_t i = 0; i < path.pixels.size(); ++i)
        for (std::size_t j = i + 1; j < path.pixels.size(); ++j)
            CHECK_FALSE(path.pixels[i] == path.pixels[j]);

    CHECK_THROWS_AS(trace_dividing_curve(f, {-1, 0}, {5, 5}), std::invalid_argument);
}

TEST_CASE("apply_divisions") {
    SUBCASE("no paths keeps one label per component") {
        BinaryMask m = testing::disc_mask(100, 60, {{25, 30}, {75, 30}}, 14.0);
        LabelMask labels = apply_divisions(m, {});
        CHECK(labels.max_label == 2);
        int area = 0;
        for (std::int32_t v : labels.labels) area += (v != 0);
        CHECK(area == m.area());
    }

    SUBCASE("one path bisecting a disc yields two labels conserving area") {
        BinaryMask m = testing::disc_mask(80, 80, {{40, 40}}, 25.0);
        DividingPath dp;
        dp.pixels = bresenham_line({40, 10}, {40, 70});
        LabelMask labels = apply_divisions(m, {dp});
        CHECK(labels.max_label == 2);
        int area = 0;
        for (std::int32_t v : labels.labels) area += (v != 0);
        CHECK(area == m.area());
        // no zero-width gap: every former path pixel is labelled
        for (PixelPoint p : dp.pixels)
            if (m.at(p.x, p.y)) CHECK(labels.at(p.x, p.y) != 0);
    }

    SUBCASE("a diagonal path still separates") {
        BinaryMask m = testing::disc_mask(80, 80, {{40, 40}}, 25.0);
        DividingPath dp;
        dp.pixels = bresenham_line({22, 22}, {58, 58});
        LabelMask labels = apply_divisions(m, {dp});
        CHECK(labels.max_label == 2);
    }

    SUBCASE("two paths cut a three-disc chain into three labels") {
        BinaryMask m = testing::disc_mask(160, 80, {{40, 40}, {68, 40}, {96, 40}}, 18.0);
        auto contours = trace_contours(m);
        REQUIRE(contours.size() == 1);
        DividingPath d1, d2;
        d1.pixels = bresenham_line({54, 22}, {54, 58});
        d2.pixels = bresenham_line({82, 22}, {82, 58});
        LabelMask labels = apply_divisions(m, {d1, d2}, 50);
        CHECK(labels.max_label == 3);
    }
}
