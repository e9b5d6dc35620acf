#include <doctest.h>

#include <cmath>

#include "clumpsplit/curvature.hpp"
#include "test_support.hpp"

using namespace clumpsplit;
using clumpsplit::testing::circle_contour;
using clumpsplit::testing::disc_mask;
using clumpsplit::testing::rotate_contour;

TEST_CASE("curvature of a circle is 1/R") {
    for (double radius : {10.0, 20.0, 50.0}) {
        Contour c = smooth_contour(circle_contour({100, 100}, radius), 2.0);
        auto prof = compute_curvature(c);
        double mean = 0.0;
        for (double k : prof.kappa) mean += k;
        mean /= static_cast<double>(prof.kappa.size());
        CHECK(mean == doctest::Approx(1.0 / radius).epsilon(0.03));
    }
}

TEST_CASE("curvature of a rounded rectangle's flat side is near zero") {
    BinaryMask m = BinaryMask::zeros(120, 60);
    for (int y = 20; y < 40; ++y)
        for (int x = 20; x < 100; ++x) m.set(x, y, true);
    auto contours = trace_contours(m);
    REQUIRE(contours.size() == 1);
    Contour c = smooth_contour(contours[0], 3.0);
    auto prof = compute_curvature(c);
    // probe the middle of the long side: the point closest to (60, 20)
    std::size_t best = 0;
    double bd = 1e18;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        double d = std::hypot(c.points[i].x - 60.0, c.points[i].y - 20.5);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    CHECK(std::abs(prof.kappa[best]) < 1e-3);
}

TEST_CASE("two-disc clump: notches are strongly concave, one candidate each") {
    // discs radius 20 centered 30 apart
    BinaryMask m = disc_mask(120, 120, {{45, 60}, {75, 60}}, 20.0);
    auto contours = trace_contours(m);
    REQUIRE(contours.size() == 1);
    Contour c = smooth_contour(contours[0], 3.0);
    auto prof = compute_curvature(c);

    auto segs = find_concave_segments(prof, 0.03);
    CHECK(segs.size() == 2);

    auto cands = find_candidates(c, prof, 0.03, &m);
    REQUIRE(cands.size() == 2);
    for (const CandidatePoint& cand : cands) {
        CHECK(cand.kappa < 0.0);
        CHECK(std::abs(cand.kappa) > 0.05);
        // notch points sit on the vertical waist line x = 60
        CHECK(std::abs(cand.position.x - 60.0) < 3.0);
    }
    // normals point into the waist opening: mutual angle above 90 degrees
    double ang = angle_between(cands[0].normal, cands[1].normal);
    CHECK(rad_to_deg(ang) > 90.0);
}

TEST_CASE("find_concave_segments basics") {
    CurvatureProfile p;
    const int n = 100;
    p.total_length = n;
    p.kappa.assign(n, 0.05);
    p.arc.resize(n);
    for (int i = 0; i < n; ++i) p.arc[i] = i / static_cast<double>(n);

    CHECK(find_concave_segments(p, 0.03).empty());  // fully convex

    for (int i = 40; i < 50; ++i) p.kappa[i] = -0.1;
    auto segs = find_concave_segments(p, 0.03);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].start == 40);
    CHECK(segs[0].end == 49);

    // a run wrapping the seam merges into one segment
    for (int i = 0; i < n; ++i) p.kappa[i] = 0.05;
    p.kappa[98] = p.kappa[99] = p.kappa[0] = p.kappa[1] = -0.1;
    segs = find_concave_segments(p, 0.03);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].start == 98);
    CHECK(segs[0].end == 1);

    // runs below two samples are dropped
    for (int i = 0; i < n; ++i) p.kappa[i] = 0.05;
    p.kappa[10] = -0.1;
    CHECK(find_concave_segments(p, 0.03).empty());
}

TEST_CASE("weighted arc centroid: linear, symmetric, spike") {
    const int n = 101;
    std::vector<double> t(n), w(n);
    for (int i = 0; i < n; ++i) t[i] = i / static_cast<double>(n - 1);

    for (int i = 0; i < n; ++i) w[i] = t[i];  // |kappa|(t) = t
    CHECK(weighted_arc_centroid(t, w) == doctest::Approx(2.0 / 3.0).epsilon(0.02));

    for (int i = 0; i < n; ++i) w[i] = 1.0 - std::abs(t[i] - 0.5);  // symmetric
    CHECK(weighted_arc_centroid(t, w) == doctest::Approx(0.5).epsilon(1e-9));

    for (int i = 0; i < n; ++i) w[i] = 1e-9;  // spike dominates
    w[30] = 100.0;
    CHECK(weighted_arc_centroid(t, w) == doctest::Approx(t[30]).epsilon(0.02));
}

TEST_CASE("vote_candidate lands inside its segment at the weighted position") {
    Contour c = circle_contour({50, 50}, 30.0);
    auto prof = compute_curvature(c);
    const int n = static_cast<int>(prof.kappa.size());
    // overwrite with a linear |kappa| ramp on [20, 80], concave
    for (int i = 0; i < n; ++i) prof.kappa[i] = 0.05;
    for (int i = 20; i <= 80; ++i)
        prof.kappa[i] = -0.2 * (i - 20) / 60.0 - 1e-6;

    CandidatePoint cand = vote_candidate(c, prof, {20, 80});
    double local = (cand.contour_index - 20) / 60.0;
    CHECK(local == doctest::Approx(2.0 / 3.0).epsilon(0.03));
    CHECK(cand.contour_index >= 20);
    CHECK(cand.contour_index <= 80);
    CHECK(cand.kappa == prof.kappa[cand.contour_index]);
}

TEST_CASE("outward normals on a circle are radial") {
    Contour c = circle_contour({0, 0}, 40.0);
    auto idx_at_angle = [&](double ang) {
        std::size_t best = 0;
        double bd = 1e18;
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            Vec2 want{40.0 * std::cos(ang), 40.0 * std::sin(ang)};
            double d = (c.points[i] - want).norm();
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        return static_cast<int>(best);
    };
    Vec2 n0 = outward_normal(c, idx_at_angle(0.0));
    CHECK(std::abs(n0.x - 1.0) < 1e-2);
    CHECK(std::abs(n0.y) < 1e-2);
    Vec2 n90 = outward_normal(c, idx_at_angle(kPi / 2.0));
    CHECK(std::abs(n90.x) < 1e-2);
    CHECK(std::abs(n90.y - 1.0) < 1e-2);
}

TEST_CASE("candidates are rotation-equivariant within a pixel") {
    BinaryMask m = disc_mask(140, 140, {{55, 70}, {85, 70}}, 20.0);
    auto contours = trace_contours(m);
    REQUIRE(contours.size() == 1);
    Contour c = smooth_contour(contours[0], 3.0);
    auto cands = find_candidates(c, compute_curvature(c), 0.03);

    double angle = deg_to_rad(30.0);
    Contour cr = rotate_contour(c, {70, 70}, angle);
    if (polygon_signed_area(cr.points) < 0.0) std::reverse(cr.points.begin(), cr.points.end());
    auto cands_r = find_candidates(cr, compute_curvature(cr), 0.03);

    REQUIRE(cands.size() == cands_r.size());
    for (const CandidatePoint& cand : cands) {
        Vec2 d = cand.position - Vec2{70, 70};
        Vec2 expect{70.0 + d.x * std::cos(angle) - d.y * std::sin(angle),
                    70.0 + d.x * std::sin(angle) + d.y * std::cos(angle)};
        double best = 1e18;
        for (const CandidatePoint& cr2 : cands_r) best = std::min(best, (cr2.position - expect).norm());
        CHECK(best <= 1.0);
    }
}

TEST_CASE("s_star stays within its segment's arc span") {
    BinaryMask m = disc_mask(120, 120, {{45, 60}, {75, 60}}, 20.0);
    auto contours = trace_contours(m);
    Contour c = smooth_contour(contours[0], 3.0);
    auto prof = compute_curvature(c);
    for (IndexRange seg : find_concave_segments(prof, 0.03)) {
        CandidatePoint cand = vote_candidate(c, prof, seg);
        const int n = static_cast<int>(prof.kappa.size());
        int len = seg.end >= seg.start ? seg.end - seg.start + 1 : n - seg.start + seg.end + 1;
        int off = (cand.contour_index - seg.start + n) % n;
        CHECK(off >= 0);
        CHECK(off < len);
    }
}
