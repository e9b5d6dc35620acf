#pragma once

#include <utility>
#include <vector>

#include "clumpsplit/curvature.hpp"

namespace clumpsplit {

struct PairingParams {
    double r1 = 45.0;  // px, inner search radius
    double r2 = 70.0;  // px, outer (ring) search radius
    double alpha = 100.0;
    double beta = 0.34;
    double v_threshold = 200.0;
    double walk_energy_threshold = 0.35;  // rad
    bool c1_requires_v = false;           // also gate inner-disc non-adjacent pairs on V
};

enum class PairKind { adjacent, nonadjacent_inner, nonadjacent_ring };

/// Candidate pair on one contour. Adjacent pairs are directional: the pair's
/// own arc runs forward (increasing index, circular) from a to b.
struct PointPair {
    CandidatePoint a;
    CandidatePoint b;
    PairKind kind = PairKind::adjacent;
    double distance = 0.0;     // Euclidean, px
    double v = 0.0;            // Eq-2 style score, non-adjacent pairs
    double walk_energy = 0.0;  // rad, adjacent pairs
};

/// One region of a contour partitioned by non-adjacent chords: a cyclic
/// sequence of parent-contour point indices. Consecutive entries that are
/// not successive contour indices are joined by a virtual (chord) edge.
struct SubContour {
    std::vector<int> seq;

    std::vector<Vec2> polygon(const Contour& c) const;
    std::vector<std::pair<int, int>> virtual_edges(int n_points) const;
};

/// Circularly consecutive candidates become adjacent pairs; fewer than two
/// candidates yield none. Exactly two candidates yield both directional
/// pairs (one per arc).
std::vector<PointPair> classify_adjacency(const std::vector<CandidatePoint>& cands);

/// Total convex turning, integral of max(kappa, 0) ds over the shorter arc
/// between the two points. Symmetric; radians.
double walking_energy(const Contour& c, const CurvatureProfile& p,
                      const CandidatePoint& a, const CandidatePoint& b);

/// Iteratively merge the lowest-energy close adjacent pair (E below
/// threshold, distance within r1), keeping the higher-|kappa| point, until
/// no pair qualifies. Ties break toward the lower contour index.
std::vector<CandidatePoint> merge_low_energy(std::vector<CandidatePoint> cands, const Contour& c,
                                             const CurvatureProfile& p, const PairingParams& params);

/// alpha * theta_deg / (D + beta * (|kappa_p| + |kappa_q|)); theta is the
/// angle between outward normals in degrees. Throws on a degenerate
/// denominator (coincident points).
double v_score(const CandidatePoint& p, const CandidatePoint& q, const PairingParams& params);

struct ScreenResult {
    std::vector<PointPair> c_plus;   // adjacent pairs kept for ellipse assessment
    std::vector<PointPair> c_minus;  // non-adjacent partition chords
};

/// Classify every candidate pair: adjacent pairs within r1 keep their
/// walking energy and survive with E >= threshold; non-adjacent pairs enter
/// C1- (D <= r1) or C2- (r1 < D <= r2 and V > v_threshold). Non-adjacent
/// chords whose straight segment leaves the foreground are discarded.
ScreenResult screen_pairs(const std::vector<CandidatePoint>& cands, const Contour& c,
                          const CurvatureProfile& p, const BinaryMask& mask,
                          const PairingParams& params);

/// Largest non-crossing subset of the chords, higher V kept first;
/// duplicates collapse. Deterministic tie-breaks by endpoint indices.
std::vector<PointPair> resolve_crossing_chords(const std::vector<PointPair>& c_minus);

/// Planar subdivision of the contour cycle by the C- chords. Crossing
/// (circularly interleaving) chords are resolved by keeping the higher V.
std::vector<SubContour> partition_contour(const Contour& c, const std::vector<PointPair>& c_minus);

/// Adjacent pairs re-derived inside one subcontour: circularly consecutive
/// candidates along the subcontour cycle. Walking energy accumulates over
/// contour arcs only; virtual edges contribute nothing.
std::vector<PointPair> subcontour_adjacent_pairs(const SubContour& sc,
                                                 const std::vector<CandidatePoint>& cands,
                                                 const Contour& c, const CurvatureProfile& p);

/// Boundary polygon of the region cut off by chord b->a: the subcontour
/// walk from a's contour index forward to b's, closed by the chord.
std::vector<Vec2> pair_region(const SubContour& sc, const Contour& c, int index_a, int index_b);

/// True if every sample along the open segment between the two points lies
/// in the foreground mask.
bool chord_inside_mask(const BinaryMask& mask, Vec2 a, Vec2 b);

}  // namespace clumpsplit
