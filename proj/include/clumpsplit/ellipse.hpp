#pragma once

#include <optional>
#include <vector>

#include "clumpsplit/pairing.hpp"

namespace clumpsplit {

struct Ellipse {
    Vec2 center;
    double a = 0.0;            // semi-major, px
    double b = 0.0;            // semi-minor, px
    double orientation = 0.0;  // major-axis angle, radians in [0, pi)
};

/// Direct least-squares conic fit with the ellipse constraint
/// (Fitzgibbon, numerically stabilized). Empty on degenerate input or when
/// no ellipse solution exists.
std::optional<Ellipse> fit_ellipse(const std::vector<Vec2>& pts);

/// Ramanujan's second perimeter approximation.
double ellipse_perimeter(const Ellipse& e);

bool ellipse_contains(const Ellipse& e, Vec2 p);

struct QualityParams {
    double mu = 10.70;
    double nu = 10.70;
    double gamma1 = 0.67;
    double gamma2 = 3.40;
    double q_threshold = 0.7;
    double sharp_angle_min_deg = 20.0;
    bool psi_in_degrees = false;  // default: fraction of a half turn in [0,1]
};

struct FitQuality {
    double s_plus = 0.0;  // overlap / union
    double psi = 0.0;     // subtended angle at the ellipse center, configured unit
    double dx = 0.0;      // |centroid shift|, px
    double dy = 0.0;
    double dl = 0.0;      // |perimeter difference|, px
    double eta = 1.0;     // a / b
    double q = 0.0;
};

/// Recompute the score from its components (identity used by tests and for
/// the stored-Q invariant). Denominator floored at 1e-3.
double quality_score(const QualityParams& params, double s_plus, double psi, double dx, double dy,
                     double dl, double eta);

/// Eq-style fit quality of a candidate region closed by the chord (a, b)
/// against a fitted ellipse. The region polygon must rasterize non-empty.
FitQuality fit_quality(const std::vector<Vec2>& region, Vec2 chord_a, Vec2 chord_b,
                       const Ellipse& e, const QualityParams& params);

/// Adjacent pair with its cut-off region and fit assessment.
struct EvaluatedPair {
    PointPair pair;
    std::vector<Vec2> region;
    std::optional<Ellipse> ellipse;
    FitQuality quality;  // q = 0 when the fit failed
    int contour_id = 0;
};

/// Iterative greedy selection: commit the highest-Q pair above threshold,
/// pruning chords that cross a committed chord (or a partition chord) and
/// chords meeting a committed chord at a shared endpoint under the sharp
/// angle minimum. Deterministic; ties break toward lower endpoint indices.
std::vector<EvaluatedPair> select_connections(const std::vector<EvaluatedPair>& pool,
                                              const std::vector<PointPair>& c_minus,
                                              const QualityParams& params);

}  // namespace clumpsplit
