#pragma once

#include <string>

namespace clumpsplit {

/// Every pipeline tunable in one place. The r/alpha/beta/V/mu/nu/gamma/Q/
/// sector values are the published operating point; the rest are this
/// implementation's defaults. Serialization round-trips byte-identically.
struct PipelineConfig {
    double r1 = 45.0;
    double r2 = 70.0;
    double alpha = 100.0;
    double beta = 0.34;
    double v_threshold = 200.0;
    double mu = 10.70;
    double nu = 10.70;
    double gamma1 = 0.67;
    double gamma2 = 3.40;
    double q_threshold = 0.7;
    double sector_deg = 45.0;

    double contour_sigma = 3.0;
    double hessian_sigma = 2.0;
    double kappa_min = 0.03;
    double walk_energy_threshold = 0.35;
    double sharp_angle_min = 20.0;
    double lambda1_rel_tol = 0.15;
    double iou_min = 0.5;
    int min_area = 50;
    int max_hole = 30;

    bool psi_in_degrees = false;  // Eq-3 fitting angle unit: half-turns (default) or degrees
    bool c1_requires_v = false;   // apply the V threshold to inner-disc non-adjacent pairs too

    /// Throws std::invalid_argument on violated invariants
    /// (r1 < r2, non-negative weights, sector in (0, 90]).
    void validate() const;

    std::string serialize() const;
    static PipelineConfig parse(const std::string& text);
    static PipelineConfig load(const std::string& path);
    void save(const std::string& path) const;
};

}  // namespace clumpsplit
