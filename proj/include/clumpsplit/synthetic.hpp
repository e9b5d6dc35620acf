#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clumpsplit/image.hpp"

namespace clumpsplit {

struct NucleusSpec {
    Vec2 center;
    double semi_a = 15.0;
    double semi_b = 12.0;
    double orientation = 0.0;  // radians
    double peak = 0.8;         // plateau intensity
};

/// Deterministic synthetic clump: smooth elliptical nuclei over a flat
/// background, a multiplicative intensity dip along overlap boundaries, and
/// seeded Gaussian noise. Ground truth labels overlapping pixels by the
/// nearest nucleus center.
struct SyntheticSpec {
    int width = 160;
    int height = 160;
    std::vector<NucleusSpec> nuclei;
    double background = 0.05;
    double noise_sigma = 0.02;
    double valley_dip = 0.15;     // fractional dip along overlap boundaries
    double edge_softness = 0.08;  // logistic edge width as a fraction of the radius
    std::uint64_t seed = 0;

    static SyntheticSpec from_json_file(const std::string& path);
    std::string to_json() const;
};

struct SyntheticSample {
    RasterImage image;
    LabelMask truth;
};

/// Throws if the spec has no nuclei or a nucleus extends outside the canvas.
SyntheticSample generate_synthetic_clump(const SyntheticSpec& spec);

}  // namespace clumpsplit
