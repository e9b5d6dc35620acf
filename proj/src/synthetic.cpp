#include "clumpsplit/synthetic.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

namespace clumpsplit {

namespace {

// 53-bit uniform in [0,1) straight from the engine words, so the stream does
// not depend on the standard library's distribution implementations
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

double gaussian(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    while (u1 <= 1e-300) u1 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double elliptical_radius(const NucleusSpec& nu, double x, double y) {
    double dx = x - nu.center.x, dy = y - nu.center.y;
    double ct = std::cos(nu.orientation), st = std::sin(nu.orientation);
    double u = dx * ct + dy * st;
    double v = -dx * st + dy * ct;
    return std::sqrt((u * u) / (nu.semi_a * nu.semi_a) + (v * v) / (nu.semi_b * nu.semi_b));
}

}  // namespace

SyntheticSample generate_synthetic_clump(const SyntheticSpec& spec) {
    if (spec.nuclei.empty()) throw std::invalid_argument("synthetic spec has no nuclei");
    for (const NucleusSpec& nu : spec.nuclei) {
        double ct = std::cos(nu.orientation), st = std::sin(nu.orientation);
        double hx = std::hypot(nu.semi_a * ct, nu.semi_b * st);
        double hy = std::hypot(nu.semi_a * st, nu.semi_b * ct);
        if (nu.center.x - hx < 0.0 || nu.center.x + hx > spec.width - 1 ||
            nu.center.y - hy < 0.0 || nu.center.y + hy > spec.height - 1)
            throw std::invalid_argument("nucleus extends outside the canvas");
    }

    SyntheticSample out;
    out.image = RasterImage::zeros(spec.width, spec.height, 1);
    out.truth = LabelMask::zeros(spec.width, spec.height);

    const double tau = std::max(spec.edge_softness, 1e-4);
    const double valley_width = 1.5;  // px, half-width of the dip profile

    std::mt19937_64 rng(spec.seed);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            double signal = 0.0;
            int inside_count = 0;
            double d_best = std::numeric_limits<double>::max();
            double d_second = d_best;
            int owner = 0;
            for (std::size_t i = 0; i < spec.nuclei.size(); ++i) {
                const NucleusSpec& nu = spec.nuclei[i];
                double rho = elliptical_radius(nu, x, y);
                signal = std::max(signal, nu.peak / (1.0 + std::exp((rho - 1.0) / tau)));
                if (rho <= 1.0) {
                    ++inside_count;
                    double dc = (Vec2{static_cast<double>(x), static_cast<double>(y)} - nu.center).norm();
                    if (dc < d_best) {
                        d_second = d_best;
                        d_best = dc;
                        owner = static_cast<int>(i) + 1;
                    } else if (dc < d_second) {
                        d_second = dc;
                    }
                }
            }
            if (inside_count >= 2) {
                double gap = d_second - d_best;
                signal *= 1.0 - spec.valley_dip * std::exp(-(gap * gap) / (2.0 * valley_width * valley_width));
            }
            double v = spec.background + signal;
            if (spec.noise_sigma > 0.0) v += spec.noise_sigma * gaussian(rng);
            out.image.at(x, y) = static_cast<float>(std::clamp(v, 0.0, 1.0));
            out.truth.at(x, y) = owner;
        }
    }
    out.truth.densify();
    return out;
}

SyntheticSpec SyntheticSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open synthetic spec: " + path);
    nlohmann::json j = nlohmann::json::parse(in);

    SyntheticSpec spec;
    spec.width = j.value("width", spec.width);
    spec.height = j.value("height", spec.height);
    spec.background = j.value("background", spec.background);
    spec.noise_sigma = j.value("noise_sigma", spec.noise_sigma);
    spec.valley_dip = j.value("valley_dip", spec.valley_dip);
    spec.edge_softness = j.value("edge_softness", spec.edge_softness);
    spec.seed = j.value("seed", spec.seed);
    for (const auto& jn : j.at("nuclei")) {
        NucleusSpec nu;
        nu.center = {jn.at("cx").get<double>(), jn.at("cy").get<double>()};
        nu.semi_a = jn.at("a").get<double>();
        nu.semi_b = jn.at("b").get<double>();
        nu.orientation = deg_to_rad(jn.value("orientation_deg", 0.0));
        nu.peak = jn.value("peak", nu.peak);
        spec.nuclei.push_back(nu);
    }
    return spec;
}

std::string SyntheticSpec::to_json() const {
    nlohmann::json j;
    j["width"] = width;
    j["height"] = height;
    j["background"] = background;
    j["noise_sigma"] = noise_sigma;
    j["valley_dip"] = valley_dip;
    j["edge_softness"] = edge_softness;
    j["seed"] = seed;
    j["nuclei"] = nlohmann::json::array();
    for (const NucleusSpec& nu : nuclei) {
        nlohmann::json jn;
        jn["cx"] = nu.center.x;
        jn["cy"] = nu.center.y;
        jn["a"] = nu.semi_a;
        jn["b"] = nu.semi_b;
        jn["orientation_deg"] = rad_to_deg(nu.orientation);
        jn["peak"] = nu.peak;
        j["nuclei"].push_back(jn);
    }
    return j.dump(2);
}

}  // namespace clumpsplit
