#include "clumpsplit/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace clumpsplit {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip form
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct Field {
    const char* name;
    enum Kind { real, integer, boolean } kind;
    void* ptr;
};

std::vector<Field> fields(PipelineConfig& c) {
    return {
        {"r1", Field::real, &c.r1},
        {"r2", Field::real, &c.r2},
        {"alpha", Field::real, &c.alpha},
        {"beta", Field::real, &c.beta},
        {"v_threshold", Field::real, &c.v_threshold},
        {"mu", Field::real, &c.mu},
        {"nu", Field::real, &c.nu},
        {"gamma1", Field::real, &c.gamma1},
        {"gamma2", Field::real, &c.gamma2},
        {"q_threshold", Field::real, &c.q_threshold},
        {"sector_deg", Field::real, &c.sector_deg},
        {"contour_sigma", Field::real, &c.contour_sigma},
        {"hessian_sigma", Field::real, &c.hessian_sigma},
        {"kappa_min", Field::real, &c.kappa_min},
        {"walk_energy_threshold", Field::real, &c.walk_energy_threshold},
        {"sharp_angle_min", Field::real, &c.sharp_angle_min},
        {"lambda1_rel_tol", Field::real, &c.lambda1_rel_tol},
        {"iou_min", Field::real, &c.iou_min},
        {"min_area", Field::integer, &c.min_area},
        {"max_hole", Field::integer, &c.max_hole},
        {"psi_in_degrees", Field::boolean, &c.psi_in_degrees},
        {"c1_requires_v", Field::boolean, &c.c1_requires_v},
    };
}

}  // namespace

void PipelineConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (!(r1 > 0.0) || !(r2 > r1)) fail("requires 0 < r1 < r2");
    if (alpha < 0 || beta < 0 || mu < 0 || nu < 0 || gamma1 < 0 || gamma2 < 0)
        fail("weights must be non-negative");
    if (!(sector_deg > 0.0) || sector_deg > 90.0) fail("sector_deg must lie in (0, 90]");
    if (!(contour_sigma > 0.0) || !(hessian_sigma > 0.0)) fail("sigmas must be positive");
    if (!(kappa_min > 0.0)) fail("kappa_min must be positive");
    if (min_area < 0 || max_hole < 0) fail("areas must be non-negative");
    if (!(iou_min >= 0.0 && iou_min <= 1.0)) fail("iou_min must lie in [0, 1]");
}

std::string PipelineConfig::serialize() const {
    PipelineConfig copy = *this;
    std::ostringstream out;
    for (const Field& f : fields(copy)) {
        out << f.name << " = ";
        switch (f.kind) {
            case Field::real: out << fmt_double(*static_cast<double*>(f.ptr)); break;
            case Field::integer: out << *static_cast<int*>(f.ptr); break;
            case Field::boolean: out << (*static_cast<bool*>(f.ptr) ? "true" : "false"); break;
        }
        out << "\n";
    }
    return out.str();
}

PipelineConfig PipelineConfig::parse(const std::string& text) {
    PipelineConfig cfg;
    auto fs = fields(cfg);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        std::string_view key = trim(sv.substr(0, eq));
        std::string_view val = trim(sv.substr(eq + 1));
        bool known = false;
        for (const Field& f : fs) {
            if (key != f.name) continue;
            known = true;
            if (f.kind == Field::real) {
                double v = 0.0;
                auto r = std::from_chars(val.data(), val.data() + val.size(), v);
                if (r.ec != std::errc() || r.ptr != val.data() + val.size())
                    throw std::invalid_argument("config: bad number for " + std::string(key));
                *static_cast<double*>(f.ptr) = v;
            } else if (f.kind == Field::integer) {
                int v = 0;
                auto r = std::from_chars(val.data(), val.data() + val.size(), v);
                if (r.ec != std::errc() || r.ptr != val.data() + val.size())
                    throw std::invalid_argument("config: bad integer for " + std::string(key));
                *static_cast<int*>(f.ptr) = v;
            } else {
                if (val == "true" || val == "1")
                    *static_cast<bool*>(f.ptr) = true;
                else if (val == "false" || val == "0")
                    *static_cast<bool*>(f.ptr) = false;
                else
                    throw std::invalid_argument("config: bad boolean for " + std::string(key));
            }
            break;
        }
        if (!known) throw std::invalid_argument("config: unknown key " + std::string(key));
    }
    cfg.validate();
    return cfg;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void PipelineConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config: " + path);
    out << serialize();
}

}  // namespace clumpsplit
