#include "clumpsplit/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clumpsplit {

std::vector<Vec2> SubContour::polygon(const Contour& c) const {
    std::vector<Vec2> pts;
    pts.reserve(seq.size());
    for (int i : seq) pts.push_back(c.points[i]);
    return pts;
}

std::vector<std::pair<int, int>> SubContour::virtual_edges(int n_points) const {
    std::vector<std::pair<int, int>> edges;
    const std::size_t m = seq.size();
    for (std::size_t k = 0; k < m; ++k) {
        int a = seq[k], b = seq[(k + 1) % m];
        if (b != (a + 1) % n_points) edges.emplace_back(a, b);
    }
    return edges;
}

std::vector<PointPair> classify_adjacency(const std::vector<CandidatePoint>& cands) {
    std::vector<PointPair> pairs;
    const std::size_t k = cands.size();
    if (k < 2) return pairs;
    std::vector<CandidatePoint> sorted = cands;
    std::sort(sorted.begin(), sorted.end(),
              [](const CandidatePoint& a, const CandidatePoint& b) { return a.contour_index < b.contour_index; });
    for (std::size_t i = 0; i < k; ++i) {
        const CandidatePoint& a = sorted[i];
        const CandidatePoint& b = sorted[(i + 1) % k];
        if (k == 2 && i == 1 && a.contour_index == b.contour_index) break;
        PointPair pp;
        pp.a = a;
        pp.b = b;
        pp.kind = PairKind::adjacent;
        pp.distance = (a.position - b.position).norm();
        pairs.push_back(std::move(pp));
    }
    return pairs;
}

namespace {

// Trapezoidal integral of max(kappa, 0) over the forward index path a -> b.
double convex_energy_forward(const CurvatureProfile& p, int ia, int ib) {
    const int n = static_cast<int>(p.kappa.size());
    double e = 0.0;
    int i = ia;
    while (i != ib) {
        int j = (i + 1) % n;
        double ds = p.arc[j] - p.arc[i];
        if (ds < 0.0) ds += 1.0;
        ds *= p.total_length;
        e += 0.5 * (std::max(p.kappa[i], 0.0) + std::max(p.kappa[j], 0.0)) * ds;
        i = j;
    }
    return e;
}

double forward_arc_length(const CurvatureProfile& p, int ia, int ib) {
    double d = p.arc[ib] - p.arc[ia];
    if (d < 0.0) d += 1.0;
    return d * p.total_length;
}

}  // namespace

double walking_energy(const Contour& c, const CurvatureProfile& p,
                      const CandidatePoint& a, const CandidatePoint& b) {
    (void)c;
    int ia = a.contour_index, ib = b.contour_index;
    if (forward_arc_length(p, ia, ib) <= forward_arc_length(p, ib, ia))
        return convex_energy_forward(p, ia, ib);
    return convex_energy_forward(p, ib, ia);
}

std::vector<CandidatePoint> merge_low_energy(std::vector<CandidatePoint> cands, const Contour& c,
                                             const CurvatureProfile& p, const PairingParams& params) {
    std::sort(cands.begin(), cands.end(),
              [](const CandidatePoint& a, const CandidatePoint& b) { return a.contour_index < b.contour_index; });
    while (cands.size() >= 2) {
        const std::size_t k = cands.size();
        int best_i = -1;
        double best_e = params.walk_energy_threshold;
        for (std::size_t i = 0; i < k; ++i) {
            const CandidatePoint& a = cands[i];
            const CandidatePoint& b = cands[(i + 1) % k];
            if (k == 2 && i == 1) break;  // one neighbor relation for two candidates
            if ((a.position - b.position).norm() > params.r1) continue;
            double e = walking_energy(c, p, a, b);
            if (e < best_e) {
                best_e = e;
                best_i = static_cast<int>(i);
            }
        }
        if (best_i < 0) break;
        const CandidatePoint& a = cands[best_i];
        const CandidatePoint& b = cands[(best_i + 1) % k];
        bool drop_second = std::abs(b.kappa) < std::abs(a.kappa) ||
                           (std::abs(b.kappa) == std::abs(a.kappa) && b.contour_index > a.contour_index);
        cands.erase(cands.begin() + (drop_second ? (best_i + 1) % k : best_i));
    }
    return cands;
}

double v_score(const CandidatePoint& p, const CandidatePoint& q, const PairingParams& params) {
    double d = (p.position - q.position).norm();
    double denom = d + params.beta * (std::abs(p.kappa) + std::abs(q.kappa));
    if (denom <= 1e-12) throw std::invalid_argument("v_score: coincident points");
    double theta_deg = rad_to_deg(angle_between(p.normal, q.normal));
    return params.alpha * theta_deg / denom;
}

bool chord_inside_mask(const BinaryMask& mask, Vec2 a, Vec2 b) {
    double len = (b - a).norm();
    if (len <= 3.0) return true;
    const double margin = 1.5;  // endpoints sit on the boundary itself
    int steps = static_cast<int>(std::ceil(len * 2.0));
    for (int s = 0; s <= steps; ++s) {
        double t = static_cast<double>(s) / steps;
        double along = t * len;
        if (along < margin || len - along < margin) continue;
        Vec2 pt = a + (b - a) * t;
        if (!mask.at(static_cast<int>(std::lround(pt.x)), static_cast<int>(std::lround(pt.y))))
            return false;
    }
    return true;
}

ScreenResult screen_pairs(const std::vector<CandidatePoint>& cands, const Contour& c,
                          const CurvatureProfile& p, const BinaryMask& mask,
                          const PairingParams& params) {
    ScreenResult res;
    auto adjacent = classify_adjacency(cands);
    for (PointPair& pp : adjacent) {
        pp.walk_energy = walking_energy(c, p, pp.a, pp.b);
        if (pp.distance <= params.r1 && pp.walk_energy >= params.walk_energy_threshold)
            res.c_plus.push_back(pp);
    }

    // non-adjacent: every unordered pair that is not circularly consecutive
    std::vector<CandidatePoint> sorted = cands;
    std::sort(sorted.begin(), sorted.end(),
              [](const CandidatePoint& a, const CandidatePoint& b) { return a.contour_index < b.contour_index; });
    const std::size_t k = sorted.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
            if (consecutive) continue;
            PointPair pp;
            pp.a = sorted[i];
            pp.b = sorted[j];
            pp.distance = (pp.a.position - pp.b.position).norm();
            if (pp.distance > params.r2) continue;
            pp.v = v_score(pp.a, pp.b, params);
            if (pp.distance <= params.r1) {
                pp.kind = PairKind::nonadjacent_inner;
                if (params.c1_requires_v && pp.v <= params.v_threshold) continue;
            } else {
                pp.kind = PairKind::nonadjacent_ring;
                if (pp.v <= params.v_threshold) continue;
            }
            if (!chord_inside_mask(mask, pp.a.position, pp.b.position)) continue;
            res.c_minus.push_back(std::move(pp));
        }
    }
    return res;
}

namespace {

struct Chord {
    int lo, hi;  // contour indices, lo < hi
    double v;
};

bool interleave(const Chord& a, const Chord& b) {
    if (a.lo == b.lo || a.lo == b.hi || a.hi == b.lo || a.hi == b.hi) return false;
    bool b_lo_inside = a.lo < b.lo && b.lo < a.hi;
    bool b_hi_inside = a.lo < b.hi && b.hi < a.hi;
    return b_lo_inside != b_hi_inside;
}

}  // namespace

std::vector<PointPair> resolve_crossing_chords(const std::vector<PointPair>& c_minus) {
    std::vector<PointPair> sorted = c_minus;
    auto key = [](const PointPair& pp) {
        int lo = std::min(pp.a.contour_index, pp.b.contour_index);
        int hi = std::max(pp.a.contour_index, pp.b.contour_index);
        return std::pair(lo, hi);
    };
    std::sort(sorted.begin(), sorted.end(), [&](const PointPair& a, const PointPair& b) {
        if (a.v != b.v) return a.v > b.v;
        return key(a) < key(b);
    });
    std::vector<PointPair> kept;
    for (const PointPair& pp : sorted) {
        auto [lo, hi] = key(pp);
        if (lo == hi) continue;
        Chord ch{lo, hi, pp.v};
        bool ok = true;
        for (const PointPair& kp : kept) {
            auto [klo, khi] = key(kp);
            if (klo == lo && khi == hi) ok = false;  // duplicate chord
            if (interleave(Chord{klo, khi, kp.v}, ch)) ok = false;
            if (!ok) break;
        }
        if (ok) kept.push_back(pp);
    }
    return kept;
}

std::vector<SubContour> partition_contour(const Contour& c, const std::vector<PointPair>& c_minus) {
    const int n = static_cast<int>(c.points.size());

    std::vector<Chord> kept;
    for (const PointPair& pp : resolve_crossing_chords(c_minus)) {
        int lo = std::min(pp.a.contour_index, pp.b.contour_index);
        int hi = std::max(pp.a.contour_index, pp.b.contour_index);
        kept.push_back({lo, hi, pp.v});
    }

    std::vector<SubContour> regions(1);
    regions[0].seq.resize(n);
    for (int i = 0; i < n; ++i) regions[0].seq[i] = i;

    for (const Chord& ch : kept) {
        int target = -1;
        std::size_t pa = 0, pb = 0;
        for (std::size_t r = 0; r < regions.size(); ++r) {
            const auto& seq = regions[r].seq;
            auto ita = std::find(seq.begin(), seq.end(), ch.lo);
            auto itb = std::find(seq.begin(), seq.end(), ch.hi);
            if (ita != seq.end() && itb != seq.end()) {
                target = static_cast<int>(r);
                pa = static_cast<std::size_t>(ita - seq.begin());
                pb = static_cast<std::size_t>(itb - seq.begin());
                break;
            }
        }
        if (target < 0) continue;  // endpoints split across regions: skip
        if (pa > pb) std::swap(pa, pb);
        const auto seq = regions[target].seq;
        SubContour first, second;
        first.seq.assign(seq.begin() + pa, seq.begin() + pb + 1);
        second.seq.assign(seq.begin() + pb, seq.end());
        second.seq.insert(second.seq.end(), seq.begin(), seq.begin() + pa + 1);
        regions[target] = std::move(first);
        regions.push_back(std::move(second));
    }
    return regions;
}

std::vector<PointPair> subcontour_adjacent_pairs(const SubContour& sc,
                                                 const std::vector<CandidatePoint>& cands,
                                                 const Contour& c, const CurvatureProfile& p) {
    (void)c;
    const int n = static_cast<int>(p.kappa.size());
    // candidates present on this subcontour, in cycle order
    std::vector<std::pair<std::size_t, const CandidatePoint*>> present;
    for (const CandidatePoint& cand : cands) {
        auto it = std::find(sc.seq.begin(), sc.seq.end(), cand.contour_index);
        if (it != sc.seq.end())
            present.emplace_back(static_cast<std::size_t>(it - sc.seq.begin()), &cand);
    }
    std::sort(present.begin(), present.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<PointPair> pairs;
    const std::size_t k = present.size();
    if (k < 2) return pairs;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& [pos_a, ca] = present[i];
        const auto& [pos_b, cb] = present[(i + 1) % k];
        if (k == 2 && i == 1 && ca->contour_index == cb->contour_index) break;
        PointPair pp;
        pp.a = *ca;
        pp.b = *cb;
        pp.kind = PairKind::adjacent;
        pp.distance = (ca->position - cb->position).norm();
        // energy over the subcontour walk a -> b; virtual edges are free
        double e = 0.0;
        const std::size_t m = sc.seq.size();
        for (std::size_t s = pos_a; s != pos_b; s = (s + 1) % m) {
            int u = sc.seq[s], v = sc.seq[(s + 1) % m];
            if (v != (u + 1) % n) continue;  // virtual edge
            double ds = p.arc[v] - p.arc[u];
            if (ds < 0.0) ds += 1.0;
            ds *= p.total_length;
            e += 0.5 * (std::max(p.kappa[u], 0.0) + std::max(p.kappa[v], 0.0)) * ds;
        }
        pp.walk_energy = e;
        pairs.push_back(std::move(pp));
    }
    return pairs;
}

std::vector<Vec2> pair_region(const SubContour& sc, const Contour& c, int index_a, int index_b) {
    auto ita = std::find(sc.seq.begin(), sc.seq.end(), index_a);
    auto itb = std::find(sc.seq.begin(), sc.seq.end(), index_b);
    if (ita == sc.seq.end() || itb == sc.seq.end())
        throw std::invalid_argument("pair_region: endpoint not on subcontour");
    std::size_t pa = static_cast<std::size_t>(ita - sc.seq.begin());
    std::size_t pb = static_cast<std::size_t>(itb - sc.seq.begin());
    std::vector<Vec2> pts;
    const std::size_t m = sc.seq.size();
    for (std::size_t s = pa;; s = (s + 1) % m) {
        pts.push_back(c.points[sc.seq[s]]);
        if (s == pb) break;
    }
    return pts;
}

}  // namespace clumpsplit
