#pragma once

// Inductive construction of the wall structure for a scene. For each point
// subset S and each i in S, the potential of the sub-diagram without p_i,
// evaluated at p_i, contributes one wall per term; pairwise intersection
// points are then completed until every non-marked loop is trivial.

#include <random>

#include "tropwall/potential.hpp"

namespace tropwall {

namespace detail {

// Pairwise intersection points of wall supports, with degeneracy checks for
// collinear overlaps. Throws DegenerateScene on overlapping supports.
inline std::set<RationalPoint> support_intersections(const std::vector<Wall>& walls) {
    std::set<RationalPoint> pts;
    const int n = static_cast<int>(walls.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Wall &a = walls[i], &b = walls[j];
            long long d = det(a.dir, b.dir);
            Rational bx = b.base.x - a.base.x, by = b.base.y - a.base.y;
            if (d == 0) {
                if (cross(bx, by, Rational(a.dir.a1), Rational(a.dir.a2)) != 0) continue;
                // Same line. Same base + same direction is merged on insert,
                // so any remaining overlap is degenerate.
                if (a.dir == b.dir)
                    throw DegenerateScene("{\"kind\":\"overlapping_walls\",\"a\":\"" + a.str() +
                                          "\",\"b\":\"" + b.str() + "\"}");
                auto s = wall_param(a, b.base);
                if (s && *s > 0)
                    throw DegenerateScene("{\"kind\":\"overlapping_walls\",\"a\":\"" + a.str() +
                                          "\",\"b\":\"" + b.str() + "\"}");
                continue;
            }
            // a.base + s*a.dir = b.base + t*b.dir
            Rational s = cross(bx, by, Rational(b.dir.a1), Rational(b.dir.a2)) / Rational(d);
            Rational t = cross(bx, by, Rational(a.dir.a1), Rational(a.dir.a2)) / Rational(d);
            if (s < 0 || t < 0) continue;
            pts.insert(RationalPoint{a.base.x + s * a.dir.a1, a.base.y + s * a.dir.a2});
        }
    return pts;
}

inline void merge_wall(std::vector<Wall>& walls, Wall w) {
    for (Wall& e : walls)
        if (e.base == w.base && e.dir == w.dir) {
            e.fun = e.fun * w.fun;
            return;
        }
    walls.push_back(std::move(w));
}

// Sweep all pairwise intersection points (re-queuing points created by new
// walls) and complete each until globally consistent.
inline void complete_walls(std::vector<Wall>& walls,
                           const std::vector<RationalPoint>& marked) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        bool changed = false;
        std::set<RationalPoint> pts = support_intersections(walls);
        for (const RationalPoint& q : pts) {
            bool is_marked = false;
            for (const RationalPoint& p : marked)
                if (p == q) is_marked = true;
            int interior = 0;
            for (const Wall& w : walls) {
                auto s = wall_param(w, q);
                if (s && *s > 0) ++interior;
            }
            if (is_marked) {
                // Loops around marked points carry genuine monodromy and are
                // not completed, but no wall may pass through one.
                if (interior > 0)
                    throw DegenerateScene("{\"kind\":\"marked_point_on_wall\",\"point\":\"" +
                                          point_str(q) + "\"}");
                continue;
            }
            if (interior >= 3)
                throw DegenerateScene(
                    "{\"kind\":\"triple_wall_point\",\"point\":\"" + point_str(q) + "\"}");
            if (!is_identity(loop_automorphism(walls, q, /*ccw=*/true))) {
                complete_at(walls, q);
                changed = true;
            }
        }
        if (!changed) return;
    }
    throw InternalError("wall completion sweep did not stabilize");
}

}  // namespace detail

inline Diagram build_diagram(const Scene& scene) {
    fan_validate(scene.fan);
    const int k = scene.k();
    if (k > 31) throw Error("at most 31 point constraints are supported");
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (scene.points[i] == scene.points[j])
                throw DegenerateScene("{\"kind\":\"coincident_points\",\"i\":" +
                                      std::to_string(i + 1) + ",\"j\":" + std::to_string(j + 1) +
                                      "}");

    std::map<std::uint32_t, std::shared_ptr<const Diagram>> table;
    const std::uint32_t full = scene.full_mask();

    // Masks ordered by popcount, then value: every proper subset is built
    // before its supersets.
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m <= full; ++m)
        if ((m & full) == m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });

    for (std::uint32_t m : masks) {
        auto d = std::make_shared<Diagram>();
        d->scene = scene;
        d->mask = m;
        for (std::uint32_t sub : masks) {
            if (sub == m) break;
            if ((sub & m) == sub) d->subdiagrams[sub] = table[sub];
        }
        for (int i = 1; i <= k; ++i) {
            if (!(m & (1u << (i - 1)))) continue;
            const Diagram& sub = *table[m & ~(1u << (i - 1))];
            const RationalPoint& p = scene.points[i - 1];
            ChamberPotential Pi;
            try {
                Pi = potential_at(sub, p);
            } catch (const PointOnWall& e) {
                throw DegenerateScene("{\"kind\":\"point_on_subdiagram_wall\",\"point\":" +
                                      std::to_string(i) + ",\"detail\":\"" + e.what() + "\"}");
            } catch (const TraceThroughVertex& e) {
                throw DegenerateScene("{\"kind\":\"degenerate_trace_at_point\",\"point\":" +
                                      std::to_string(i) + ",\"detail\":\"" + e.what() + "\"}");
            }
            for (auto& [mexp, c] : Pi.value.terms()) {
                if (mexp.is_zero())
                    throw InternalError("potential term with zero exponent at p_" +
                                        std::to_string(i));
                for (auto& [J, N] : c.terms()) {
                    LaurentPoly fun =
                        LaurentPoly(1) +
                        LaurentPoly::monomial(
                            mexp, NilCoefficient::t(J.unite(TSubset::single(i)), N));
                    detail::merge_wall(d->walls, Wall::from_point(i, p, primitive(mexp), fun));
                }
            }
        }
        detail::complete_walls(d->walls, d->marked_points());
        sort_walls(d->walls);
        d->trace_seeds =
            detail::compute_trace_seeds(scene.fan, d->walls, __builtin_popcount(m));
        table[m] = d;
    }

    Diagram out = *table[full];
    return out;
}

// Rejects the degenerate configurations the diagram builder cannot handle;
// the thrown DegenerateScene carries a machine-readable witness.
inline void validate_generic(const Scene& scene) { (void)build_diagram(scene); }

struct BoundingBox {
    Rational x0, x1, y0, y1;
};

// Deterministic pseudo-random scenes: rational points with denominator 9973,
// redrawn until the diagram builder accepts them.
inline Scene scene_random(const Fan& fan, int k, std::uint64_t seed, const BoundingBox& box,
                          int max_retries = 64) {
    fan_validate(fan);
    if (k < 0) throw Error("scene_random: k must be nonnegative");
    if (k > 0 && (box.x1 <= box.x0 || box.y1 <= box.y0))
        throw GenericityExhausted("bounding box has no area");
    static constexpr long long kDenom = 9973;
    std::mt19937_64 rng(seed);
    auto draw = [&](const Rational& lo, const Rational& hi) {
        long long r = static_cast<long long>(rng() % (kDenom + 1));
        return lo + (hi - lo) * Rational(r, kDenom);
    };
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Scene scene;
        scene.fan = fan;
        for (int i = 0; i < k; ++i)
            scene.points.push_back(RationalPoint{draw(box.x0, box.x1), draw(box.y0, box.y1)});
        bool distinct = true;
        for (int i = 0; i < k && distinct; ++i)
            for (int j = i + 1; j < k; ++j)
                if (scene.points[i] == scene.points[j]) distinct = false;
        if (!distinct) continue;
        try {
            validate_generic(scene);
            return scene;
        } catch (const DegenerateScene&) {
            continue;
        }
    }
    throw GenericityExhausted("no generic configuration found after " +
                              std::to_string(max_retries) + " attempts");
}

// t_i = 0 specialization of a whole diagram (walls only; the result's
// sub-diagram memo is left empty).
inline Diagram specialize_diagram(const Diagram& d, int i) {
    Diagram out;
    out.scene = d.scene;
    out.mask = d.mask & ~(1u << (i - 1));
    out.walls = specialize_walls(d.walls, i);
    out.trace_seeds = detail::compute_trace_seeds(d.scene.fan, out.walls,
                                                  __builtin_popcount(out.mask));
    return out;
}

}  // namespace tropwall
