#pragma once

// Tropical walls and the consistency machinery: crossing automorphisms,
// loop composites around a point, and the order-by-order insertion of
// scattered walls that makes every non-marked loop trivial.

#include <optional>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "tropwall/nilring.hpp"
#include "tropwall/toric.hpp"

namespace tropwall {

struct Wall {
    RationalPoint base;
    ZExp dir;  // primitive; support is { base + s*dir : s >= 0 }
    LaurentPoly fun;

    enum class Origin { FromPoint, Scattered };
    Origin origin = Origin::FromPoint;
    int point_index = 0;          // 1-based, for FromPoint walls
    RationalPoint scattered_at;   // = base, for Scattered walls

    static Wall from_point(int i, RationalPoint base, ZExp dir, LaurentPoly fun) {
        Wall w;
        w.base = base;
        w.dir = dir;
        w.fun = std::move(fun);
        w.origin = Origin::FromPoint;
        w.point_index = i;
        return w;
    }
    static Wall scattered(RationalPoint at, ZExp dir, LaurentPoly fun) {
        Wall w;
        w.base = at;
        w.dir = dir;
        w.fun = std::move(fun);
        w.origin = Origin::Scattered;
        w.scattered_at = at;
        return w;
    }

    std::string str() const {
        return "wall{base=" + point_str(base) + ", dir=" + zexp_str(dir) + ", fun=" + fun.str() +
               "}";
    }
};

// Geometric equality; provenance is bookkeeping.
inline bool same_wall(const Wall& a, const Wall& b) {
    return a.base == b.base && a.dir == b.dir && a.fun == b.fun;
}

// Parameter s >= 0 with p = base + s*dir, if p is on the support.
inline std::optional<Rational> wall_param(const Wall& w, const RationalPoint& p) {
    Rational dx = p.x - w.base.x, dy = p.y - w.base.y;
    if (cross(dx, dy, Rational(w.dir.a1), Rational(w.dir.a2)) != 0) return std::nullopt;
    Rational s = w.dir.a1 != 0 ? dx / w.dir.a1 : dy / w.dir.a2;
    if (s < 0) return std::nullopt;
    return s;
}

inline bool on_support(const Wall& w, const RationalPoint& p) {
    return wall_param(w, p).has_value();
}

// ---------------------------------------------------------------------------
// Crossing automorphisms. A wall function factors uniquely into commuting
// single-exponent pieces f = prod_r (1 + c_r z^{r*m}) over the multiples r
// of the primitive direction m, and each piece acts with the weight of its
// own exponent: crossing while traveling in direction tau sends
//   z^a -> z^a * prod_r (1 + c_r z^{r*m})^{r * det(a, m) * sgn(det(tau, m))}.
// For a single-term wall this is z^a -> z^a f^{det(a, m) sgn(det(tau, m))}.
// This is the pullback direction: transporting a potential across the wall
// with these maps reproduces the potential on the far side.

struct WallFactor {
    long long multiple;  // r
    LaurentPoly fun;     // 1 + c_r z^{r*dir}
};

inline std::vector<WallFactor> wall_factors(const Wall& w) {
    for (auto& [a, c] : w.fun.terms()) {
        if (a.is_zero()) continue;
        long long r = w.dir.a1 != 0 ? a.a1 / w.dir.a1 : a.a2 / w.dir.a2;
        if (r < 1 || !(w.dir * r == a))
            throw NondecomposableDiscrepancy("wall function term " + zexp_str(a) +
                                             " is off the ray of " + w.str());
    }
    std::vector<WallFactor> out;
    LaurentPoly rest = w.fun;
    for (long long r = 1; !rest.is_one(); ++r) {
        if (r > 4096) throw InternalError("wall function does not factor: " + w.str());
        NilCoefficient c = rest.coeff(w.dir * r);
        if (c.is_zero()) continue;
        LaurentPoly factor = LaurentPoly(1) + LaurentPoly::monomial(w.dir * r, c);
        out.push_back({r, factor});
        rest = rest * unit_pow(factor, -1);
    }
    return out;
}

inline int crossing_sign(ZExp tau, ZExp m) {
    long long d = det(tau, m);
    if (d == 0) throw TangentialCrossing("travel direction " + zexp_str(tau) +
                                         " is parallel to wall direction " + zexp_str(m));
    return d > 0 ? 1 : -1;
}

// Exponent picked up by z^a on the factor of multiple r.
inline long long crossing_exponent(const Wall& w, ZExp a, ZExp tau, long long multiple = 1) {
    return multiple * det(a, w.dir) * crossing_sign(tau, w.dir);
}

// The full CoordMap for a crossing with known orientation sign.
inline CoordMap crossing_map_signed(const Wall& w, int sign) {
    LaurentPoly im1 = LaurentPoly::z1(), im2 = LaurentPoly::z2();
    for (const WallFactor& f : wall_factors(w)) {
        long long e1 = sign * f.multiple * w.dir.a2;   // det((1,0), m) = m2
        long long e2 = -sign * f.multiple * w.dir.a1;  // det((0,1), m) = -m1
        if (e1 != 0) im1 = im1 * unit_pow(f.fun, e1);
        if (e2 != 0) im2 = im2 * unit_pow(f.fun, e2);
    }
    return {std::move(im1), std::move(im2)};
}

inline CoordMap crossing_map(const Wall& w, ZExp tau) {
    return crossing_map_signed(w, crossing_sign(tau, w.dir));
}

// Crossing with a rational travel direction (used by transport along paths).
inline CoordMap crossing_map(const Wall& w, const Rational& tau_x, const Rational& tau_y) {
    Rational d = cross(tau_x, tau_y, Rational(w.dir.a1), Rational(w.dir.a2));
    if (d == 0)
        throw TangentialCrossing("path segment is parallel to wall direction " +
                                 zexp_str(w.dir));
    return crossing_map_signed(w, d > 0 ? 1 : -1);
}

// ---------------------------------------------------------------------------
// Wall germs at a point: local rays out of q. A wall based at q contributes
// one germ; a wall whose interior passes through q contributes two.

struct Germ {
    ZExp dir;        // local outgoing direction at q
    int wall_index;  // into the ambient wall list
};

inline std::vector<Germ> germs_at(const std::vector<Wall>& walls, const RationalPoint& q) {
    std::vector<Germ> out;
    for (int i = 0; i < static_cast<int>(walls.size()); ++i) {
        auto s = wall_param(walls[i], q);
        if (!s) continue;
        out.push_back({walls[i].dir, i});
        if (*s > 0) out.push_back({-walls[i].dir, i});
    }
    return out;
}

// Strict angular order counterclockwise starting at the positive x-axis.
inline bool angle_less(ZExp a, ZExp b) {
    auto half = [](ZExp d) { return (d.a2 > 0 || (d.a2 == 0 && d.a1 > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    long long c = det(a, b);
    return c > 0;
}

// Composite of the crossing maps for a small loop around q. Germs are
// crossed by angle starting from the smallest angle >= 0; "ccw" fixes the
// traversal sense. Composition is in path order (first crossing first).
inline CoordMap loop_automorphism(const std::vector<Wall>& walls, const RationalPoint& q,
                                  bool counterclockwise = true) {
    std::vector<Germ> germs = germs_at(walls, q);
    std::sort(germs.begin(), germs.end(), [&](const Germ& a, const Germ& b) {
        if (a.dir != b.dir) return angle_less(a.dir, b.dir);
        return a.wall_index < b.wall_index;
    });
    if (!counterclockwise && germs.size() > 1)
        std::reverse(germs.begin() + 1, germs.end());
    // For a ccw loop, tau at a germ of direction d is the ccw tangent of d,
    // so sgn(det(tau, wall.dir)) is -1 on the outgoing germ (d = wall.dir)
    // and +1 on the incoming one; a clockwise loop flips both.
    CoordMap acc = CoordMap::identity();
    for (const Germ& g : germs) {
        const Wall& w = walls[g.wall_index];
        int s = (g.dir == w.dir) ? -1 : 1;
        if (!counterclockwise) s = -s;
        acc = compose(crossing_map_signed(w, s), acc);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Scattering completion at a point q (not a marked point): insert walls
// based at q, by increasing t-order of the loop discrepancy, until the loop
// composite is the identity. Returns the number of wall insertions/merges.

inline int complete_at(std::vector<Wall>& walls, const RationalPoint& q) {
    int changes = 0;
    for (int round = 0; round < 64; ++round) {
        CoordMap F = loop_automorphism(walls, q, /*ccw=*/true);
        if (is_identity(F)) return changes;

        LaurentPoly g1 = F.image_z1 * LaurentPoly::monomial({-1, 0}, 1) - LaurentPoly(1);
        LaurentPoly g2 = F.image_z2 * LaurentPoly::monomial({0, -1}, 1) - LaurentPoly(1);

        // Lowest t-order of the discrepancy.
        int lmin = -1;
        for (const LaurentPoly* g : {&g1, &g2})
            for (auto& [a, c] : g->terms()) {
                int o = c.min_order();
                if (o >= 0 && (lmin < 0 || o < lmin)) lmin = o;
            }
        if (lmin < 0) throw InternalError("non-identity loop with empty discrepancy");
        if (lmin == 0)
            throw NondecomposableDiscrepancy("loop discrepancy at " + point_str(q) +
                                             " has a t-free part");

        std::set<ZExp> exps;
        for (const LaurentPoly* g : {&g1, &g2})
            for (auto& [a, c] : g->terms())
                if (!c.order_part(lmin).is_zero()) exps.insert(a);

        for (ZExp m : exps) {
            if (m.is_zero())
                throw NondecomposableDiscrepancy(
                    "loop discrepancy at " + point_str(q) + " has a z-free term");
            NilCoefficient c1 = g1.coeff(m).order_part(lmin);
            NilCoefficient c2 = g2.coeff(m).order_part(lmin);
            // The order-lmin discrepancy must be the Hamiltonian pattern
            // (c1, c2) = lambda * (-m2, m1) in the full exponent m, since a
            // wall factor 1 + c z^m acts through det(a, m).
            NilCoefficient lambda;
            if (m.a2 != 0) {
                lambda = c1 * int_ratio(-1, m.a2);
                if (!(c2 == lambda * Rational(m.a1)))
                    throw NondecomposableDiscrepancy("at " + point_str(q) + ", exponent " +
                                                     zexp_str(m));
            } else {
                if (!c1.is_zero())
                    throw NondecomposableDiscrepancy("at " + point_str(q) + ", exponent " +
                                                     zexp_str(m));
                lambda = c2 * int_ratio(1, m.a1);
            }
            LaurentPoly newfun = LaurentPoly(1) + LaurentPoly::monomial(m, -lambda);
            ZExp d = primitive(m);
            // Merge with an existing wall at the same base and direction.
            bool merged = false;
            for (Wall& w : walls)
                if (w.base == q && w.dir == d) {
                    w.fun = w.fun * newfun;
                    merged = true;
                    break;
                }
            if (!merged) walls.push_back(Wall::scattered(q, d, newfun));
            ++changes;
        }
    }
    throw InternalError("scattering completion did not terminate at " + point_str(q));
}

// ---------------------------------------------------------------------------
// Diagram: the wall structure for (a subset of) a scene, with memoized
// sub-diagrams per point subset. Immutable once built.

struct Diagram {
    Scene scene;
    std::uint32_t mask = 0;  // which marked points participate
    std::vector<Wall> walls;
    std::map<std::uint32_t, std::shared_ptr<const Diagram>> subdiagrams;
    std::vector<ZExp> trace_seeds;  // candidate final directions for broken lines

    std::vector<RationalPoint> marked_points() const {
        std::vector<RationalPoint> out;
        for (int i = 1; i <= scene.k(); ++i)
            if (mask & (1u << (i - 1))) out.push_back(scene.points[i - 1]);
        return out;
    }

    const Diagram& subdiagram(std::uint32_t m) const {
        if (m == mask) return *this;
        auto it = subdiagrams.find(m);
        if (it == subdiagrams.end()) throw InternalError("subdiagram not memoized");
        return *it->second;
    }
};

// Canonical wall order for serialization and equality-as-sets.
inline void sort_walls(std::vector<Wall>& walls) {
    std::sort(walls.begin(), walls.end(), [](const Wall& a, const Wall& b) {
        if (!(a.base == b.base)) return a.base < b.base;
        if (a.dir != b.dir) return a.dir < b.dir;
        return false;
    });
}

// t_i = 0 specialization: drop terms containing i, then drop trivial walls.
inline std::vector<Wall> specialize_walls(const std::vector<Wall>& walls, int i) {
    std::vector<Wall> out;
    for (const Wall& w : walls) {
        LaurentPoly f = w.fun.specialize_zero(i);
        if (f.is_one()) continue;
        Wall s = w;
        s.fun = f;
        out.push_back(s);
    }
    sort_walls(out);
    return out;
}

}  // namespace tropwall
