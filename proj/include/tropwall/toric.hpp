#pragma once

// Fans of the five smooth toric Fano surfaces, marked-point scenes and the
// Hori-Vafa potential. Rays are stored in the tropical orientation: they
// are the directions of unbounded tropical edges, and the potential term
// attached to a ray v is z^{-v}.

#include <string>
#include <vector>

#include "tropwall/nilring.hpp"

namespace tropwall {

struct RationalPoint {
    Rational x, y;

    bool operator==(const RationalPoint&) const = default;
    // Canonical order: by x, then y. Used for deterministic sweeps.
    bool operator<(const RationalPoint& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
    RationalPoint operator+(const RationalPoint& o) const { return {x + o.x, y + o.y}; }
    RationalPoint operator-(const RationalPoint& o) const { return {x - o.x, y - o.y}; }
};

inline std::string point_str(const RationalPoint& p) {
    return "(" + rational_str(p.x) + "," + rational_str(p.y) + ")";
}

inline Rational cross(const Rational& ax, const Rational& ay, const Rational& bx,
                      const Rational& by) {
    return ax * by - ay * bx;
}

struct Fan {
    std::vector<ZExp> rays;  // primitive, strictly counterclockwise
    std::string name;        // optional catalog label

    bool operator==(const Fan& o) const { return rays == o.rays; }
};

inline void fan_validate(const Fan& f) {
    const auto& rays = f.rays;
    const int n = static_cast<int>(rays.size());
    if (n < 3)
        throw FanInvariantError(FanErrorKind::NotComplete, 0,
                                "NotComplete: a complete fan needs at least 3 rays");
    for (int i = 0; i < n; ++i) {
        ZExp v = rays[i];
        if (v.is_zero() || std::gcd(std::abs(v.a1), std::abs(v.a2)) != 1)
            throw FanInvariantError(FanErrorKind::NotPrimitive, i,
                                    "NotPrimitive: ray " + zexp_str(v));
    }
    for (int i = 0; i < n; ++i) {
        long long d = det(rays[i], rays[(i + 1) % n]);
        if (d <= 0)
            throw FanInvariantError(
                FanErrorKind::NotComplete, i,
                "NotComplete: rays " + zexp_str(rays[i]) + ", " + zexp_str(rays[(i + 1) % n]) +
                    " are not in strictly counterclockwise position");
    }
    for (int i = 0; i < n; ++i) {
        long long d = det(rays[i], rays[(i + 1) % n]);
        if (d != 1)
            throw FanInvariantError(
                FanErrorKind::NotSmooth, i,
                "NotSmooth: det(" + zexp_str(rays[i]) + "," + zexp_str(rays[(i + 1) % n]) +
                    ") = " + std::to_string(d));
    }
    // v_{i-1} + v_{i+1} = -a_i v_i; Fano needs a_i >= -1 at every ray.
    for (int i = 0; i < n; ++i) {
        ZExp s = rays[(i + n - 1) % n] + rays[(i + 1) % n];
        long long a;
        if (rays[i].a1 != 0)
            a = -s.a1 / rays[i].a1;
        else
            a = -s.a2 / rays[i].a2;
        if (!(s == rays[i] * (-a)))
            throw FanInvariantError(FanErrorKind::NotSmooth, i,
                                    "NotSmooth: neighbor sum of " + zexp_str(rays[i]) +
                                        " is not a multiple of it");
        if (a < -1)
            throw FanInvariantError(FanErrorKind::NotFano, i,
                                    "NotFano: a_i = " + std::to_string(a) + " at ray " +
                                        zexp_str(rays[i]));
    }
}

inline Fan fan_builtin(const std::string& name) {
    if (name == "P2") return Fan{{{-1, 0}, {0, -1}, {1, 1}}, "P2"};
    if (name == "P1xP1") return Fan{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, "P1xP1"};
    if (name == "dP1") return Fan{{{1, 1}, {-1, 0}, {-1, -1}, {0, -1}}, "dP1"};
    if (name == "dP2") return Fan{{{1, 0}, {1, 1}, {-1, 0}, {-1, -1}, {0, -1}}, "dP2"};
    if (name == "dP3")
        return Fan{{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}, "dP3"};
    throw UnknownFan(name);
}

inline std::vector<std::string> fan_catalog() { return {"P2", "P1xP1", "dP1", "dP2", "dP3"}; }

// W_0 = sum over rays of z^{-v}, the Hori-Vafa potential at T = 1.
inline LaurentPoly hori_vafa(const Fan& f) {
    fan_validate(f);
    LaurentPoly w;
    for (ZExp v : f.rays) w += LaurentPoly::monomial(-v, 1);
    return w;
}

struct Scene {
    Fan fan;
    std::vector<RationalPoint> points;  // p_1 .. p_k

    int k() const { return static_cast<int>(points.size()); }
    // Mask with all k points present.
    std::uint32_t full_mask() const { return k() == 0 ? 0u : ((1u << k()) - 1u); }
};

}  // namespace tropwall
