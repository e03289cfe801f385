#pragma once

// Static SVG rendering of wall structures: rays clipped to a rational
// viewport, stroke style keyed by wall t-order, optional marked points,
// function labels and broken lines. Output is byte-stable for fixed input.

#include <array>
#include <optional>

#include "tropwall/potential.hpp"

namespace tropwall {

struct RenderSpec {
    Rational x0 = -8, x1 = 8, y0 = -8, y1 = 8;  // viewport, must have positive area
    int width = 800;                            // pixel width; height keeps the aspect
    bool show_points = true;
    bool show_labels = false;
    bool show_lines = false;  // render broken lines passed to render_svg
};

namespace renderimpl {

// Deterministic fixed-point decimal with three digits, rounded half away
// from zero in exact arithmetic.
inline std::string svg_num(const Rational& r) {
    BigInt scaled_num = numerator(r) * 2000;
    BigInt den = denominator(r);
    BigInt q = scaled_num / den, rem = scaled_num % den;
    if (rem * 2 >= den) q += 1;
    if (rem * 2 <= -den) q -= 1;
    // q = round-half-away(r * 2000); halving keeps ties away from zero.
    BigInt milli;
    if (q >= 0)
        milli = (q + 1) / 2;
    else
        milli = -((-q + 1) / 2);
    bool neg = milli < 0;
    BigInt a = neg ? -milli : milli;
    std::string digits = a.str();
    while (digits.size() < 4) digits.insert(digits.begin(), '0');
    std::string out = (neg ? "-" : "") + digits.substr(0, digits.size() - 3) + "." +
                      digits.substr(digits.size() - 3);
    return out;
}

// Intersection of { base + s*dir : s >= 0 } with the viewport box, as a
// parameter interval.
inline std::optional<std::pair<Rational, Rational>> clip_ray(const RationalPoint& base, ZExp dir,
                                                             const RenderSpec& v) {
    Rational lo = 0;
    Rational hi;
    bool hi_set = false;
    auto axis = [&](const Rational& b, long long d, const Rational& mn,
                    const Rational& mx) -> bool {
        if (d == 0) return b >= mn && b <= mx;
        Rational s1 = (mn - b) / d, s2 = (mx - b) / d;
        if (s1 > s2) std::swap(s1, s2);
        if (s1 > lo) lo = s1;
        if (!hi_set || s2 < hi) {
            hi = s2;
            hi_set = true;
        }
        return true;
    };
    if (!axis(base.x, dir.a1, v.x0, v.x1)) return std::nullopt;
    if (!axis(base.y, dir.a2, v.y0, v.y1)) return std::nullopt;
    if (!hi_set) return std::nullopt;  // zero direction, not a ray
    if (hi < lo) return std::nullopt;
    return std::make_pair(lo, hi);
}

inline int wall_order(const Wall& w) {
    int best = 0;
    for (auto& [a, c] : w.fun.terms()) {
        if (a.is_zero() && !c.constant_part().is_zero() && c.terms().size() == 1) continue;
        int o = c.min_order();
        if (o > 0 && (best == 0 || o < best)) best = o;
    }
    return best == 0 ? 1 : best;
}

inline const char* order_color(int order) {
    static constexpr std::array<const char*, 6> palette = {
        "#1f6fb4", "#c23b22", "#2e8540", "#8250c4", "#b8860b", "#008080"};
    int idx = order - 1;
    if (idx < 0) idx = 0;
    if (idx >= static_cast<int>(palette.size())) idx = palette.size() - 1;
    return palette[idx];
}

}  // namespace renderimpl

inline std::string render_svg(const Diagram& d, const RenderSpec& spec,
                              const std::vector<BrokenLine>* lines = nullptr) {
    using namespace renderimpl;
    if (!(spec.x1 > spec.x0) || !(spec.y1 > spec.y0))
        throw Error("render viewport must have positive area");
    Rational w = spec.x1 - spec.x0, h = spec.y1 - spec.y0;
    Rational scale = Rational(spec.width) / w;
    int height_px = static_cast<int>(static_cast<double>(Rational(spec.width) * h / w)) + 1;
    auto px = [&](const Rational& x) { return svg_num((x - spec.x0) * scale); };
    auto py = [&](const Rational& y) { return svg_num((spec.y1 - y) * scale); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(spec.width) + "\" height=\"" + std::to_string(height_px) + "\">\n";
    out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    std::vector<Wall> walls = d.walls;
    sort_walls(walls);
    for (const Wall& wall : walls) {
        auto seg = clip_ray(wall.base, wall.dir, spec);
        if (!seg) continue;
        RationalPoint a{wall.base.x + seg->first * wall.dir.a1,
                        wall.base.y + seg->first * wall.dir.a2};
        RationalPoint b{wall.base.x + seg->second * wall.dir.a1,
                        wall.base.y + seg->second * wall.dir.a2};
        int order = wall_order(wall);
        out += "  <line x1=\"" + px(a.x) + "\" y1=\"" + py(a.y) + "\" x2=\"" + px(b.x) +
               "\" y2=\"" + py(b.y) + "\" stroke=\"" + order_color(order) +
               "\" stroke-width=\"" + std::to_string(order) + ".5\" class=\"wall order" +
               std::to_string(order) + "\"/>\n";
        if (spec.show_labels) {
            Rational mid = (seg->first + seg->second) / 2;
            RationalPoint m{wall.base.x + mid * wall.dir.a1, wall.base.y + mid * wall.dir.a2};
            out += "  <text x=\"" + px(m.x) + "\" y=\"" + py(m.y) +
                   "\" font-size=\"11\" fill=\"" + order_color(order) + "\">" +
                   wall.fun.str() + "</text>\n";
        }
    }

    if (spec.show_lines && lines) {
        for (const BrokenLine& l : *lines) {
            // Draw each segment; the unbounded one is clipped backward.
            for (std::size_t si = l.segments.size(); si-- > 0;) {
                const BrokenSegment& s = l.segments[si];
                RationalPoint to = si + 1 < l.segments.size() ? l.segments[si + 1].start
                                                              : l.endpoint;
                RationalPoint from;
                if (s.unbounded) {
                    auto clip = clip_ray(to, -s.dir, spec);
                    if (!clip) continue;
                    from = RationalPoint{to.x - clip->second * s.dir.a1,
                                         to.y - clip->second * s.dir.a2};
                } else
                    from = s.start;
                out += "  <line x1=\"" + px(from.x) + "\" y1=\"" + py(from.y) + "\" x2=\"" +
                       px(to.x) + "\" y2=\"" + py(to.y) +
                       "\" stroke=\"#444444\" stroke-width=\"1\" stroke-dasharray=\"5,3\" "
                       "class=\"broken-line\"/>\n";
                if (!s.unbounded)
                    out += "  <circle cx=\"" + px(s.start.x) + "\" cy=\"" + py(s.start.y) +
                           "\" r=\"3\" fill=\"#444444\" class=\"bend\"/>\n";
            }
        }
    }

    if (spec.show_points) {
        for (const RationalPoint& p : d.marked_points())
            out += "  <circle cx=\"" + px(p.x) + "\" cy=\"" + py(p.y) +
                   "\" r=\"4\" fill=\"black\" class=\"marked-point\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace tropwall
