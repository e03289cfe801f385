#pragma once

// Broken-line enumeration of the bulk-deformed potential W_k(u) and the
// transport of potentials across walls along paths.
//
// A broken line ends at u; tracing it backward, each bend at a wall
// (m, f) un-applies one non-unit term of f^{|det(a', m)|}, where a' is the
// pre-bend exponent, until the remaining segment is an unbounded ray with
// monomial z^{-v} for a fan ray v. Bends strictly increase t-order toward
// u, so the recursion depth is at most k.

#include <vector>

#include "tropwall/scatter.hpp"

namespace tropwall {

struct BrokenSegment {
    bool unbounded = false;        // first segment comes from infinity
    RationalPoint start;           // bend point (unset when unbounded)
    LaurentPoly monomial;          // single term carried along the segment
    ZExp dir;                      // equals the monomial's z-exponent
    int bendwall = -1;             // wall index bent at `start`; -1 for none
    RationalPoint bend_base;       // base and direction of that wall, kept
    ZExp bend_dir;                 // so serialized lines are self-contained
};

struct BrokenLine {
    std::vector<BrokenSegment> segments;  // from infinity to u
    RationalPoint endpoint;
    LaurentPoly final_monomial() const { return segments.back().monomial; }
};

struct ChamberPotential {
    RationalPoint at;
    LaurentPoly value;
    std::vector<BrokenLine> lines;
};

namespace detail {

// One backward bend: wall index, bend point, multiple r, picked term.
struct BendRecord {
    int wall;
    RationalPoint at;
    long long r;
    TSubset tset;
    Rational gamma;
    ZExp dir_before;  // pre-bend exponent a'
};

struct TraceEvent {
    Rational s;
    RationalPoint at;
    std::vector<int> walls;   // transversal walls whose support contains `at`
    bool degenerate = false;  // base hit, multiple supports, or marked point
};

// Crossing events along the open backward ray { x - s*a : s > 0 }.
// Walls parallel to the travel direction act by f^0 and are ignored.
inline std::vector<TraceEvent> scan_events(const Diagram& d, const RationalPoint& x, ZExp a) {
    std::map<Rational, TraceEvent> found;
    ZExp back{-a.a1, -a.a2};
    for (int i = 0; i < static_cast<int>(d.walls.size()); ++i) {
        const Wall& w = d.walls[i];
        long long dd = det(back, w.dir);
        if (dd == 0) continue;
        // x + s*back = base + t*dir
        Rational bx = w.base.x - x.x, by = w.base.y - x.y;
        Rational s = cross(bx, by, Rational(w.dir.a1), Rational(w.dir.a2)) / Rational(dd);
        Rational t = cross(bx, by, Rational(back.a1), Rational(back.a2)) / Rational(dd);
        if (s <= 0 || t < 0) continue;
        RationalPoint at{x.x + s * back.a1, x.y + s * back.a2};
        auto& ev = found.try_emplace(s, TraceEvent{s, at, {}, false}).first->second;
        ev.walls.push_back(i);
        if (t == 0) ev.degenerate = true;  // ray meets a wall base exactly
    }
    std::vector<TraceEvent> out;
    for (auto& [s, ev] : found) {
        if (ev.walls.size() > 1) ev.degenerate = true;
        for (const RationalPoint& p : d.marked_points())
            if (p == ev.at) ev.degenerate = true;
        out.push_back(std::move(ev));
    }
    return out;
}

// Candidate final directions: close {-v_rho} under adding wall-term
// multiples, with the total t-order budget k. Overapproximates, which only
// costs a few dead traces.
inline std::vector<ZExp> compute_trace_seeds(const Fan& fan, const std::vector<Wall>& walls,
                                             int k) {
    // Per wall: reachable (multiple, min t-order) pairs for one bend.
    struct Step {
        ZExp dir;
        std::vector<int> order_for_multiple;  // index r-1 -> min order
    };
    std::vector<Step> steps;
    for (const Wall& w : walls) {
        // One bend picks a term of prod_r (1 + c_r z^{r m})^{r e}, so the
        // reachable (multiple, order) pairs come from the canonical factors,
        // combined with repetition.
        std::vector<std::pair<long long, int>> base_terms;  // (multiple, order)
        for (const WallFactor& f : wall_factors(w)) {
            NilCoefficient c = f.fun.coeff(w.dir * f.multiple);
            base_terms.push_back({f.multiple, c.min_order()});
        }
        if (base_terms.empty()) continue;
        long long rmax_single = 0;
        for (auto& [r, o] : base_terms) rmax_single = std::max(rmax_single, r);
        long long rcap = rmax_single * k;
        std::vector<int> best(rcap + 1, k + 1);
        best[0] = 0;
        for (long long r = 1; r <= rcap; ++r)
            for (auto& [rr, oo] : base_terms)
                if (rr <= r && best[r - rr] + oo < best[r]) best[r] = best[r - rr] + oo;
        Step st;
        st.dir = w.dir;
        for (long long r = 1; r <= rcap; ++r) st.order_for_multiple.push_back(best[r]);
        steps.push_back(std::move(st));
    }

    std::map<ZExp, int> best_order;  // direction -> min total order used
    std::vector<ZExp> queue;
    for (ZExp v : fan.rays) {
        ZExp a = -v;
        if (best_order.emplace(a, 0).second) queue.push_back(a);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        ZExp a = queue[qi];
        int used = best_order[a];
        for (const Step& st : steps)
            for (std::size_t idx = 0; idx < st.order_for_multiple.size(); ++idx) {
                int cost = st.order_for_multiple[idx];
                if (used + cost > k) continue;
                ZExp b = a + st.dir * static_cast<long long>(idx + 1);
                if (b.is_zero()) continue;
                auto it = best_order.find(b);
                if (it == best_order.end() || it->second > used + cost) {
                    best_order[b] = used + cost;
                    queue.push_back(b);
                }
            }
    }
    std::vector<ZExp> out;
    for (auto& [a, o] : best_order) out.push_back(a);
    return out;
}

class Tracer {
  public:
    Tracer(const Diagram& d, RationalPoint u, bool probing = false)
        : d_(d), u_(u), probing_(probing) {}

    // Enumerate completions for the segment with exponent `a` heading into
    // `x`, where bends closer to u already consumed `used` with factor
    // `gamma`. Returns the completed lines via out_.
    void trace(const RationalPoint& x, ZExp a, TSubset used, const Rational& gamma,
               std::vector<BendRecord> bends) {
        auto events = scan_events(d_, x, a);
        step(events, 0, x, a, used, gamma, std::move(bends));
    }

    std::vector<BrokenLine> lines;
    bool completed = false;

  private:
    const Diagram& d_;
    RationalPoint u_;
    bool probing_;

    bool is_initial_direction(ZExp a) const {
        for (ZExp v : d_.scene.fan.rays)
            if (a == -v) return true;
        return false;
    }

    void emit(ZExp tail_dir, const std::vector<BendRecord>& bends) {
        completed = true;
        if (probing_) return;
        BrokenLine line;
        line.endpoint = u_;
        // Rebuild segments from infinity to u.
        LaurentPoly mono = LaurentPoly::monomial(tail_dir, 1);
        BrokenSegment seg;
        seg.unbounded = true;
        seg.monomial = mono;
        seg.dir = tail_dir;
        line.segments.push_back(seg);
        for (auto it = bends.rbegin(); it != bends.rend(); ++it) {
            const Wall& w = d_.walls[it->wall];
            LaurentPoly pick =
                LaurentPoly::monomial(w.dir * it->r, NilCoefficient::t(it->tset, it->gamma));
            mono = mono * pick;
            BrokenSegment s;
            s.unbounded = false;
            s.start = it->at;
            s.monomial = mono;
            s.dir = it->dir_before + w.dir * it->r;
            s.bendwall = it->wall;
            s.bend_base = w.base;
            s.bend_dir = w.dir;
            line.segments.push_back(s);
        }
        lines.push_back(std::move(line));
    }

    // Enumerate the (r, tset, gamma) bend choices at wall `wi` for post-bend
    // exponent a, then recurse from point P with the pre-bend exponent.
    // The bend picks one term of prod_r (1 + c_r z^{r m})^{r |det(a', m)|};
    // det(a', m) = det(a, m) since they differ by a multiple of m.
    void bend_branches(int wi, const RationalPoint& P, ZExp a, TSubset used,
                       const Rational& gamma, const std::vector<BendRecord>& bends) {
        const Wall& w = d_.walls[wi];
        long long e = det(a, w.dir);
        if (e < 0) e = -e;  // tau is the pre-bend direction itself
        if (e == 0) return;
        LaurentPoly h(1);
        for (const WallFactor& f : wall_factors(w)) h = h * unit_pow(f.fun, f.multiple * e);
        for (auto& [ex, c] : h.terms()) {
            if (ex.is_zero()) continue;
            long long r = ex.a1 != 0 ? ex.a1 / w.dir.a1 : ex.a2 / w.dir.a2;
            ZExp a_pre = a - ex;
            if (a_pre.is_zero()) continue;
            // det(a_pre, m) = det(a, m), so the chosen power is consistent.
            for (auto& [K, g] : c.terms()) {
                if (K.is_empty() || !K.disjoint(used)) continue;
                std::vector<BendRecord> nb = bends;
                nb.push_back({wi, P, r, K, g, a_pre});
                trace(P, a_pre, used.unite(K), gamma * g, std::move(nb));
            }
        }
    }

    void step(const std::vector<TraceEvent>& events, std::size_t idx, const RationalPoint& x,
              ZExp a, TSubset used, const Rational& gamma, std::vector<BendRecord> bends) {
        if (idx == events.size()) {
            if (is_initial_direction(a)) emit(a, bends);
            return;
        }
        const TraceEvent& ev = events[idx];
        if (ev.degenerate) {
            // A bend exactly at a wall base, a marked point, or a point on
            // several supports is ill-defined. Probe whether any such bend
            // could complete a line; if one could, the count at u depends on
            // the side of the perturbation and u must be rejected. Inert
            // pass-throughs are harmless and continue straight.
            for (int wi : ev.walls) {
                Tracer probe(d_, u_, /*probing=*/true);
                probe.bend_branches(wi, ev.at, a, used, gamma, bends);
                if (probe.completed)
                    throw TraceThroughVertex("backward trace from " + point_str(u_) +
                                             " meets a degenerate point at " + point_str(ev.at) +
                                             " (segment direction " + zexp_str(a) +
                                             ", bendable at " + d_.walls[wi].str() + ")");
            }
            step(events, idx + 1, x, a, used, gamma, std::move(bends));
            return;
        }
        bend_branches(ev.walls[0], ev.at, a, used, gamma, bends);
        step(events, idx + 1, x, a, used, gamma, std::move(bends));
    }
};

}  // namespace detail

inline std::vector<BrokenLine> enumerate_broken_lines(const Diagram& d, const RationalPoint& u) {
    for (const Wall& w : d.walls)
        if (on_support(w, u)) throw PointOnWall("u = " + point_str(u) + " lies on " + w.str());
    for (const RationalPoint& p : d.marked_points())
        if (p == u) throw PointOnWall("u = " + point_str(u) + " is a marked point");

    detail::Tracer tracer(d, u);
    for (ZExp seed : d.trace_seeds) tracer.trace(u, seed, TSubset::empty(), 1, {});

    // Canonical order: by final monomial exponent, then bend count; the
    // generation order is deterministic, so a stable sort totalizes it.
    std::stable_sort(tracer.lines.begin(), tracer.lines.end(),
                     [](const BrokenLine& a, const BrokenLine& b) {
                         ZExp ea = a.segments.back().dir, eb = b.segments.back().dir;
                         if (ea != eb) return ea < eb;
                         return a.segments.size() < b.segments.size();
                     });
    return tracer.lines;
}

inline ChamberPotential potential_at(const Diagram& d, const RationalPoint& u,
                                     bool keep_lines = false) {
    ChamberPotential out;
    out.at = u;
    std::vector<BrokenLine> lines = enumerate_broken_lines(d, u);
    for (const BrokenLine& l : lines) out.value += l.final_monomial();
    if (keep_lines) out.lines = std::move(lines);
    return out;
}

// ---------------------------------------------------------------------------
// Transport along a polyline: applies the pullback crossing maps in
// crossing order. transport(potential_at(u), path u -> u') = potential_at(u').

inline LaurentPoly transport(const LaurentPoly& p, const Diagram& d,
                             const std::vector<RationalPoint>& path) {
    if (path.size() < 2) return p;
    LaurentPoly cur = p;
    for (std::size_t leg = 0; leg + 1 < path.size(); ++leg) {
        const RationalPoint& a = path[leg];
        const RationalPoint& b = path[leg + 1];
        Rational vx = b.x - a.x, vy = b.y - a.y;
        for (const RationalPoint& v : {a, b})
            for (const Wall& w : d.walls)
                if (on_support(w, v))
                    throw PathThroughVertex("path vertex " + point_str(v) + " lies on " +
                                            w.str());
        // Collect strict interior crossings of this leg.
        std::map<Rational, int> crossings;  // leg parameter -> wall index
        for (int i = 0; i < static_cast<int>(d.walls.size()); ++i) {
            const Wall& w = d.walls[i];
            Rational dcross = cross(vx, vy, Rational(w.dir.a1), Rational(w.dir.a2));
            Rational bx = w.base.x - a.x, by = w.base.y - a.y;
            if (dcross == 0) {
                if (cross(bx, by, vx, vy) != 0) continue;  // parallel, distinct lines
                // Collinear: tangential only if the leg actually meets the
                // support. Endpoint parameters along the wall direction:
                Rational sa = w.dir.a1 != 0 ? (a.x - w.base.x) / w.dir.a1
                                            : (a.y - w.base.y) / w.dir.a2;
                Rational sb = w.dir.a1 != 0 ? (b.x - w.base.x) / w.dir.a1
                                            : (b.y - w.base.y) / w.dir.a2;
                if (sa >= 0 || sb >= 0)
                    throw TangentialCrossing("path leg runs along " + w.str());
                continue;
            }
            Rational t = cross(bx, by, Rational(w.dir.a1), Rational(w.dir.a2)) / dcross;
            Rational s = cross(bx, by, vx, vy) / dcross;
            if (t <= 0 || t >= 1 || s < 0) continue;
            if (s == 0)
                throw PathThroughVertex("path crosses the base of " + w.str());
            RationalPoint at{a.x + t * vx, a.y + t * vy};
            for (const RationalPoint& mp : d.marked_points())
                if (mp == at) throw PathThroughVertex("path meets marked point " + point_str(at));
            auto [it, fresh] = crossings.emplace(t, i);
            if (!fresh)
                throw PathThroughVertex("path crosses a wall intersection at " + point_str(at));
        }
        for (auto& [t, i] : crossings) cur = substitute(cur, crossing_map(d.walls[i], vx, vy));
    }
    return cur;
}

}  // namespace tropwall
