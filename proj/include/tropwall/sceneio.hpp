#pragma once

// Deterministic, versioned JSON serialization for scenes, diagrams,
// potentials, periods and descendant tables, plus the bundled golden
// chamber-potential fixtures used by the test suites.
//
// Canonical form: fixed key order, two-space indent, LF newlines, rationals
// as "p" or "p/q" strings, all lists in canonical value order. parse(emit(x))
// is the identity, and emit is a pure function of the value.

#include <fstream>

#include <json.hpp>

#include "tropwall/builder.hpp"
#include "tropwall/period.hpp"

namespace tropwall {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

enum class DocKind { Scene, Diagram, Potential, Period, Descendants };

inline std::string dockind_str(DocKind k) {
    switch (k) {
        case DocKind::Scene: return "scene";
        case DocKind::Diagram: return "diagram";
        case DocKind::Potential: return "potential";
        case DocKind::Period: return "period";
        case DocKind::Descendants: return "descendants";
    }
    throw InternalError("bad DocKind");
}

struct Document {
    DocKind kind;
    Scene scene;                  // Scene
    Diagram diagram;              // Diagram
    ChamberPotential potential;   // Potential
    PeriodSeries period_series;   // Period
    CollapsedPeriod collapsed;    // Period (optional part)
    bool has_collapsed = false;
    int k = 0;                    // Period / Descendants
    DescendantTable table;        // Descendants
};

namespace ioimpl {

inline void reject_unknown(const Json& j, std::initializer_list<const char*> keys,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known)
            throw MalformedDocument(0, 0, "unknown field \"" + it.key() + "\" in " + where);
    }
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        throw MalformedDocument(0, 0, std::string("missing field \"") + key + "\" in " + where);
    return *it;
}

inline Json point_json(const RationalPoint& p) {
    return Json::array({rational_str(p.x), rational_str(p.y)});
}
inline RationalPoint point_from(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw MalformedDocument(0, 0, "expected [\"p/q\",\"p/q\"] in " + where);
    return {parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>())};
}

inline Json zexp_json(ZExp a) { return Json::array({a.a1, a.a2}); }
inline ZExp zexp_from(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw MalformedDocument(0, 0, "expected [a,b] integer pair in " + where);
    return {j[0].get<long long>(), j[1].get<long long>()};
}

inline Json tset_json(TSubset I) {
    Json a = Json::array();
    for (int i : I.members()) a.push_back(i);
    return a;
}
inline TSubset tset_from(const Json& j, const std::string& where) {
    if (!j.is_array()) throw MalformedDocument(0, 0, "expected index list in " + where);
    TSubset I;
    int prev = 0;
    for (auto& e : j) {
        if (!e.is_number_integer())
            throw MalformedDocument(0, 0, "expected integer index in " + where);
        int i = e.get<int>();
        if (i < 1 || i > 31 || i <= prev)
            throw MalformedDocument(0, 0, "bad t-index " + std::to_string(i) + " in " + where);
        I = I.unite(TSubset::single(i));
        prev = i;
    }
    return I;
}

inline Json poly_json(const LaurentPoly& p) {
    Json a = Json::array();
    for (auto& [ze, c] : p.terms())
        for (auto& [I, r] : c.terms()) {
            Json rec;
            rec["zexp"] = zexp_json(ze);
            rec["tset"] = tset_json(I);
            rec["coeff"] = rational_str(r);
            a.push_back(std::move(rec));
        }
    return a;
}
inline LaurentPoly poly_from(const Json& j, const std::string& where) {
    if (!j.is_array()) throw MalformedDocument(0, 0, "expected term list in " + where);
    LaurentPoly p;
    for (auto& rec : j) {
        reject_unknown(rec, {"zexp", "tset", "coeff"}, where + " term");
        ZExp ze = zexp_from(field(rec, "zexp", where), where);
        TSubset I = tset_from(field(rec, "tset", where), where);
        const Json& c = field(rec, "coeff", where);
        if (!c.is_string()) throw MalformedDocument(0, 0, "coeff must be a string in " + where);
        p += LaurentPoly::monomial(ze, NilCoefficient::t(I, parse_rational(c.get<std::string>())));
    }
    return p;
}

inline Json scene_json(const Scene& s) {
    Json j;
    if (!s.fan.name.empty())
        j["fan"] = s.fan.name;
    else {
        Json rays = Json::array();
        for (ZExp v : s.fan.rays) rays.push_back(zexp_json(v));
        j["fan"] = Json{{"rays", std::move(rays)}};
    }
    Json pts = Json::array();
    for (auto& p : s.points) pts.push_back(point_json(p));
    j["points"] = std::move(pts);
    return j;
}
inline Scene scene_from(const Json& j) {
    reject_unknown(j, {"fan", "points"}, "scene");
    Scene s;
    const Json& f = field(j, "fan", "scene");
    if (f.is_string())
        s.fan = fan_builtin(f.get<std::string>());
    else if (f.is_object()) {
        reject_unknown(f, {"rays"}, "scene.fan");
        for (auto& r : field(f, "rays", "scene.fan")) s.fan.rays.push_back(zexp_from(r, "ray"));
    } else
        throw MalformedDocument(0, 0, "scene.fan must be a name or {\"rays\": ...}");
    for (auto& p : field(j, "points", "scene")) s.points.push_back(point_from(p, "scene.points"));
    return s;
}

inline Json wall_json(const Wall& w) {
    Json j;
    j["base"] = point_json(w.base);
    j["dir"] = zexp_json(w.dir);
    j["fun"] = poly_json(w.fun);
    Json prov;
    if (w.origin == Wall::Origin::FromPoint) {
        prov["type"] = "from_point";
        prov["point"] = w.point_index;
    } else {
        prov["type"] = "scattered";
        prov["at"] = point_json(w.scattered_at);
    }
    j["provenance"] = std::move(prov);
    return j;
}
inline Wall wall_from(const Json& j) {
    reject_unknown(j, {"base", "dir", "fun", "provenance"}, "wall");
    Wall w;
    w.base = point_from(field(j, "base", "wall"), "wall.base");
    w.dir = zexp_from(field(j, "dir", "wall"), "wall.dir");
    w.fun = poly_from(field(j, "fun", "wall"), "wall.fun");
    const Json& prov = field(j, "provenance", "wall");
    reject_unknown(prov, {"type", "point", "at"}, "wall.provenance");
    std::string type = field(prov, "type", "wall.provenance").get<std::string>();
    if (type == "from_point") {
        w.origin = Wall::Origin::FromPoint;
        w.point_index = field(prov, "point", "wall.provenance").get<int>();
    } else if (type == "scattered") {
        w.origin = Wall::Origin::Scattered;
        w.scattered_at = point_from(field(prov, "at", "wall.provenance"), "wall.provenance.at");
    } else
        throw MalformedDocument(0, 0, "bad provenance type \"" + type + "\"");
    return w;
}

inline Json diagram_json(const Diagram& d) {
    Json j;
    j["scene"] = scene_json(d.scene);
    Json walls = Json::array();
    std::vector<Wall> sorted = d.walls;
    sort_walls(sorted);
    for (auto& w : sorted) walls.push_back(wall_json(w));
    j["walls"] = std::move(walls);
    return j;
}
inline Diagram diagram_from(const Json& j) {
    reject_unknown(j, {"scene", "walls"}, "diagram");
    Diagram d;
    d.scene = scene_from(field(j, "scene", "diagram"));
    d.mask = d.scene.full_mask();
    for (auto& w : field(j, "walls", "diagram")) d.walls.push_back(wall_from(w));
    sort_walls(d.walls);
    d.trace_seeds = detail::compute_trace_seeds(d.scene.fan, d.walls, d.scene.k());
    return d;
}

inline Json potential_json(const ChamberPotential& p, bool with_lines) {
    Json j;
    j["at"] = point_json(p.at);
    j["value"] = poly_json(p.value);
    if (with_lines) {
        Json lines = Json::array();
        for (const BrokenLine& l : p.lines) {
            Json lj;
            Json segs = Json::array();
            for (const BrokenSegment& s : l.segments) {
                Json sj;
                sj["start"] = s.unbounded ? Json("unbounded") : point_json(s.start);
                sj["monomial"] = poly_json(s.monomial);
                sj["dir"] = zexp_json(s.dir);
                if (s.bendwall >= 0 || !s.bend_dir.is_zero()) {
                    Json b;
                    b["base"] = point_json(s.bend_base);
                    b["dir"] = zexp_json(s.bend_dir);
                    sj["bend"] = std::move(b);
                } else
                    sj["bend"] = Json(nullptr);
                segs.push_back(std::move(sj));
            }
            lj["segments"] = std::move(segs);
            lj["endpoint"] = point_json(l.endpoint);
            lines.push_back(std::move(lj));
        }
        j["lines"] = std::move(lines);
    }
    return j;
}
inline ChamberPotential potential_from(const Json& j) {
    reject_unknown(j, {"at", "value", "lines"}, "potential");
    ChamberPotential p;
    p.at = point_from(field(j, "at", "potential"), "potential.at");
    p.value = poly_from(field(j, "value", "potential"), "potential.value");
    if (auto it = j.find("lines"); it != j.end()) {
        for (auto& lj : *it) {
            reject_unknown(lj, {"segments", "endpoint"}, "broken line");
            BrokenLine l;
            l.endpoint = point_from(field(lj, "endpoint", "line"), "line.endpoint");
            for (auto& sj : field(lj, "segments", "line")) {
                reject_unknown(sj, {"start", "monomial", "dir", "bend"}, "segment");
                BrokenSegment s;
                const Json& st = field(sj, "start", "segment");
                if (st.is_string() && st.get<std::string>() == "unbounded")
                    s.unbounded = true;
                else
                    s.start = point_from(st, "segment.start");
                s.monomial = poly_from(field(sj, "monomial", "segment"), "segment.monomial");
                s.dir = zexp_from(field(sj, "dir", "segment"), "segment.dir");
                const Json& b = field(sj, "bend", "segment");
                if (!b.is_null()) {
                    reject_unknown(b, {"base", "dir"}, "segment.bend");
                    s.bend_base = point_from(field(b, "base", "segment.bend"), "segment.bend");
                    s.bend_dir = zexp_from(field(b, "dir", "segment.bend"), "segment.bend");
                }
                l.segments.push_back(std::move(s));
            }
            p.lines.push_back(std::move(l));
        }
    }
    return p;
}

inline Json period_json(const PeriodSeries& s, int k, const CollapsedPeriod* collapsed) {
    Json j;
    j["mmax"] = s.mmax;
    j["k"] = k;
    Json terms = Json::array();
    for (auto& [m, c] : s.coeff)
        for (auto& [I, v] : c.terms()) {
            Json t;
            t["m"] = m;
            t["tset"] = tset_json(I);
            t["value"] = rational_str(v);
            terms.push_back(std::move(t));
        }
    j["terms"] = std::move(terms);
    if (collapsed) {
        Json cj = Json::array();
        for (auto& [mn, v] : collapsed->coeff) {
            Json t;
            t["m"] = mn.first;
            t["n"] = mn.second;
            t["value"] = rational_str(v);
            cj.push_back(std::move(t));
        }
        j["collapsed"] = std::move(cj);
    }
    return j;
}
inline void period_from(const Json& j, Document& doc) {
    reject_unknown(j, {"mmax", "k", "terms", "collapsed"}, "period");
    doc.period_series.mmax = field(j, "mmax", "period").get<int>();
    doc.k = field(j, "k", "period").get<int>();
    for (auto& t : field(j, "terms", "period")) {
        reject_unknown(t, {"m", "tset", "value"}, "period term");
        int m = field(t, "m", "period term").get<int>();
        TSubset I = tset_from(field(t, "tset", "period term"), "period term");
        Rational v = parse_rational(field(t, "value", "period term").get<std::string>());
        doc.period_series.coeff[m] += NilCoefficient::t(I, v);
    }
    if (auto it = j.find("collapsed"); it != j.end()) {
        doc.has_collapsed = true;
        doc.collapsed.mmax = doc.period_series.mmax;
        doc.collapsed.k = doc.k;
        for (auto& t : *it) {
            reject_unknown(t, {"m", "n", "value"}, "collapsed term");
            doc.collapsed.coeff[{field(t, "m", "collapsed").get<int>(),
                                 field(t, "n", "collapsed").get<int>()}] =
                parse_rational(field(t, "value", "collapsed").get<std::string>());
        }
    }
}

inline Json descendants_json(const DescendantTable& t) {
    Json j;
    j["k"] = t.k;
    j["mmax"] = t.mmax;
    Json entries = Json::array();
    std::uint32_t full = t.k == 0 ? 0u : ((1u << t.k) - 1u);
    for (int m = 2; m <= t.mmax; ++m)
        for (std::uint32_t mask = 0;; ++mask) {
            TSubset I(mask);
            Json e;
            e["m"] = m;
            e["n"] = I.order();
            e["delta"] = m + I.order();
            e["I"] = tset_json(I);
            e["value"] = rational_str(t.entry(m, I));
            entries.push_back(std::move(e));
            if (mask >= full) break;
        }
    j["entries"] = std::move(entries);
    return j;
}
inline DescendantTable descendants_from(const Json& j) {
    reject_unknown(j, {"k", "mmax", "entries"}, "descendants");
    DescendantTable t;
    t.k = field(j, "k", "descendants").get<int>();
    t.mmax = field(j, "mmax", "descendants").get<int>();
    for (auto& e : field(j, "entries", "descendants")) {
        reject_unknown(e, {"m", "n", "delta", "I", "value"}, "descendant entry");
        int m = field(e, "m", "entry").get<int>();
        TSubset I = tset_from(field(e, "I", "entry"), "entry");
        Rational v = parse_rational(field(e, "value", "entry").get<std::string>());
        if (v != 0) t.entries[{m, I}] = v;
    }
    return t;
}

}  // namespace ioimpl

inline std::string emit(const Document& doc) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = dockind_str(doc.kind);
    switch (doc.kind) {
        case DocKind::Scene: j["payload"] = ioimpl::scene_json(doc.scene); break;
        case DocKind::Diagram: j["payload"] = ioimpl::diagram_json(doc.diagram); break;
        case DocKind::Potential:
            j["payload"] = ioimpl::potential_json(doc.potential, !doc.potential.lines.empty());
            break;
        case DocKind::Period:
            j["payload"] = ioimpl::period_json(doc.period_series, doc.k,
                                               doc.has_collapsed ? &doc.collapsed : nullptr);
            break;
        case DocKind::Descendants: j["payload"] = ioimpl::descendants_json(doc.table); break;
    }
    return j.dump(2) + "\n";
}

inline Document parse(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Recover line/column from the byte offset.
        int line = 1, col = 1;
        for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else
                ++col;
        }
        throw MalformedDocument(line, col, e.what());
    }
    if (!j.is_object()) throw MalformedDocument(1, 1, "top level must be an object");
    ioimpl::reject_unknown(j, {"schema_version", "kind", "payload"}, "document");
    const Json& sv = ioimpl::field(j, "schema_version", "document");
    if (!sv.is_string() || sv.get<std::string>() != kSchemaVersion)
        throw SchemaMismatch("unsupported schema_version " + sv.dump());
    std::string kind = ioimpl::field(j, "kind", "document").get<std::string>();
    const Json& payload = ioimpl::field(j, "payload", "document");

    Document doc;
    if (kind == "scene") {
        doc.kind = DocKind::Scene;
        doc.scene = ioimpl::scene_from(payload);
    } else if (kind == "diagram") {
        doc.kind = DocKind::Diagram;
        doc.diagram = ioimpl::diagram_from(payload);
    } else if (kind == "potential") {
        doc.kind = DocKind::Potential;
        doc.potential = ioimpl::potential_from(payload);
    } else if (kind == "period") {
        doc.kind = DocKind::Period;
        ioimpl::period_from(payload, doc);
    } else if (kind == "descendants") {
        doc.kind = DocKind::Descendants;
        doc.table = ioimpl::descendants_from(payload);
    } else
        throw SchemaMismatch("unknown document kind \"" + kind + "\"");
    return doc;
}

inline Document read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse(text);
}

inline void write_document(const std::string& path, const Document& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << emit(doc);
}

// ---------------------------------------------------------------------------
// Golden fixtures: the first- and second-order chamber potentials on P^2,
// as machine-readable potential documents. Sample points are canonical
// representatives of each chamber for the scenes
//   k=1: p1 = (0,0)        k=2: p1 = (0,0), p2 = (3,-2).

namespace goldenimpl {

inline LaurentPoly w0_p2() { return hori_vafa(fan_builtin("P2")); }

inline LaurentPoly mono(ZExp a, std::initializer_list<int> I, long long c = 1) {
    return LaurentPoly::monomial(a, NilCoefficient::t(TSubset::of(I), Rational(c)));
}

}  // namespace goldenimpl

struct GoldenEntry {
    std::string name;  // "w1_A", "w2_C1", ...
    Document doc;
};

inline std::vector<GoldenEntry> golden_tables() {
    using goldenimpl::mono;
    using goldenimpl::w0_p2;
    const LaurentPoly w0 = w0_p2();
    auto pot = [&](const std::string& name, RationalPoint at, LaurentPoly value) {
        Document d;
        d.kind = DocKind::Potential;
        d.potential.at = at;
        d.potential.value = std::move(value);
        return GoldenEntry{name, std::move(d)};
    };
    std::vector<GoldenEntry> out;
    // First order (three chambers).
    out.push_back(pot("w1_A", {1, -1}, w0 + mono({0, -1}, {1})));
    out.push_back(pot("w1_B", {-2, 1}, w0 + mono({-1, 0}, {1})));
    out.push_back(pot("w1_C", {2, 1}, w0 + mono({1, 1}, {1})));
    // Second order (nine chambers).
    out.push_back(pot("w2_I", {1, 2}, w0 + mono({1, 1}, {1}) + mono({-1, 0}, {2})));
    out.push_back(pot("w2_J", {7, -1}, w0 + mono({0, -1}, {1}) + mono({1, 1}, {2})));
    out.push_back(pot("w2_K", {1, -1}, w0 + mono({0, -1}, {1}) + mono({-1, 0}, {2})));
    out.push_back(pot("w2_A1", {10, -10},
                      w0 + mono({0, -1}, {1}) + mono({0, -1}, {2}) + mono({1, -1}, {1, 2})));
    out.push_back(pot("w2_A2", {2, -7},
                      w0 + mono({0, -1}, {1}) + mono({0, -1}, {2}) + mono({-1, -2}, {1, 2})));
    out.push_back(pot("w2_B1", {-5, -1},
                      w0 + mono({-1, 0}, {1}) + mono({-1, 0}, {2}) + mono({-2, -1}, {1, 2})));
    out.push_back(pot("w2_B2", {-5, 1},
                      w0 + mono({-1, 0}, {1}) + mono({-1, 0}, {2}) + mono({-1, 1}, {1, 2})));
    out.push_back(pot("w2_C1", {4, 3},
                      w0 + mono({1, 1}, {1}) + mono({1, 1}, {2}) + mono({1, 2}, {1, 2})));
    out.push_back(pot("w2_C2", {8, 1},
                      w0 + mono({1, 1}, {1}) + mono({1, 1}, {2}) + mono({2, 1}, {1, 2})));
    return out;
}

}  // namespace tropwall
