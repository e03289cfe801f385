// tropwall: build tropical wall structures for point-constrained
// superpotentials on toric Fano surfaces, evaluate chamber potentials,
// check consistency, compute quantum periods, and render SVG figures.
//
// Exit codes: 0 success, 1 usage error, 2 domain error.

#include <iostream>

#include <CLI11.hpp>

#include "tropwall/tropwall.hpp"

namespace tw = tropwall;

namespace {

tw::RationalPoint parse_point_arg(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--at", "expected \"x,y\" with rational coordinates");
    try {
        return {tw::parse_rational(text.substr(0, comma)),
                tw::parse_rational(text.substr(comma + 1))};
    } catch (const tw::MalformedRational&) {
        throw CLI::ValidationError("--at", "expected rational coordinates in \"" + text + "\"");
    }
}

tw::Scene load_scene(const std::string& path) {
    tw::Document doc = tw::read_document(path);
    if (doc.kind != tw::DocKind::Scene)
        throw tw::SchemaMismatch("expected a scene document in " + path);
    return doc.scene;
}

// Viewport that comfortably contains the scene's points and wall bases.
tw::RenderSpec auto_viewport(const tw::Diagram& d) {
    tw::RenderSpec spec;
    bool any = false;
    auto grow = [&](const tw::RationalPoint& p) {
        if (!any) {
            spec.x0 = p.x;
            spec.x1 = p.x;
            spec.y0 = p.y;
            spec.y1 = p.y;
            any = true;
            return;
        }
        spec.x0 = std::min(spec.x0, p.x);
        spec.x1 = std::max(spec.x1, p.x);
        spec.y0 = std::min(spec.y0, p.y);
        spec.y1 = std::max(spec.y1, p.y);
    };
    for (const auto& p : d.marked_points()) grow(p);
    for (const auto& w : d.walls) grow(w.base);
    tw::Rational pad = any ? (spec.x1 - spec.x0 + spec.y1 - spec.y0) / 4 + 3 : tw::Rational(8);
    spec.x0 -= pad;
    spec.x1 += pad;
    spec.y0 -= pad;
    spec.y1 += pad;
    return spec;
}

int cmd_walls(const std::string& scene_path, const std::string& out_path,
              const std::string& svg_path) {
    tw::Scene scene = load_scene(scene_path);
    tw::Diagram d = tw::build_diagram(scene);
    tw::Document doc;
    doc.kind = tw::DocKind::Diagram;
    doc.diagram = d;
    tw::write_document(out_path, doc);
    int scattered = 0;
    for (const auto& w : d.walls)
        if (w.origin == tw::Wall::Origin::Scattered) ++scattered;
    std::cout << "wrote " << out_path << ": " << d.walls.size() << " walls (" << scattered
              << " scattered)\n";
    if (!svg_path.empty()) {
        tw::RenderSpec spec = auto_viewport(d);
        std::ofstream svg(svg_path, std::ios::binary);
        if (!svg) throw tw::Error("cannot write " + svg_path);
        svg << tw::render_svg(d, spec);
        std::cout << "wrote " << svg_path << "\n";
    }
    return 0;
}

int cmd_potential(const std::string& scene_path, const std::string& at, bool lines) {
    tw::Scene scene = load_scene(scene_path);
    tw::RationalPoint u = parse_point_arg(at);
    tw::Diagram d = tw::build_diagram(scene);
    tw::Document doc;
    doc.kind = tw::DocKind::Potential;
    doc.potential = tw::potential_at(d, u, lines);
    std::cout << tw::emit(doc);
    return 0;
}

int cmd_period(const std::string& scene_path, const std::string& at, int max_order,
               bool collapse) {
    tw::Scene scene = load_scene(scene_path);
    tw::RationalPoint u = parse_point_arg(at);
    tw::Diagram d = tw::build_diagram(scene);
    tw::ChamberPotential P = tw::potential_at(d, u);
    tw::PeriodSeries ps = tw::period(P.value, max_order);

    tw::Document pd;
    pd.kind = tw::DocKind::Period;
    pd.period_series = ps;
    pd.k = scene.k();
    if (collapse) {
        pd.has_collapsed = true;
        pd.collapsed = tw::collapsed_period(ps, scene.k());
    }
    std::cout << tw::emit(pd);

    tw::Document dd;
    dd.kind = tw::DocKind::Descendants;
    dd.table = tw::descendants(ps, scene.k());
    std::cout << tw::emit(dd);
    return 0;
}

int cmd_check(const std::string& path, int samples, std::uint64_t seed, int max_order) {
    tw::Document doc = tw::read_document(path);
    tw::Diagram d;
    if (doc.kind == tw::DocKind::Scene)
        d = tw::build_diagram(doc.scene);
    else if (doc.kind == tw::DocKind::Diagram)
        d = doc.diagram;
    else
        throw tw::SchemaMismatch("check expects a scene or diagram document");
    if (max_order <= 0) max_order = tw::default_max_order(d.scene.k());

    // 1. Loop consistency at every non-marked intersection point.
    std::set<tw::RationalPoint> pts = tw::detail::support_intersections(d.walls);
    auto marked = d.marked_points();
    int checked = 0;
    for (const auto& q : pts) {
        bool is_marked = false;
        for (const auto& p : marked)
            if (p == q) is_marked = true;
        if (is_marked) continue;
        tw::CoordMap F = tw::loop_automorphism(d.walls, q, true);
        if (!tw::is_identity(F)) {
            std::cout << "FAIL loop-consistency: nontrivial loop at " << tw::point_str(q)
                      << ": z1 -> " << F.image_z1.str() << "\n";
            return 2;
        }
        ++checked;
    }
    std::cout << "loop-consistency: " << checked << " scattering points OK\n";

    // 2. Random generic samples.
    std::mt19937_64 rng(seed);
    tw::RenderSpec box = auto_viewport(d);
    auto draw_point = [&]() {
        long long rx = static_cast<long long>(rng() % 9974);
        long long ry = static_cast<long long>(rng() % 9974);
        return tw::RationalPoint{box.x0 + (box.x1 - box.x0) * tw::Rational(rx, 9973),
                                 box.y0 + (box.y1 - box.y0) * tw::Rational(ry, 9973)};
    };
    std::vector<tw::RationalPoint> us;
    std::vector<tw::LaurentPoly> values;
    for (int tries = 0; static_cast<int>(us.size()) < samples && tries < samples * 20; ++tries) {
        tw::RationalPoint u = draw_point();
        try {
            values.push_back(tw::potential_at(d, u).value);
            us.push_back(u);
        } catch (const tw::Error&) {
            continue;  // on a wall or degenerate; redraw
        }
    }
    if (static_cast<int>(us.size()) < 2) throw tw::Error("could not sample generic points");

    // 3. Transport compatibility between sample pairs.
    int transports = 0;
    for (std::size_t i = 0; i + 1 < us.size(); ++i) {
        tw::LaurentPoly moved;
        try {
            moved = tw::transport(values[i], d, {us[i], us[i + 1]});
        } catch (const tw::Error&) {
            continue;  // path hit a vertex; this pair is skipped
        }
        if (!(moved == values[i + 1])) {
            std::cout << "FAIL transport: from " << tw::point_str(us[i]) << " to "
                      << tw::point_str(us[i + 1]) << "\n  transported: " << moved.str()
                      << "\n  direct:      " << values[i + 1].str() << "\n";
            return 2;
        }
        ++transports;
    }
    std::cout << "transport-compatibility: " << transports << " chamber pairs OK\n";

    // 4. Chamber invariance of the period.
    auto mismatch = tw::chamber_invariance_check(d, us, max_order);
    if (mismatch) {
        std::cout << "FAIL period-invariance: between " << tw::point_str(mismatch->u1) << " and "
                  << tw::point_str(mismatch->u2) << " at m=" << mismatch->m << ": "
                  << tw::rational_str(mismatch->v1) << " vs " << tw::rational_str(mismatch->v2)
                  << "\n";
        return 2;
    }
    std::cout << "period-invariance: " << us.size() << " samples at max order " << max_order
              << " OK\n";
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropical wall structures, chamber potentials and quantum periods"};
    app.require_subcommand(1);

    std::string scene_path, out_path, svg_path, at;
    bool lines = false, collapse = false;
    int max_order = 0, samples = 8;
    std::uint64_t seed = 1;

    auto* walls = app.add_subcommand("walls", "build the wall structure for a scene");
    walls->add_option("--scene", scene_path, "scene JSON file")->required();
    walls->add_option("--out", out_path, "output diagram JSON file")->required();
    walls->add_option("--svg", svg_path, "also render the diagram as SVG");

    auto* potential = app.add_subcommand("potential", "evaluate the potential in a chamber");
    potential->add_option("--scene", scene_path, "scene JSON file")->required();
    potential->add_option("--at", at, "sample point \"x,y\"")->required();
    potential->add_flag("--lines", lines, "include the broken lines");

    auto* period = app.add_subcommand("period", "quantum period and descendant table");
    period->add_option("--scene", scene_path, "scene JSON file")->required();
    period->add_option("--at", at, "sample point \"x,y\"")->required();
    period->add_option("--max-order", max_order, "truncation order in 1/hbar")->required();
    period->add_flag("--collapse", collapse, "also report the t_i -> t base change");

    auto* check = app.add_subcommand("check", "consistency and invariance checks");
    check->add_option("--scene", scene_path, "scene or diagram JSON file")->required();
    check->add_option("--samples", samples, "number of random sample points");
    check->add_option("--seed", seed, "sampling seed");
    check->add_option("--max-order", max_order, "period truncation order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (walls->parsed()) return cmd_walls(scene_path, out_path, svg_path);
        if (potential->parsed()) return cmd_potential(scene_path, at, lines);
        if (period->parsed()) return cmd_period(scene_path, at, max_order, collapse);
        if (check->parsed()) return cmd_check(scene_path, samples, seed, max_order);
    } catch (const tropwall::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
