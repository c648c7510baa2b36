// cspace: scene I/O, distance queries, TGS regions, oracle maps and SVG output.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "cspace/distances.hpp"
#include "cspace/families.hpp"
#include "cspace/oracle.hpp"
#include "cspace/render.hpp"
#include "cspace/scene.hpp"
#include "cspace/tgs.hpp"

using namespace cspace;

namespace {

enum Exit { kOk = 0, kGeneric = 1, kParse = 2, kScene = 3, kUndefined = 4, kMismatch = 5 };

int exit_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError: return kParse;
        case ErrorCode::SchemaError:
        case ErrorCode::InvalidRing:
        case ErrorCode::UnknownObject:
        case ErrorCode::UnknownGroup: return kScene;
        case ErrorCode::UndefinedErosionEmpty: return kUndefined;
        case ErrorCode::OracleMismatch: return kMismatch;
        default: return kGeneric;
    }
}

struct Options {
    std::string scene;
    std::string expr;
    std::string preset;
    std::vector<std::string> lambdas;
    int grid = 200;
    std::string svg;
    std::string out;
    int disk_segments = 0;
    double eps = 0;
    std::string subject;
    std::string ref;
    std::string kind = "gamma1";
    std::vector<double> at;
    std::string map;
};

Point point_of(const std::vector<double>& v) {
    if (v.empty()) return {0, 0};
    if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, "--at takes two numbers");
    return {v[0], v[1]};
}

std::map<std::string, double> lambda_map(const std::vector<std::string>& kv) {
    std::map<std::string, double> out;
    for (const auto& s : kv) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::InvalidArgument, "--lambda expects k=v, got " + s);
        try {
            out[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "--lambda value is not a number: " + s);
        }
    }
    return out;
}

Scene load(const Options& o) {
    Scene s = load_scene(o.scene);
    if (o.disk_segments > 0) s.config.disk_segments = o.disk_segments;
    if (o.eps > 0) s.config.eps = o.eps;
    if (!o.subject.empty()) {
        if (!s.has_object(o.subject)) throw Error(ErrorCode::UnknownObject, "subject not in scene: " + o.subject);
        s.subject = o.subject;
    }
    return s;
}

TgsExpr expression(const Options& o, const Scene& s) {
    if (!o.preset.empty()) {
        if (!o.expr.empty()) throw Error(ErrorCode::InvalidArgument, "--expr and --preset are exclusive");
        Preset p = build_preset(o.preset, s, lambda_map(o.lambdas));
        std::fprintf(stderr, "preset %s: %s\n", p.name.c_str(), p.text.c_str());
        return p.expr;
    }
    if (o.expr.empty()) throw Error(ErrorCode::InvalidArgument, "one of --expr or --preset is required");
    return normalize(multi_obstacle_expand(parse(o.expr), s));
}

void collect_atoms(const TgsExpr& e, std::vector<TgsAtom>& out) {
    if (e.op == TgsExpr::Op::Atom) out.push_back(e.atom);
    for (const auto& c : e.children) collect_atoms(c, out);
}

// One dashed outline per distinct atom slice.
std::vector<SvgLayer> family_layers(const Evaluator& ev, const TgsExpr& e) {
    static const char* palette[] = {"#1f77b4", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
    std::vector<TgsAtom> atoms;
    collect_atoms(e, atoms);
    std::vector<SvgLayer> layers;
    std::vector<std::string> seen;
    for (const auto& a : atoms) {
        if (a.cmp == Cmp::TO_MIN) continue;
        char label[160];
        std::snprintf(label, sizeof label, "%s-%s-%s-%g", dsl_name(a.dist), a.subject.c_str(), a.reference.c_str(), a.lambda);
        if (std::find(seen.begin(), seen.end(), label) != seen.end()) continue;
        seen.push_back(label);
        try {
            const FamilySlice s = ev.cache(a.subject, a.reference).slice(family_for(a.dist), a.lambda);
            const char* dash = layers.size() % 2 ? "2,3" : "6,3";
            layers.push_back({label, s.region, palette[layers.size() % 6], dash});
        } catch (const Error&) {
            // undefined family, nothing to draw
        }
    }
    return layers;
}

void print_diagnostics(const std::vector<std::string>& d) {
    for (const auto& s : d) std::fprintf(stderr, "diagnostic: %s\n", s.c_str());
}

int cmd_dist(const Options& o) {
    const Scene s = load(o);
    if (o.ref.empty()) throw Error(ErrorCode::InvalidArgument, "--ref is required");
    const auto kind = distance_from_dsl(o.kind);
    if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown distance kind: " + o.kind);
    const Point p = point_of(o.at);
    const MultiPolygon b = translate(s.object(s.subject), p);
    const MultiPolygon& a = s.object(o.ref);

    SignedDistance r;
    switch (*kind) {
        case DistanceKind::D1: r = d1_witness(b, a); break;
        case DistanceKind::D2: r.value = d2(b, a); break;
        case DistanceKind::DSTAR: r.value = dstar(a, b); break;
        case DistanceKind::GAMMA1: r = gamma1(b, a); break;
        case DistanceKind::GAMMA2: r.value = gamma2(b, a); break;
        case DistanceKind::ETA1: r = eta(b, a).first; break;
        case DistanceKind::ETA2: r.value = eta(b, a).second; break;
        case DistanceKind::DELTA1: r = delta(b, a).first; break;
        case DistanceKind::DELTA2: r.value = delta(b, a).second; break;
        case DistanceKind::MU_BA: r = mu(b, a); break;
        case DistanceKind::MU_AB: r = mu(a, b); break;
        case DistanceKind::HAUS: r.value = hausdorff(b, a); break;
    }
    std::printf("%s(%s+(%.17g,%.17g),%s) = %.17g\n", dsl_name(*kind), s.subject.c_str(), p.x, p.y, o.ref.c_str(),
                r.value);
    if (r.witness)
        std::printf("witness (%.17g,%.17g) -> (%.17g,%.17g)\n", r.witness->first.x, r.witness->first.y,
                    r.witness->second.x, r.witness->second.y);
    return kOk;
}

void write_svg(const Options& o, const Evaluator& ev, const TgsExpr& e, const RegionNR& r) {
    if (o.svg.empty()) return;
    SvgOptions opt;
    opt.layers = family_layers(ev, e);
    write_file(o.svg, render_svg(ev.scene(), r, opt));
}

int cmd_region(const Options& o) {
    Evaluator ev(load(o));
    const TgsExpr e = expression(o, ev.scene());
    const RegionResult rr = ev.eval_region(e);
    print_diagnostics(rr.diagnostics);
    const std::string json = map_to_json(rr.region, rr.diagnostics);
    if (o.out.empty())
        std::cout << json << "\n";
    else
        write_file(o.out, json);
    write_svg(o, ev, e, rr.region);
    std::fprintf(stderr, "components: %zu%s\n", component_count(rr.region, ev.scene().config.eps),
                 rr.region.is_empty() ? " (impossible TGS)" : "");
    return kOk;
}

int cmd_classify(const Options& o) {
    Evaluator ev(load(o));
    const TgsExpr e = expression(o, ev.scene());
    const Point p = point_of(o.at);
    const RegionResult rr = ev.eval_region(e);
    const PointResult pr = ev.eval_point(e, p);
    print_diagnostics(rr.diagnostics);
    print_diagnostics(pr.diagnostics);
    std::printf("%s\n", to_string(nr_classify(rr.region, p, ev.scene().config.eps)));
    std::fprintf(stderr, "point backend: %s\n", to_string(pr.value));
    return kOk;
}

int cmd_sample(const Options& o) {
    Evaluator ev(load(o));
    const TgsExpr e = expression(o, ev.scene());
    const oracle::Bitmap b = oracle::oracle_map(ev, e, o.grid);
    if (o.out.empty())
        std::cout << oracle::to_pgm(b);
    else
        write_file(o.out, oracle::to_pgm(b));
    std::fprintf(stderr, "true %zu, ambiguous %zu, components %zu\n", b.count(Truth::True), b.count(Truth::Ambiguous),
                 oracle::component_count(b));
    return kOk;
}

int cmd_render(const Options& o) {
    const Scene s = load(o);
    if (o.svg.empty()) throw Error(ErrorCode::InvalidArgument, "--svg is required");
    if (!o.map.empty()) {
        const RegionNR r = map_from_json(read_file(o.map));
        write_file(o.svg, render_svg(s, r));
        return kOk;
    }
    Evaluator ev(s);
    const TgsExpr e = expression(o, ev.scene());
    const RegionResult rr = ev.eval_region(e);
    print_diagnostics(rr.diagnostics);
    write_svg(o, ev, e, rr.region);
    return kOk;
}

int cmd_preset(const Options& o) {
    if (o.preset.empty()) throw Error(ErrorCode::InvalidArgument, "--preset is required");
    Evaluator ev(load(o));
    const TgsExpr e = expression(o, ev.scene());
    std::fprintf(stderr, "expanded: %s\n", print(e).c_str());
    const RegionResult rr = ev.eval_region(e);
    print_diagnostics(rr.diagnostics);
    const oracle::Bitmap b = oracle::oracle_map(ev, e, o.grid);
    const oracle::Agreement ag = oracle::compare_backends(ev, e, rr.region, b);
    const std::size_t rc = component_count(rr.region, ev.scene().config.eps), bc = oracle::component_count(b);
    std::printf("cells %zu, band %zu, mismatches %zu (%.4f%%), components region %zu oracle %zu\n", ag.checked, ag.band,
                ag.mismatches, 100.0 * ag.fraction(), rc, bc);
    for (const auto& w : ag.witnesses) std::fprintf(stderr, "mismatch at (%.9g, %.9g)\n", w.x, w.y);
    if (ag.fraction() >= 0.005) {
        std::fprintf(stderr, "error: backends disagree on %.4f%% of cells\n", 100.0 * ag.fraction());
        return kMismatch;
    }
    if (!o.out.empty()) write_file(o.out, map_to_json(rr.region, rr.diagnostics));
    write_svg(o, ev, e, rr.region);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Configuration-space regions of translational distance constraints"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c, bool with_expr) {
        c->add_option("--scene", o.scene, "scene JSON (cspace-scene/1)")->required()->check(CLI::ExistingFile);
        c->add_option("--disk-segments", o.disk_segments, "polygonal disk resolution")->check(CLI::Range(8, 4096));
        c->add_option("--eps", o.eps, "welding and boundary tolerance")->check(CLI::PositiveNumber);
        c->add_option("--subject", o.subject, "moving object (default: scene subject)");
        if (with_expr) {
            c->add_option("--expr", o.expr, "TGS expression");
            c->add_option("--preset", o.preset, "findspace, problem1a, problem1b, problem2, problem3, problem4, problem5, problem5full");
            c->add_option("--lambda", o.lambdas, "preset parameter k=v, repeatable")->allow_extra_args(false);
        }
    };

    auto* dist = app.add_subcommand("dist", "distance from the translated subject to a reference object");
    common(dist, false);
    dist->add_option("--ref", o.ref, "reference object")->required();
    dist->add_option("--kind", o.kind, "d1 d2 dstar gamma1 gamma2 eta1 eta2 delta1 delta2 mu hdir haus");
    dist->add_option("--at", o.at, "translation x y")->expected(2);

    auto* region = app.add_subcommand("region", "solution region as map JSON");
    common(region, true);
    region->add_option("--out", o.out, "map JSON path (default stdout)");
    region->add_option("--svg", o.svg, "also render SVG");

    auto* classify = app.add_subcommand("classify", "membership of one translation");
    common(classify, true);
    classify->add_option("--at", o.at, "translation x y")->expected(2)->required();

    auto* sample = app.add_subcommand("sample", "oracle bitmap as PGM");
    common(sample, true);
    sample->add_option("--grid", o.grid, "cells per side")->check(CLI::Range(2, 4000));
    sample->add_option("--out", o.out, "PGM path (default stdout)");

    auto* render = app.add_subcommand("render", "SVG of scene, region and family boundaries");
    common(render, true);
    render->add_option("--svg", o.svg, "output path")->required();
    render->add_option("--map", o.map, "render a saved map instead of evaluating")->check(CLI::ExistingFile);

    auto* preset = app.add_subcommand("preset", "run a problem preset and check both backends agree");
    common(preset, true);
    preset->add_option("--grid", o.grid, "oracle cells per side")->check(CLI::Range(50, 4000));
    preset->add_option("--out", o.out, "map JSON path");
    preset->add_option("--svg", o.svg, "SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kGeneric;
    }

    try {
        if (*dist) return cmd_dist(o);
        if (*region) return cmd_region(o);
        if (*classify) return cmd_classify(o);
        if (*sample) return cmd_sample(o);
        if (*render) return cmd_render(o);
        if (*preset) return cmd_preset(o);
    } catch (const TgsParseError& e) {
        std::fprintf(stderr, "error: PARSE_ERROR: %s\n", e.what());
        return kParse;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s: %s\n", to_string(e.code()), e.what());
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kGeneric;
    }
    return kGeneric;
}
