#include <doctest.h>

#include <cmath>
#include <random>

#include "cspace/tgs.hpp"
#include "random_expr.hpp"
#include "support.hpp"

using namespace cspace;
using testing::box;
using testing::poly;

namespace {

TgsAtom atom(DistanceKind d, const char* s, const char* r, Cmp c, double l) {
    TgsAtom a;
    a.dist = d;
    a.subject = s;
    a.reference = r;
    a.cmp = c;
    a.lambda = l;
    return a;
}

TgsExpr A(DistanceKind d, Cmp c, double l, const char* ref = "A") { return TgsExpr::make_atom(atom(d, "B", ref, c, l)); }

Scene two_squares() {
    Scene s;
    s.objects["A"] = box(0, 0, 1, 1);
    s.objects["B"] = box(0, 0, 1, 1);
    return s;
}

bool member(const RegionNR& r, Point p) { return nr_classify(r, p) == Membership::Member; }

}  // namespace

TEST_CASE("parse examples") {
    const TgsExpr e = parse("gamma1(B,A) <= 2 & gamma1(B,A) > 1");
    CHECK(e == TgsExpr::conj({A(DistanceKind::GAMMA1, Cmp::LE, 2), A(DistanceKind::GAMMA1, Cmp::GT, 1)}));

    const TgsExpr f = parse("eta1(B,R) <= 0 & not (gamma1(B,A1) <= 0 | gamma1(B,A2) <= 0)");
    REQUIRE(f.op == TgsExpr::Op::And);
    REQUIRE(f.children.size() == 2);
    CHECK(f.children[0] == A(DistanceKind::ETA1, Cmp::LE, 0, "R"));
    CHECK(f.children[1].op == TgsExpr::Op::Not);
    CHECK(f.children[1].children[0] ==
          TgsExpr::disj({A(DistanceKind::GAMMA1, Cmp::LE, 0, "A1"), A(DistanceKind::GAMMA1, Cmp::LE, 0, "A2")}));

    const TgsExpr m = parse("gamma2(B,A) -> min");
    REQUIRE(m.is_atom());
    CHECK(m.atom.cmp == Cmp::TO_MIN);
    CHECK(m.atom.dist == DistanceKind::GAMMA2);

    CHECK(parse("mu(B,A) != 1.5 or hdir(B,A) = -2 and haus(B,A) >= 1e-3") ==
          parse("mu(B,A) != 1.5 | (hdir(B,A) = -2 & haus(B,A) >= 0.001)"));
    CHECK(parse("!d1(B,A) < 3").op == TgsExpr::Op::Not);
    CHECK(parse("true").op == TgsExpr::Op::True);
}

TEST_CASE("parse errors carry a position and expectations") {
    auto fails_at = [](const char* text, std::size_t pos) {
        try {
            parse(text);
        } catch (const TgsParseError& e) {
            CHECK(e.code() == ErrorCode::ParseError);
            CHECK(e.position() == pos);
            CHECK_FALSE(e.expected().empty());
            return;
        }
        FAIL("no error for ", text);
    };
    fails_at("gamma1(B,A) <= ", 15);
    fails_at("gamma3(B,A) <= 1", 0);
    fails_at("gamma1(B A) <= 1", 9);
    fails_at("gamma1(B,A) <= 1 &", 18);
    fails_at("(gamma1(B,A) <= 1", 17);
    fails_at("gamma1(B,A) -> max", 15);
    fails_at("gamma1(B,A) <= 1 gamma2(B,A) <= 1", 17);
}

TEST_CASE("normalize examples") {
    CHECK(normalize(TgsExpr::negate(A(DistanceKind::GAMMA1, Cmp::LT, 2))) == A(DistanceKind::GAMMA1, Cmp::GE, 2));
    CHECK(normalize(TgsExpr::disj({A(DistanceKind::GAMMA1, Cmp::LE, 1), A(DistanceKind::GAMMA1, Cmp::LE, 2)})) ==
          A(DistanceKind::GAMMA1, Cmp::LE, 2));
    CHECK(normalize(TgsExpr::conj({A(DistanceKind::GAMMA1, Cmp::LT, 1), A(DistanceKind::GAMMA1, Cmp::GT, 1)})).op ==
          TgsExpr::Op::False);
    CHECK(normalize(parse("!(gamma1(B,A) <= 1 & eta1(B,R) > 0)")) == parse("gamma1(B,A) > 1 | eta1(B,R) <= 0"));
    CHECK(normalize(parse("gamma1(B,A) <= 3 & gamma1(B,A) >= 3")) == parse("gamma1(B,A) = 3"));
    CHECK(normalize(parse("!!gamma2(B,A) -> min")) == parse("gamma2(B,A) -> min"));
    CHECK(normalize(parse("gamma1(B,A) <= 1 | true")).op == TgsExpr::Op::True);
}

TEST_CASE("point evaluation on the findspace scene") {
    const Evaluator ev(load_scene(testing::fixture("findspace.json")));
    const Preset p = build_preset("findspace", ev.scene(), {});
    CHECK(ev.eval_point(p.expr, {0.5, 0.5}).value == Truth::True);
    CHECK(ev.eval_point(p.expr, {2.5, 2.2}).value == Truth::False);
    CHECK(ev.eval_point(p.expr, {-0.5, 0.5}).value == Truth::False);
    // rightmost vertex (1.2, 0) of B lands on the left edge of A1
    const TgsExpr touch = parse("gamma1(B,A1) <= 0");
    const PointResult r = ev.eval_point(touch, {0.8, 2.2});
    CHECK(r.value == Truth::Ambiguous);
    CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("undefined distances make atoms false") {
    Scene s;
    s.objects["A"] = box(0, 0, 1, 1);
    s.objects["B"] = box(0, 0, 2, 2);
    const Evaluator ev(s);
    const PointResult r = ev.eval_point(parse("eta1(B,A) <= 5"), {0, 0});
    CHECK(r.value == Truth::False);
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].find("UNDEFINED_EROSION_EMPTY") != std::string::npos);
    const RegionResult rr = ev.eval_region(parse("eta1(B,A) <= 5"));
    CHECK(rr.region.is_empty());
    CHECK_FALSE(rr.diagnostics.empty());
}

TEST_CASE("annulus between two families") {
    const Evaluator ev(two_squares());
    const TgsExpr e = parse("gamma2(B,A) <= 4 & gamma1(B,A) >= 0.5");
    const RegionResult rr = ev.eval_region(e);
    const FamilyCache& fc = ev.cache("B", "A");
    const FamilySlice g1 = fc.slice(FamilyKind::GAMMA1_F, 0.5), g2 = fc.slice(FamilyKind::GAMMA2_F, 4);
    // both boundaries belong to the solution
    int on = 0;
    for (const auto* s : {&g1, &g2})
        s->region.for_each_edge([&](const Point& a, const Point& b) {
            CHECK(member(rr.region, a + (b - a) * 0.5));
            ++on;
        });
    CHECK(on > 64);
    CHECK_FALSE(member(rr.region, {0, 0}));
    CHECK(member(rr.region, {2, 0}));
    CHECK_FALSE(member(rr.region, {3, 0}));
    CHECK(component_count(rr.region) == 1);
}

TEST_CASE("minimum of gamma2 gives the enclosing-circle centre") {
    const Evaluator ev(two_squares());
    const RegionResult point = ev.eval_region(parse("gamma1(B,A) >= -1.5 & gamma2(B,A) -> min"));
    CHECK_FALSE(point.region.is_empty());
    CHECK(point.region.area.empty());
    CHECK(member(point.region, {0, 0}));
    CHECK_FALSE(member(point.region, {0.01, 0}));
    CHECK(component_count(point.region) == 1);

    CHECK(ev.eval_region(parse("gamma1(B,A) >= -0.5 & gamma2(B,A) -> min")).region.is_empty());

    const RegionResult at_r = ev.eval_region(parse("gamma1(B,A) >= -1 & gamma2(B,A) -> min"));
    bool flagged = false;
    for (const auto& d : at_r.diagnostics) flagged |= d.find("DEGENERATE_THRESHOLD") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("minimum of eta1 is a curve") {
    Scene s;
    s.objects["R"] = box(0, 0, 4, 2);
    s.objects["B"] = box(0, 0, 1, 1);
    const Evaluator ev(s);
    const RegionResult rr = ev.eval_region(parse("eta1(B,R) -> min"));
    CHECK(rr.region.area.empty());
    CHECK_FALSE(rr.region.is_empty());
    CHECK(member(rr.region, {1.5, 0.5}));
    CHECK(member(rr.region, {0.5, 0.5}));
    CHECK(member(rr.region, {2.5, 0.5}));
    CHECK_FALSE(member(rr.region, {1.5, 0.6}));
    CHECK_FALSE(member(rr.region, {2.7, 0.5}));
    CHECK(ev.eval_point(parse("eta1(B,R) -> min"), {1.5, 0.5}).value != Truth::False);
}

TEST_CASE("group expansion") {
    Scene s;
    s.objects["B"] = box(0, 0, 1, 1);
    s.objects["A1"] = box(3, 0, 4, 1);
    s.objects["A2"] = box(0, 3, 1, 4);
    s.groups["G"] = {"A1", "A2"};
    CHECK(multi_obstacle_expand(parse("gamma1(B,G) > 0"), s) == parse("gamma1(B,A1) > 0 & gamma1(B,A2) > 0"));
    CHECK(multi_obstacle_expand(parse("gamma1(B,G) <= 2"), s) == parse("gamma1(B,A1) <= 2 | gamma1(B,A2) <= 2"));
    CHECK(multi_obstacle_expand(parse("gamma2(B,G) <= 5"), s) == parse("gamma2(B,A1) <= 5 & gamma2(B,A2) <= 5"));
    CHECK(multi_obstacle_expand(parse("gamma2(B,G) > 5"), s) == parse("gamma2(B,A1) > 5 | gamma2(B,A2) > 5"));
    CHECK(multi_obstacle_expand(parse("gamma1(B,A1) > 0"), s) == parse("gamma1(B,A1) > 0"));
    auto code = [&](const char* text) {
        try {
            multi_obstacle_expand(parse(text), s);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code("gamma1(B,H) > 0") == ErrorCode::UnknownGroup);
    CHECK(code("eta1(B,G) > 0") == ErrorCode::UnsupportedGroupAtom);
    CHECK(code("gamma1(B,G) = 0") == ErrorCode::UnsupportedGroupAtom);
}

TEST_CASE("mixed subjects are rejected") {
    const Evaluator ev(two_squares());
    CHECK_THROWS_AS(ev.eval_region(parse("gamma1(B,A) <= 1 & gamma1(A,B) <= 1")), Error);
}

TEST_CASE("print and parse round-trip") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 300; ++k) {
        const TgsExpr e = testing::random_expr(rng, 4);
        const std::string text = print(e);
        CHECK_MESSAGE(parse(text) == e, text);
    }
}

TEST_CASE("normalization preserves point semantics") {
    std::mt19937_64 rng(62);
    const Evaluator ev(testing::expr_scene());
    const Box w{{-1, -1}, {7, 6}};
    for (int k = 0; k < 100; ++k) {
        const TgsExpr e = testing::random_expr(rng, 3);
        const TgsExpr n = normalize(e);
        for (int j = 0; j < 10; ++j) {
            const Point p = testing::random_point(rng, w);
            CHECK_MESSAGE(ev.eval_point(e, p).value == ev.eval_point(n, p).value, print(e), " => ", print(n));
        }
    }
}

TEST_CASE("comparison rewrites hold pointwise") {
    const Evaluator ev(testing::expr_scene());
    const char* pairs[][2] = {
        {"gamma1(B,O) < 1", "gamma1(B,O) <= 1 & gamma1(B,O) != 1"},
        {"gamma1(B,O) = 1", "gamma1(B,O) <= 1 & gamma1(B,O) >= 1"},
        {"gamma1(B,O) > 1", "gamma1(B,O) >= 1 & gamma1(B,O) != 1"},
    };
    std::mt19937_64 rng(63);
    for (const auto& pr : pairs) {
        const TgsExpr l = parse(pr[0]), r = parse(pr[1]);
        const RegionNR rl = ev.eval_region(l).region, rr = ev.eval_region(r).region;
        for (int k = 0; k < 500; ++k) {
            const Point p = testing::random_point(rng, {{-1, -1}, {7, 6}});
            CHECK(ev.eval_point(l, p).value == ev.eval_point(r, p).value);
            CHECK(nr_classify(rl, p) == nr_classify(rr, p));
        }
    }
}

TEST_CASE("presets expand to their templates") {
    const Scene s = load_scene(testing::fixture("findspace.json"));
    const Preset p3 = build_preset("problem3", s, {{"lR", -0.3}, {"l1", 0.4}, {"l2", 0.2}, {"l3", 0.5}});
    CHECK(p3.expr == parse("eta1(B,R) <= -0.3 & gamma1(B,A1) > 0.4 & gamma1(B,A2) > 0.2 & gamma1(B,A3) > 0.5"));
    const Preset p4 = build_preset("problem4", s, {{"l", 1}, {"l1", 3}, {"l2", 0.5}});
    CHECK(p4.expr == parse("(gamma1(B,A1) <= 3 | gamma1(B,A2) <= 3 | gamma1(B,A3) <= 3) & gamma1(B,A1) > 0.5 & "
                           "gamma1(B,A2) > 0.5 & gamma1(B,A3) > 0.5"));
    CHECK_THROWS_AS(build_preset("problem3", s, {}), Error);
    CHECK_THROWS_AS(build_preset("problem9", s, {}), Error);
    CHECK(preset_names().size() == 8);
}

TEST_CASE("problem3 region is the containment slice minus obstacle slices") {
    const Evaluator ev(load_scene(testing::fixture("findspace.json")));
    const Preset p = build_preset("problem3", ev.scene(), {{"lR", -0.3}, {"l1", 0.4}, {"l2", 0.2}, {"l3", 0.5}});
    const RegionNR r = ev.eval_region(p.expr).region;
    const FamilySlice h = ev.cache("B", "R").slice(FamilyKind::H1_F, -0.3);
    std::vector<FamilySlice> g;
    const char* names[] = {"A1", "A2", "A3"};
    const double ls[] = {0.4, 0.2, 0.5};
    for (int i = 0; i < 3; ++i) g.push_back(ev.cache("B", names[i]).slice(FamilyKind::GAMMA1_F, ls[i]));
    std::mt19937_64 rng(64);
    for (int k = 0; k < 3000; ++k) {
        const Point q = testing::random_point(rng, ev.window(p.expr));
        bool expect = classify_point(h.region, q) != Location::Out;
        for (const auto& s : g) expect = expect && classify_point(s.region, q) == Location::Out;
        if (ev.near_threshold(p.expr, q, 1e-6)) continue;
        CHECK(member(r, q) == expect);
    }
}

TEST_CASE("problem5 region is the intersection of covering slices") {
    const Evaluator ev(load_scene(testing::fixture("cover.json")));
    const Preset p = build_preset("problem5", ev.scene(), {{"l1", -0.5}, {"l2", -0.3}});
    const RegionNR r = ev.eval_region(p.expr).region;
    const FamilySlice d1 = ev.cache("B", "A1").slice(FamilyKind::DELTA1_F, -0.5);
    const FamilySlice d2 = ev.cache("B", "A2").slice(FamilyKind::DELTA1_F, -0.3);
    const MultiPolygon both = boolean_reg(d1.region, d2.region, BoolOp::Intersect);
    CHECK(r.area.area() == doctest::Approx(both.area()).epsilon(1e-9));
    CHECK(overlap_area(r.area, both) == doctest::Approx(both.area()).epsilon(1e-9));
}
