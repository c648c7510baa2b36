#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cspace/oracle.hpp"
#include "cspace/scene.hpp"
#include "support.hpp"

using namespace cspace;
using testing::box;
using testing::poly;

TEST_CASE("sampled gamma1 agrees with the exact distance") {
    std::mt19937_64 rng(71);
    const double density = 64;
    const double tol = std::max(1e-6, 2 / density);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
        const MultiPolygon a = k % 2 ? testing::random_box(rng, 3) : testing::random_triangle(rng, 3);
        const MultiPolygon b = k % 3 ? testing::random_triangle(rng, 2) : testing::random_box(rng, 2);
        const Point p{testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2)};
        const double fast = gamma1(translate(b, p), a).value;
        const double slow = oracle::distance(DistanceKind::GAMMA1, a, b, p, density);
        worst = std::max(worst, std::abs(fast - slow));
        CHECK_MESSAGE(std::abs(fast - slow) <= tol, "pair ", k, " p=(", p.x, ",", p.y, ") fast=", fast, " oracle=", slow);
    }
    MESSAGE("largest gamma1 gap ", worst);
}

TEST_CASE("d2 oracle matches exactly") {
    std::mt19937_64 rng(72);
    for (int k = 0; k < 200; ++k) {
        const auto a = testing::random_star(rng, 7, {0, 0}, 0.5, 2), b = testing::random_star(rng, 5, {2, 1}, 0.3, 1);
        CHECK(oracle::d2(a, b) == d2(a, b));
        CHECK(oracle::d2(b, a) == d2(a, b));
    }
}

TEST_CASE("d1 oracle on simple pairs") {
    CHECK(oracle::d1(box(0, 0, 1, 1), box(3, 0, 4, 1)) == 2.0);
    CHECK(oracle::d1(box(0, 0, 1, 1), box(0.5, 0.5, 2, 2)) == 0.0);
    std::mt19937_64 rng(73);
    for (int k = 0; k < 100; ++k) {
        const auto a = testing::random_star(rng, 6, {0, 0}, 0.5, 1.5), b = testing::random_star(rng, 6, {3, 0}, 0.3, 1);
        CHECK(std::abs(oracle::d1(a, b) - d1(a, b)) <= 1e-12);
    }
}

TEST_CASE("mu oracle against bisection") {
    std::mt19937_64 rng(74);
    const DiskConfig cfg;
    for (int k = 0; k < 10; ++k) {
        const auto a = testing::random_star(rng, 8, {0, 0}, 1, 2);
        const auto b = testing::random_star(rng, 6, {testing::uniform(rng, -2, 2), 0.5}, 0.3, 1);
        const double bis = mu_bisect(b, a, cfg);
        const double slow = oracle::distance(DistanceKind::MU_BA, a, b, {0, 0}, 256);
        const double tol = 2 * DiskConfig{}.dilation(std::max(std::abs(bis), 1e-3)).chord_error();
        CHECK_MESSAGE(std::abs(slow - bis) <= tol, "μ bisect=", bis, " oracle=", slow);
    }
}

TEST_CASE("oracle Minkowski sum of convex pieces") {
    const MultiPolygon s = oracle::mink_sum(box(0, 0, 1, 1), box(0, 0, 2, 1));
    CHECK(s.area() == doctest::Approx(6.0));
    CHECK(classify_point(s, {2.9, 1.9}) == Location::In);
    CHECK(oracle::triangulate(poly({{0, 0}, {2, 0}, {2, 2}, {1, 0.5}, {0, 2}})).size() == 3);
    CHECK(oracle::contains(box(0, 0, 4, 4), box(1, 1, 2, 2)));
    CHECK_FALSE(oracle::contains(box(0, 0, 4, 4), box(3, 3, 5, 5)));
    CHECK(oracle::overlaps(box(0, 0, 1, 1), box(1, 0, 2, 1)));
    CHECK_FALSE(oracle::interiors_overlap(box(0, 0, 1, 1), box(1, 0, 2, 1)));
}

TEST_CASE("undefined erosion is reported by the oracle too") {
    try {
        oracle::distance(DistanceKind::ETA1, box(0, 0, 1, 1), box(0, 0, 2, 2), {0, 0});
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UndefinedErosionEmpty);
    }
}

TEST_CASE("findspace bitmaps and component counts") {
    // frozen from the oracle bitmaps at 120 cells per side
    const struct {
        const char* file;
        std::size_t components;
    } cases[] = {{"findspace.json", 1}, {"rooms.json", 3}, {"corridor.json", 1}};
    for (const auto& c : cases) {
        const Evaluator ev(load_scene(testing::fixture(c.file)));
        const Preset p = build_preset("findspace", ev.scene(), {});
        const oracle::Bitmap bm = oracle::oracle_map(ev, p.expr, 120);
        CHECK(bm.width == 120);
        CHECK(bm.height == 120);
        CHECK(oracle::component_count(bm) == c.components);
        const oracle::Agreement ag = oracle::compare_backends(ev, p.expr, ev.eval_region(p.expr).region, bm);
        CHECK(ag.checked > 14000);
        CHECK_MESSAGE(ag.mismatches == 0, c.file);
    }
}

TEST_CASE("constant expressions") {
    const Evaluator ev(load_scene(testing::fixture("findspace.json")));
    const oracle::Bitmap none = oracle::oracle_map(ev, parse("false"), 60);
    CHECK(none.count(Truth::False) == 3600);

    const TgsExpr taut = parse("gamma1(B,A1) <= 1 | gamma1(B,A1) > 1");
    const oracle::Bitmap all = oracle::oracle_map(ev, taut, 60);
    CHECK(all.count(Truth::False) == 0);
    CHECK(all.count(Truth::True) + all.count(Truth::Ambiguous) == 3600);
    CHECK(all.count(Truth::True) > 3500);
}

TEST_CASE("PGM export") {
    oracle::Bitmap b;
    b.width = 3;
    b.height = 2;
    b.window = {{0, 0}, {3, 2}};
    b.cells = {Truth::True, Truth::False, Truth::Ambiguous, Truth::False, Truth::False, Truth::True};
    const std::string pgm = oracle::to_pgm(b);
    std::istringstream in(pgm);
    std::string magic;
    int w = 0, h = 0, maxv = 0;
    in >> magic >> w >> h >> maxv;
    CHECK(magic == "P2");
    CHECK(w == 3);
    CHECK(h == 2);
    CHECK(maxv == 255);
    std::vector<int> px(6);
    for (int& v : px) in >> v;
    // first row written is the top one
    CHECK(px[0] == 0);
    CHECK(px[2] == 255);
    CHECK(px[3] == 255);
    CHECK(px[5] == 128);
    CHECK(b.center(0, 0).x == doctest::Approx(0.5));
    CHECK(b.center(2, 1).y == doctest::Approx(1.5));
}
