#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cspace/minkowski.hpp"
#include "cspace/oracle.hpp"
#include "support.hpp"

using namespace cspace;
using testing::box;
using testing::poly;

namespace {

std::vector<Point> sorted_vertices(const MultiPolygon& m) {
    auto v = normalize(m).vertices();
    std::sort(v.begin(), v.end(), [](const Point& a, const Point& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    return v;
}

bool same_vertices(const MultiPolygon& a, const MultiPolygon& b, double tol) {
    const auto va = sorted_vertices(a), vb = sorted_vertices(b);
    if (va.size() != vb.size()) return false;
    for (const auto& p : va)
        if (std::none_of(vb.begin(), vb.end(), [&](const Point& q) { return dist(p, q) <= tol; })) return false;
    return true;
}

bool is_box(const MultiPolygon& m, double x0, double y0, double x1, double y1, double tol) {
    return same_vertices(m, box(x0, y0, x1, y1), tol) && std::abs(m.area() - (x1 - x0) * (y1 - y0)) <= tol;
}

}  // namespace

TEST_CASE("mink_sum examples") {
    CHECK(is_box(mink_sum(box(0, 0, 1, 1), box(0, 0, 2, 1)).region, 0, 0, 3, 2, 1e-12));
    CHECK(is_box(mink_sum(box(0, 0, 1, 1), Point{3, 4}).region, 3, 4, 4, 5, 1e-12));
    CHECK_THROWS_AS(mink_sum(MultiPolygon{}, box(0, 0, 1, 1)), Error);
}

TEST_CASE("L-shape plus unit square matches the brute-force union") {
    const auto L = poly({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    const auto sq = box(0, 0, 1, 1);
    const auto fast = mink_sum(L, sq).region;
    const auto slow = oracle::mink_sum(L, sq);
    // frozen from the oracle: the L grows into [0,3]x[0,2] ∪ [0,2]x[0,3]
    CHECK(slow.area() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(fast.area() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(same_vertices(fast, slow, 1e-9));
    CHECK(fast.vertex_count() == 6);
}

TEST_CASE("mink_sum agrees with the oracle on random stars") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 15; ++t) {
        const auto a = testing::random_star(rng, 10, {0, 0}, 0.4, 2), b = testing::random_star(rng, 7, {1, 1}, 0.3, 1.2);
        const auto fast = mink_sum(a, b).region, slow = oracle::mink_sum(a, b);
        CHECK(fast.area() == doctest::Approx(slow.area()).epsilon(1e-9));
        CHECK(overlap_area(fast, slow) == doctest::Approx(slow.area()).epsilon(1e-9));
    }
}

TEST_CASE("commutativity and translation covariance") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 20; ++t) {
        const auto a = testing::random_star(rng, 9, {0, 0}, 0.5, 2), b = testing::random_star(rng, 6, {0, 0}, 0.3, 1);
        const Point s{testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3)};
        const auto ab = mink_sum(a, b).region;
        CHECK(same_vertices(ab, mink_sum(b, a).region, 1e-9));
        CHECK(same_vertices(translate(ab, s), mink_sum(translate(a, s), b).region, 1e-9));
    }
}

TEST_CASE("erosion examples") {
    CHECK(is_box(erosion(box(0, 0, 4, 4), box(0, 0, 1, 1)), 1, 1, 4, 4, 1e-12));
    CHECK(erosion(box(0, 0, 1, 1), box(0, 0, 2, 2)).empty());
}

TEST_CASE("erosion by a convex region equals erosion by its hull and by its extreme points") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        const auto a = MultiPolygon::from_ring(convex_hull(testing::random_star(rng, 12, {0, 0}, 2, 4)));
        const auto b = testing::random_star(rng, 7, {0.2, 0.1}, 0.3, 1);
        const auto hull = MultiPolygon::from_ring(convex_hull(b));
        const auto e1 = erosion(a, b), e2 = erosion(a, hull);
        CHECK(e1.area() == doctest::Approx(e2.area()).epsilon(1e-9));
        // vertex-only erosion: intersection of translates by hull vertices
        MultiPolygon e3 = a;
        for (const auto& v : convex_hull(b)) e3 = boolean_reg(e3, translate(a, v), BoolOp::Intersect);
        CHECK(e1.area() == doctest::Approx(e3.area()).epsilon(1e-9));
    }
}

TEST_CASE("disk dilation and erosion") {
    const auto sq = box(0, 0, 1, 1);
    const auto d = dilate_disk(sq, ApproxDisk{1.0, 64, DiskMode::Inscribed});
    const double exact = 5 + M_PI;
    CHECK(std::abs(d.area() - exact) / exact < 0.005);

    CHECK(is_box(erode_disk(sq, ApproxDisk{0.25, 64, DiskMode::Circumscribed}), 0.25, 0.25, 0.75, 0.75, 1e-9));
    CHECK(erode_disk(sq, ApproxDisk{0.6, 64, DiskMode::Circumscribed}).empty());

    const ApproxDisk k{2.0, 16, DiskMode::Inscribed};
    CHECK(k.polygon().size() == 16);
    CHECK(k.chord_error() == doctest::Approx(2 * (1 - std::cos(M_PI / 16))));
    for (const auto& v : k.polygon()) CHECK(norm(v) == doctest::Approx(2.0));
    const ApproxDisk c{2.0, 16, DiskMode::Circumscribed};
    for (const auto& v : c.polygon()) CHECK(norm(v) == doctest::Approx(2.0 / std::cos(M_PI / 16)));
}

TEST_CASE("cspace_obstacle of two unit squares") {
    const auto co = cspace_obstacle(box(0, 0, 1, 1), box(0, 0, 1, 1));
    CHECK(is_box(co.region, -1, -1, 1, 1, 1e-12));
    CHECK(classify_point(co.region, {0.5, 0}) == Location::In);
    CHECK(interiors_overlap(translate(box(0, 0, 1, 1), {0.5, 0}), box(0, 0, 1, 1)));
    CHECK(classify_point(co.region, {1, 0}) == Location::On);
    CHECK_FALSE(interiors_overlap(translate(box(0, 0, 1, 1), {1, 0}), box(0, 0, 1, 1)));
    CHECK(oracle::overlaps(translate(box(0, 0, 1, 1), {1, 0}), box(0, 0, 1, 1)));
}

TEST_CASE("outer envelope features are recorded") {
    // two boxes with a unit gap: B of width 1 slides through, leaving a slit in A ⊕ B̌
    const MultiPolygon a = union_all({box(0, 0, 1, 3), box(2, 0, 3, 3)});
    const auto co = cspace_obstacle(a, box(0, 0, 1, 1));
    CHECK(classify_point(co.region, {1, 1}) == Location::In);
    bool found = false;
    for (const auto& f : co.degenerate_features)
        if (!f.is_point() && std::abs(f.points[0].x - 1) < 1e-9 && std::abs(f.points[1].x - 1) < 1e-9) found = true;
    CHECK(found);
}

TEST_CASE("sampled duality: overlap, containment and covering") {
    std::mt19937_64 rng(24);
    const auto a = testing::random_star(rng, 10, {0, 0}, 1.5, 3);
    const auto b = testing::random_star(rng, 6, {0, 0}, 0.3, 0.8);
    const auto co = mink_sum(a, reflect(b)).region;
    const auto ci = erosion(a, reflect(b));
    const auto big = testing::random_star(rng, 8, {0, 0}, 3.5, 4.5);
    const auto cv = erosion(reflect(big), a);
    const Box w = co.bbox().inflated(1);
    int checked = 0;
    for (int k = 0; k < 2000; ++k) {
        const Point p = testing::random_point(rng, w);
        const MultiPolygon bp = translate(b, p);
        if (boundary_distance(co, p) > 1e-6) CHECK(oracle::interiors_overlap(bp, a) == (classify_point(co, p) == Location::In));
        if (boundary_distance(ci, p) > 1e-6) CHECK(oracle::contains(a, bp) == (classify_point(ci, p) == Location::In));
        if (boundary_distance(cv, p) > 1e-6)
            CHECK(oracle::contains(translate(big, p), a) == (classify_point(cv, p) == Location::In));
        ++checked;
    }
    CHECK(checked == 2000);
}

TEST_CASE("erosion is antitone in the structuring element") {
    std::mt19937_64 rng(25);
    const auto a = testing::random_star(rng, 12, {0, 0}, 2, 4);
    const auto b1 = box(-0.3, -0.3, 0.3, 0.3), b2 = box(-0.5, -0.4, 0.6, 0.5);
    const auto e1 = erosion(a, b1), e2 = erosion(a, b2);
    for (int k = 0; k < 2000; ++k) {
        const Point p = testing::random_point(rng, a.bbox());
        if (classify_point(e2, p) == Location::In) CHECK(classify_point(e1, p) != Location::Out);
    }
}
