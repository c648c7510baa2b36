#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cspace/geom.hpp"
#include "cspace/minkowski.hpp"
#include "support.hpp"

using namespace cspace;
using testing::box;
using testing::poly;

namespace {

bool has_vertex(const Ring& r, Point p, double tol = 1e-12) {
    return std::any_of(r.begin(), r.end(), [&](const Point& q) { return dist(p, q) <= tol; });
}

bool same_box(const MultiPolygon& m, double x0, double y0, double x1, double y1, double tol = 1e-12) {
    if (m.polygons().size() != 1 || !m.polygons()[0].holes.empty() || m.polygons()[0].outer.size() != 4) return false;
    const Box b = m.bbox();
    return std::abs(b.min.x - x0) <= tol && std::abs(b.min.y - y0) <= tol && std::abs(b.max.x - x1) <= tol &&
           std::abs(b.max.y - y1) <= tol && std::abs(m.area() - (x1 - x0) * (y1 - y0)) <= tol;
}

// Independent point-to-segment distance for oracle sampling.
double seg_dist(Point p, Point a, Point b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - a.x - t * dx, p.y - a.y - t * dy);
}

}  // namespace

TEST_CASE("classify_point on the unit square") {
    const auto sq = box(0, 0, 1, 1);
    CHECK(classify_point(sq, {0.5, 0.5}, 1e-9) == Location::In);
    CHECK(classify_point(sq, {0, 0.5}, 1e-9) == Location::On);
    CHECK(classify_point(sq, {2, 0}, 1e-9) == Location::Out);
    CHECK(classify_point(sq, {1 + 5e-10, 0.3}, 1e-9) == Location::On);
    CHECK(classify_point(sq, {1 + 5e-9, 0.3}, 1e-9) == Location::Out);
}

TEST_CASE("classify_point respects holes") {
    MultiPolygon ring({Polygon{{{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{{1, 1}, {1, 3}, {3, 3}, {3, 1}}}}});
    ring = normalize(ring);
    CHECK(classify_point(ring, {2, 2}) == Location::Out);
    CHECK(classify_point(ring, {0.5, 2}) == Location::In);
    CHECK(classify_point(ring, {1, 2}) == Location::On);
    CHECK(ring.area() == doctest::Approx(12.0));
}

TEST_CASE("boolean_reg examples") {
    CHECK(boolean_reg(box(0, 0, 1, 1), box(1, 0, 2, 1), BoolOp::Intersect).empty());
    CHECK(same_box(boolean_reg(box(0, 0, 2, 2), box(1, 0, 3, 2), BoolOp::Intersect), 1, 0, 2, 2));
    CHECK(same_box(boolean_reg(box(0, 0, 1, 1), box(1, 0, 2, 1), BoolOp::Union), 0, 0, 2, 1));
    CHECK(same_box(boolean_reg(box(0, 0, 2, 1), box(1, 0, 2, 1), BoolOp::Diff), 0, 0, 1, 1));
}

TEST_CASE("boolean_reg output is regular") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const auto p = testing::random_star(rng, 9, {0, 0}, 0.5, 2), q = testing::random_star(rng, 7, {0.5, 0.3}, 0.5, 2);
        for (BoolOp op : {BoolOp::Union, BoolOp::Intersect, BoolOp::Diff}) {
            const auto r = boolean_reg(p, q, op);
            const auto rr = regularize(r);
            CHECK(rr.area() == doctest::Approx(r.area()).epsilon(1e-12));
            CHECK(rr.vertex_count() == r.vertex_count());
        }
    }
}

TEST_CASE("De Morgan on sampled boxes") {
    std::mt19937_64 rng(12);
    const double eps = 1e-9;
    int checked = 0;
    for (int t = 0; t < 10; ++t) {
        const auto p = testing::random_box(rng), q = testing::random_box(rng);
        const auto u = boolean_reg(p, q, BoolOp::Union);
        const auto i = boolean_reg(p, q, BoolOp::Intersect);
        for (int k = 0; k < 1000; ++k) {
            const Point x = testing::random_point(rng, {{-5, -5}, {8, 8}});
            if (boundary_distance(p, x) <= eps || boundary_distance(q, x) <= eps) continue;
            const bool in_p = classify_point(p, x) == Location::In, in_q = classify_point(q, x) == Location::In;
            CHECK((classify_point(u, x) != Location::Out) == (in_p || in_q));
            CHECK((classify_point(i, x) != Location::Out) == (in_p && in_q));
            ++checked;
        }
    }
    CHECK(checked > 9900);
}

TEST_CASE("reflect") {
    CHECK(same_box(reflect(box(0, 0, 1, 1)), -1, -1, 0, 0));
    const Point p = reflect(Point{1, 2});
    CHECK(p.x == -1);
    CHECK(p.y == -2);
    const auto t = reflect(poly({{0, 0}, {2, 0}, {0, 1}}));
    REQUIRE(t.polygons().size() == 1);
    const Ring& r = t.polygons()[0].outer;
    CHECK(r.size() == 3);
    CHECK(has_vertex(r, {0, 0}));
    CHECK(has_vertex(r, {-2, 0}));
    CHECK(has_vertex(r, {0, -1}));
    CHECK(signed_area(r) > 0);

    std::mt19937_64 rng(13);
    for (int k = 0; k < 20; ++k) {
        const auto s = testing::random_star(rng, 12, {1, -2}, 0.3, 2);
        CHECK(reflect(s).area() == doctest::Approx(s.area()).epsilon(1e-14));
    }
}

TEST_CASE("convex_hull and extreme points") {
    const Ring sq = convex_hull(box(0, 0, 1, 1));
    CHECK(sq.size() == 4);
    for (Point c : {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}) CHECK(has_vertex(sq, c));

    const Ring with_inner = convex_hull(std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.4}});
    CHECK(with_inner.size() == 4);
    CHECK_FALSE(has_vertex(with_inner, {0.5, 0.4}));

    const auto L = poly({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    const Ring h = convex_hull(L);
    CHECK(h.size() == 5);
    CHECK_FALSE(has_vertex(h, {1, 1}));
    CHECK(extreme_points(L).size() == 5);

    // brute force: a vertex is extreme iff no other triple of vertices contains it
    const auto vs = L.vertices();
    std::size_t extreme = 0;
    for (const auto& v : vs) {
        bool covered = false;
        for (std::size_t a = 0; a < vs.size() && !covered; ++a)
            for (std::size_t b = a + 1; b < vs.size() && !covered; ++b)
                for (std::size_t c = b + 1; c < vs.size() && !covered; ++c) {
                    if (dist(vs[a], v) < 1e-12 || dist(vs[b], v) < 1e-12 || dist(vs[c], v) < 1e-12) continue;
                    if (std::abs(orient(vs[a], vs[b], vs[c])) < 1e-12) continue;
                    const double o1 = orient(vs[a], vs[b], v), o2 = orient(vs[b], vs[c], v), o3 = orient(vs[c], vs[a], v);
                    covered = (o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0);
                }
        extreme += !covered;
    }
    CHECK(extreme == 5);
}

TEST_CASE("hull contains the polygon on samples") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 20; ++t) {
        const auto s = testing::random_star(rng, 15, {0, 0}, 0.2, 3);
        const auto h = MultiPolygon::from_ring(convex_hull(s));
        for (int k = 0; k < 500; ++k) {
            const Point p = testing::random_point(rng, s.bbox());
            if (classify_point(s, p) == Location::In) CHECK(classify_point(h, p) != Location::Out);
        }
    }
}

TEST_CASE("smallest_enclosing_circle examples") {
    const Circle sq = smallest_enclosing_circle(box(0, 0, 1, 1));
    CHECK(sq.center.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sq.center.y == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sq.radius == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    const std::vector<Point> seg{{0, 0}, {2, 0}};
    const Circle s = smallest_enclosing_circle(seg);
    CHECK(s.center.x == doctest::Approx(1));
    CHECK(s.center.y == doctest::Approx(0));
    CHECK(s.radius == doctest::Approx(1));

    const Circle t = smallest_enclosing_circle(poly({{0, 0}, {4, 0}, {0, 3}}));
    CHECK(t.center.x == doctest::Approx(2).epsilon(1e-12));
    CHECK(t.center.y == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(t.radius == doctest::Approx(2.5).epsilon(1e-12));

    // brute force over vertex pairs as diameters
    const std::vector<Point> v{{0, 0}, {4, 0}, {0, 3}};
    double best = INFINITY;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            const Point c{(v[i].x + v[j].x) / 2, (v[i].y + v[j].y) / 2};
            double r = 0;
            for (const auto& q : v) r = std::max(r, dist(c, q));
            if (r <= dist(c, v[i]) + 1e-12) best = std::min(best, r);
        }
    CHECK(best == doctest::Approx(2.5));
}

TEST_CASE("smallest_enclosing_circle support set") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 50; ++t) {
        const auto s = testing::random_star(rng, 20, {testing::uniform(rng, -3, 3), 1}, 0.2, 3);
        const Circle c = smallest_enclosing_circle(s);
        int support = 0;
        for (const auto& v : s.vertices()) {
            const double d = dist(v, c.center);
            CHECK(d <= c.radius + 1e-9);
            support += std::abs(d - c.radius) <= 1e-9;
        }
        CHECK(support >= 2);
    }
}

TEST_CASE("inradius examples") {
    const double tol = 1e-9;
    const auto sq = inradius(box(0, 0, 1, 1), tol);
    CHECK(sq.radius == doctest::Approx(0.5).epsilon(tol));
    CHECK(dist(sq.center, {0.5, 0.5}) < 1e-6);

    const auto rect = inradius(box(0, 0, 2, 1), tol);
    CHECK(rect.radius == doctest::Approx(0.5).epsilon(tol));
    const Box w = rect.witness.bbox();
    CHECK(w.min.x == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(w.max.x == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(w.min.y == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(w.max.y == doctest::Approx(0.5).epsilon(1e-3));

    const auto tri = poly({{0, 0}, {4, 0}, {0, 3}});
    const auto r = inradius(tri, tol);
    CHECK(std::abs(r.radius - 1.0) <= 1e-8);

    // grid oracle: deepest sampled point
    double deepest = 0;
    const Point a{0, 0}, b{4, 0}, c{0, 3};
    for (int i = 0; i <= 800; ++i)
        for (int j = 0; j <= 600; ++j) {
            const Point p{i * 4.0 / 800, j * 3.0 / 600};
            if (3 * p.x + 4 * p.y > 12) continue;
            deepest = std::max(deepest, std::min({seg_dist(p, a, b), seg_dist(p, b, c), seg_dist(p, c, a)}));
        }
    CHECK(deepest == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("inradius bisection is monotone") {
    std::mt19937_64 rng(16);
    const double tol = 1e-6;
    for (int t = 0; t < 10; ++t) {
        const auto s = testing::random_star(rng, 8, {0, 0}, 1, 3);
        const double r = inradius(s).radius;
        CHECK_FALSE(erode_disk(s, ApproxDisk{r - tol, 64, DiskMode::Inscribed}).empty());
        CHECK(erode_disk(s, ApproxDisk{r + tol, 64, DiskMode::Circumscribed}).empty());
    }
}

TEST_CASE("transform is orthonormal") {
    const Transform g{0.7, {1, 2}};
    const Point a = g.apply(Point{1, 0}), b = g.apply(Point{0, 1}), o = g.apply(Point{0, 0});
    CHECK(std::abs(dist(a, o) - 1) < 1e-12);
    CHECK(std::abs(dist(b, o) - 1) < 1e-12);
    CHECK(std::abs(dot(a - o, b - o)) < 1e-12);
}

TEST_CASE("clean_ring rejects degenerate rings") {
    CHECK(clean_ring(Ring{{0, 0}, {1, 0}, {2, 0}}).size() < 3);
    CHECK(clean_ring(Ring{{0, 0}, {1, 0}, {1, 1e-12}, {1, 1}}).size() == 3);
    CHECK_FALSE(is_simple(Ring{{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
    CHECK(is_simple(Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

TEST_CASE("union of convex pieces sharing two vertices") {
    // the unscaled overlay returns nothing for this pair
    const auto p = MultiPolygon::from_ring({{-3.1296730587606181, 0.45445098090407332},
                                            {-2.9268930310918231, -0.25446780539111458},
                                            {-1.3954193037262546, -1.266442782621596},
                                            {-0.6021397182015279, -1.7477495367202214},
                                            {0.46526115884624863, -2.2630891618168136},
                                            {1.0799024800228794, -1.4545525632192189},
                                            {1.0799024800228794, 1.2157635691897402},
                                            {0.01616478617516795, 2.5905683671887294},
                                            {-0.22463284840399206, 2.6099157025140789},
                                            {-0.63353886172361062, 2.6840037695555488},
                                            {-1.1303694376174709, 2.1610473140742785},
                                            {-2.9860971211346699, 1.1448517293608957}});
    const auto q = MultiPolygon::from_ring({{-0.48066578971869234, -1.8063969765991308},
                                            {0.46526115884624863, -2.2630891618168136},
                                            {1.7454578759910795, -0.57904049220477805},
                                            {1.9907364605347013, -0.087873931622134471},
                                            {1.9178265567931025, 0.48538232465142422},
                                            {1.2522711608249026, 1.2019142858573137},
                                            {0.18853346697719103, 2.576719083856303},
                                            {0.01616478617516795, 2.5905683671887294},
                                            {-0.48066578971869234, 2.0676119117074592}});
    const double inter = boolean_reg(p, q, BoolOp::Intersect).area();
    const MultiPolygon u = boolean_reg(p, q, BoolOp::Union);
    CHECK(u.area() == doctest::Approx(p.area() + q.area() - inter).epsilon(1e-6));
    for (const auto& v : p.vertices()) CHECK(classify_point(u, v) != Location::Out);
    for (const auto& v : q.vertices()) CHECK(classify_point(u, v) != Location::Out);
    CHECK(union_all({p, q}).area() == doctest::Approx(u.area()));
}
