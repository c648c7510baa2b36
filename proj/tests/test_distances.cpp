#include <doctest.h>

#include <cmath>
#include <random>

#include "cspace/distances.hpp"
#include "cspace/oracle.hpp"
#include "support.hpp"

using namespace cspace;
using testing::box;
using testing::poly;

TEST_CASE("d1 and d2") {
    CHECK(d1(box(0, 0, 1, 1), box(3, 0, 4, 1)) == 2.0);
    CHECK(d2(box(0, 0, 1, 1), box(0, 0, 1, 1)) == std::sqrt(2.0));
    CHECK(d1(box(0, 0, 2, 2), box(1, 1, 3, 3)) == 0.0);
    CHECK_THROWS_AS(d1(MultiPolygon{}, box(0, 0, 1, 1)), Error);
    const auto w = d1_witness(box(0, 0, 1, 1), box(3, 0.5, 4, 2));
    REQUIRE(w.witness);
    CHECK(dist(w.witness->first, w.witness->second) == doctest::Approx(2.0));
}

TEST_CASE("gamma1 examples and witnesses") {
    CHECK(gamma1(box(3, 0, 4, 1), box(0, 0, 1, 1)).value == doctest::Approx(2.0).epsilon(1e-12));
    const auto ov = gamma1(box(0, 0, 1, 1), box(0, 0, 1, 1));
    CHECK(ov.value == doctest::Approx(-1.0).epsilon(1e-12));
    // oracle: signed distance of O to the sampled boundary of A ⊕ B̌
    CHECK(oracle::distance(DistanceKind::GAMMA1, box(0, 0, 1, 1), box(0, 0, 1, 1), {0, 0}) ==
          doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(std::abs(gamma1(box(1, 0, 2, 1), box(0, 0, 1, 1)).value) <= 1e-12);
}

TEST_CASE("gamma2 examples") {
    const MultiPolygon origin = box(-1e-7, -1e-7, 1e-7, 1e-7);
    CHECK(gamma2(origin, box(0, 0, 1, 1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(gamma2(box(0, 0, 1, 1), box(0, 0, 1, 1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(oracle::d2(box(0, 0, 1, 1), box(0, 0, 1, 1)) == std::sqrt(2.0));
    std::mt19937_64 rng(31);
    for (int k = 0; k < 20; ++k) {
        const auto a = testing::random_star(rng, 8, {0, 0}, 0.5, 2), b = testing::random_star(rng, 5, {3, 1}, 0.3, 1);
        const Point t{testing::uniform(rng, -5, 5), testing::uniform(rng, -5, 5)};
        CHECK(std::abs(gamma2(translate(b, t), translate(a, t)) - gamma2(b, a)) <= 1e-9);
    }
}

TEST_CASE("eta examples") {
    const auto a = box(0, 0, 4, 4), b = box(0, 0, 1, 1);
    CHECK(std::abs(eta(b, a).first.value) <= 1e-12);
    CHECK(eta(translate(b, {1, 1}), a).first.value == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(oracle::distance(DistanceKind::ETA1, a, b, {1, 1}) == doctest::Approx(-1.0).epsilon(1e-2));
    CHECK_THROWS_AS(eta(box(0, 0, 2, 2), box(0, 0, 1, 1)), Error);
    try {
        eta(box(0, 0, 2, 2), box(0, 0, 1, 1));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UndefinedErosionEmpty);
    }
}

TEST_CASE("delta examples") {
    const auto a = box(0, 0, 1, 1), b = box(0, 0, 4, 4);
    CHECK(std::abs(delta(b, a).first.value) <= 1e-12);
    CHECK(delta(translate(b, {-1, -1}), a).first.value == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(oracle::distance(DistanceKind::DELTA1, a, b, {-1, -1}) == doctest::Approx(-1.0).epsilon(1e-2));
    CHECK_THROWS_AS(delta(box(0, 0, 1, 1), box(0, 0, 2, 2)), Error);
}

TEST_CASE("mu and Hausdorff examples") {
    CHECK(mu(box(0, 0, 2, 1), box(0, 0, 1, 1)).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(oracle::distance(DistanceKind::MU_BA, box(0, 0, 1, 1), box(0, 0, 2, 1), {0, 0}) ==
          doctest::Approx(1.0).epsilon(1e-6));
    const auto a = box(0, 0, 4, 4), b = box(1, 1, 2, 2);
    CHECK(mu(b, a).value == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(mu(b, a).value == doctest::Approx(eta(b, a).first.value).epsilon(1e-12));
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(box(0, 0, 1, 1), box(0, 0, 2, 1)) == doctest::Approx(1.0));
}

TEST_CASE("dstar and penetration depth") {
    CHECK(dstar(box(0, 0, 4, 4), box(1, 1, 2, 2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dstar(box(0, 0, 4, 4), box(3, 3, 5, 5)) == 0.0);
    CHECK(penetration_depth(box(0, 0, 1, 1), box(2, 0, 3, 1)) == 0.0);
    CHECK(penetration_depth(box(0, 0, 1, 1), box(0, 0, 1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gamma1 sign trichotomy against direct overlap tests") {
    std::mt19937_64 rng(32);
    int disjoint = 0, overlapping = 0;
    for (int k = 0; k < 1000; ++k) {
        const MultiPolygon a = k % 2 ? testing::random_box(rng, 2) : testing::random_triangle(rng, 2);
        const MultiPolygon b = k % 3 ? testing::random_triangle(rng, 2) : testing::random_box(rng, 2);
        const double g = gamma1(b, a).value;
        if (std::abs(g) <= 1e-9) continue;
        const bool ov = oracle::interiors_overlap(a, b);
        CHECK((g < 0) == ov);
        CHECK((g > 0) == !oracle::overlaps(a, b));
        (g < 0 ? overlapping : disjoint)++;
    }
    CHECK(disjoint > 100);
    CHECK(overlapping > 100);
}

TEST_CASE("relative translation transport and interpolation") {
    std::mt19937_64 rng(33);
    const auto a = testing::random_star(rng, 9, {0, 0}, 1, 2.5);
    const auto b = testing::random_star(rng, 6, {0, 0}, 0.3, 0.8);
    for (int k = 0; k < 20; ++k) {
        const Point p{testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3)};
        const double g = gamma1(translate(b, p), a).value;
        CHECK(std::abs(g - gamma1(b, translate(a, -p)).value) <= 1e-9);
        for (double al : {0.0, 0.25, 0.5, 1.0})
            CHECK(std::abs(gamma1(translate(b, p * al), translate(a, p * (al - 1))).value - g) <= 1e-9);
    }
}

TEST_CASE("order relations between distances") {
    std::mt19937_64 rng(34);
    for (int k = 0; k < 50; ++k) {
        const auto a = testing::random_star(rng, 8, {0, 0}, 0.5, 2);
        const auto b = testing::random_star(rng, 6, {testing::uniform(rng, -3, 3), 0}, 0.3, 1.5);
        const double g1 = gamma1(b, a).value, g2 = gamma2(b, a);
        CHECK(g2 >= g1);
        CHECK(g2 == d2(b, a));
        CHECK(g2 == oracle::d2(b, a));
        const double m = mu(b, a).value;
        CHECK(m <= g2 + 1e-12);
        if (m > 0) CHECK(hausdorff(a, b) >= m - 1e-12);
    }
}

TEST_CASE("mu by bisection agrees with the exact breakpoint search") {
    std::mt19937_64 rng(35);
    const DiskConfig cfg;
    for (int k = 0; k < 10; ++k) {
        const auto a = testing::random_star(rng, 8, {0, 0}, 1, 2);
        const auto b = testing::random_star(rng, 6, {testing::uniform(rng, -2, 2), 0.5}, 0.3, 1);
        const double exact = mu(b, a).value;
        const double bis = mu_bisect(b, a, cfg);
        const double tol = std::max(2 * cfg.error_bound(std::abs(exact)), 1e-4);
        CHECK(std::abs(exact - bis) <= tol);
    }
}

TEST_CASE("rigid motion invariance of every kind") {
    std::mt19937_64 rng(36);
    const auto a = testing::random_star(rng, 8, {0, 0}, 2, 3);
    const auto b = testing::random_star(rng, 5, {0.3, 0.2}, 0.4, 0.8);
    const auto big = testing::random_star(rng, 8, {0, 0}, 4, 5);
    for (int k = 0; k < 10; ++k) {
        const Transform g{testing::uniform(rng, 0, 2 * M_PI), {testing::uniform(rng, -5, 5), testing::uniform(rng, -5, 5)}};
        CHECK(std::abs(gamma1(g.apply(b), g.apply(a)).value - gamma1(b, a).value) <= 1e-6);
        CHECK(std::abs(gamma2(g.apply(b), g.apply(a)) - gamma2(b, a)) <= 1e-6);
        CHECK(std::abs(eta(g.apply(b), g.apply(a)).first.value - eta(b, a).first.value) <= 1e-6);
        CHECK(std::abs(eta(g.apply(b), g.apply(a)).second - eta(b, a).second) <= 1e-6);
        CHECK(std::abs(delta(g.apply(big), g.apply(a)).first.value - delta(big, a).first.value) <= 1e-6);
        CHECK(std::abs(mu(g.apply(b), g.apply(a)).value - mu(b, a).value) <= 1e-6);
        CHECK(std::abs(hausdorff(g.apply(b), g.apply(a)) - hausdorff(b, a)) <= 1e-6);
    }
}

TEST_CASE("DSL names round-trip") {
    for (DistanceKind k : kAllDistanceKinds) {
        const auto back = distance_from_dsl(dsl_name(k));
        REQUIRE(back);
        CHECK(*back == k);
    }
    CHECK_FALSE(distance_from_dsl("gamma3"));
}
