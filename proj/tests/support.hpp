#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "cspace/distances.hpp"
#include "cspace/families.hpp"
#include "cspace/geom.hpp"

namespace testing {

using cspace::MultiPolygon;
using cspace::Point;
using cspace::Ring;

inline MultiPolygon box(double x0, double y0, double x1, double y1) { return MultiPolygon::box(x0, y0, x1, y1); }

inline MultiPolygon poly(std::vector<Point> pts) { return cspace::normalize(MultiPolygon::from_ring(std::move(pts))); }

inline std::string fixture(const std::string& name) { return std::string(CSPACE_FIXTURES) + "/" + name; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Point random_point(std::mt19937_64& rng, const cspace::Box& b) {
    return {uniform(rng, b.min.x, b.max.x), uniform(rng, b.min.y, b.max.y)};
}

inline MultiPolygon random_box(std::mt19937_64& rng, double span = 4.0, double max_side = 3.0) {
    const double x = uniform(rng, -span, span), y = uniform(rng, -span, span);
    return box(x, y, x + uniform(rng, 0.2, max_side), y + uniform(rng, 0.2, max_side));
}

// Star-shaped polygon around c: n sorted angles, radii in [rmin, rmax].
inline MultiPolygon random_star(std::mt19937_64& rng, int n, Point c, double rmin, double rmax) {
    std::vector<double> ang(n);
    for (int i = 0; i < n; ++i) ang[i] = (i + uniform(rng, 0.1, 0.9)) * 2 * M_PI / n;
    Ring r;
    for (double a : ang) {
        const double rad = uniform(rng, rmin, rmax);
        r.push_back({c.x + rad * std::cos(a), c.y + rad * std::sin(a)});
    }
    return poly(r);
}

inline MultiPolygon random_triangle(std::mt19937_64& rng, double span = 4.0) {
    for (;;) {
        const Point c{uniform(rng, -span, span), uniform(rng, -span, span)};
        Ring r;
        for (int i = 0; i < 3; ++i) r.push_back({c.x + uniform(rng, -1.5, 1.5), c.y + uniform(rng, -1.5, 1.5)});
        if (std::abs(cspace::signed_area(r)) > 0.2) return poly(r);
    }
}

// ω(B + p, A) through the distances module, bypassing the family cache.
inline double direct_distance(cspace::FamilyKind k, const MultiPolygon& a, const MultiPolygon& b, Point p) {
    using cspace::FamilyKind;
    const MultiPolygon bp = cspace::translate(b, p);
    switch (k) {
        case FamilyKind::GAMMA1_F: return cspace::gamma1(bp, a).value;
        case FamilyKind::GAMMA2_F: return cspace::gamma2(bp, a);
        case FamilyKind::H1_F: return cspace::eta(bp, a).first.value;
        case FamilyKind::H2_F: return cspace::eta(bp, a).second;
        case FamilyKind::DELTA1_F: return cspace::delta(bp, a).first.value;
        case FamilyKind::DELTA2_F: return cspace::delta(bp, a).second;
        case FamilyKind::M1_F: return cspace::mu(bp, a).value;
        case FamilyKind::M2_F: return cspace::mu(a, bp).value;
        case FamilyKind::M3_F: return cspace::hausdorff(a, bp);
    }
    return 0;
}

}  // namespace testing
