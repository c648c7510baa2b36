#include <algorithm>
#include <random>

#include "cspace/error.hpp"
#include "cspace/geom.hpp"

namespace cspace {

namespace {

Circle circle_two(const Point& a, const Point& b) {
    const Point c = (a + b) * 0.5;
    return {c, std::max(dist(c, a), dist(c, b))};
}

Circle circle_three(const Point& a, const Point& b, const Point& c) {
    const Point ab = b - a, ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    if (std::abs(d) < 1e-300) {
        // Collinear: the farthest pair spans the circle.
        Circle best = circle_two(a, b);
        for (const auto& cand : {circle_two(a, c), circle_two(b, c)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    const double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
    const Point off{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    const Point center = a + off;
    return {center, std::max({dist(center, a), dist(center, b), dist(center, c)})};
}

bool covers(const Circle& c, const Point& p) {
    return dist(c.center, p) <= c.radius * (1.0 + 1e-14) + 1e-14;
}

}  // namespace

Circle smallest_enclosing_circle(std::span<const Point> input) {
    if (input.empty()) throw Error(ErrorCode::EmptyInput, "smallest_enclosing_circle: empty input");
    std::vector<Point> pts(input.begin(), input.end());
    // Fixed seed keeps the result bit-identical across runs.
    std::mt19937 rng(0x5eed);
    std::shuffle(pts.begin(), pts.end(), rng);

    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (covers(c, pts[i])) continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (covers(c, pts[j])) continue;
            c = circle_two(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (covers(c, pts[k])) continue;
                c = circle_three(pts[i], pts[j], pts[k]);
            }
        }
    }
    return c;
}

Circle smallest_enclosing_circle(const MultiPolygon& m) {
    if (m.empty()) throw Error(ErrorCode::EmptyInput, "smallest_enclosing_circle: empty input");
    const Ring hull = convex_hull(m);
    return smallest_enclosing_circle(std::span<const Point>(hull));
}

}  // namespace cspace
