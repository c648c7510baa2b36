// Largest inscribed circle: polygonal bracketing followed by an exact equidistance polish.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cspace/error.hpp"
#include "cspace/geom.hpp"
#include "cspace/minkowski.hpp"

namespace cspace {

namespace {

constexpr int kSegments = 64;

struct Line {
    Point n;  // unit inward normal
    double k; // n·x = k on the line
};

struct Candidate {
    Point c;
    double t;
};

void solve_lll(const Line& a, const Line& b, const Line& c, std::vector<Candidate>& out) {
    // n·x - t = k for each line.
    const double m[3][3] = {{a.n.x, a.n.y, -1}, {b.n.x, b.n.y, -1}, {c.n.x, c.n.y, -1}};
    const double r[3] = {a.k, b.k, c.k};
    auto det3 = [](const double q[3][3]) {
        return q[0][0] * (q[1][1] * q[2][2] - q[1][2] * q[2][1]) - q[0][1] * (q[1][0] * q[2][2] - q[1][2] * q[2][0]) +
               q[0][2] * (q[1][0] * q[2][1] - q[1][1] * q[2][0]);
    };
    const double d = det3(m);
    if (std::abs(d) < 1e-14) return;
    double sol[3];
    for (int col = 0; col < 3; ++col) {
        double q[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) q[i][j] = j == col ? r[i] : m[i][j];
        sol[col] = det3(q) / d;
    }
    if (sol[2] > 0) out.push_back({{sol[0], sol[1]}, sol[2]});
}

// Real roots of a t^2 + b t + c = 0 (degenerating to linear).
int quadratic(double a, double b, double c, double roots[2]) {
    if (std::abs(a) < 1e-14) {
        if (std::abs(b) < 1e-300) return 0;
        roots[0] = -c / b;
        return 1;
    }
    const double disc = b * b - 4 * a * c;
    if (disc < 0) {
        if (disc > -1e-12 * b * b) {
            roots[0] = -b / (2 * a);
            return 1;
        }
        return 0;
    }
    const double s = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0 ? s : -s));
    roots[0] = q / a;
    roots[1] = q != 0 ? c / q : roots[0];
    return 2;
}

void solve_llp(const Line& a, const Line& b, const Point& v, std::vector<Candidate>& out) {
    const double det = cross(a.n, b.n);
    if (std::abs(det) > 1e-12) {
        // c(t) = c0 + t c1 solving [a.n; b.n] c = [k_a + t; k_b + t].
        auto solve = [&](double ra, double rb) {
            return Point{(ra * b.n.y - rb * a.n.y) / det, (a.n.x * rb - b.n.x * ra) / det};
        };
        const Point c0 = solve(a.k, b.k);
        const Point c1 = solve(1.0, 1.0);
        const Point w = c0 - v;
        double roots[2];
        const int nr = quadratic(dot(c1, c1) - 1.0, 2.0 * dot(c1, w), dot(w, w), roots);
        for (int i = 0; i < nr; ++i)
            if (roots[i] > 0) out.push_back({c0 + c1 * roots[i], roots[i]});
        return;
    }
    if (dot(a.n, b.n) > 0) return;
    // Opposite parallel lines: t fixed at half the gap.
    const double t = 0.5 * (-a.k - b.k);
    if (t <= 0) return;
    const Point base = a.n * (t + a.k);
    const Point dir{-a.n.y, a.n.x};
    const Point w = base - v;
    double roots[2];
    const int nr = quadratic(1.0, 2.0 * dot(dir, w), dot(w, w) - t * t, roots);
    for (int i = 0; i < nr; ++i) out.push_back({base + dir * roots[i], t});
}

void solve_lpp(const Line& l, const Point& v1, const Point& v2, std::vector<Candidate>& out) {
    const Point m = v2 - v1;
    const double ml = norm(m);
    if (ml < 1e-300) return;
    const Point c0 = (v1 + v2) * 0.5;
    const Point dir{-m.y / ml, m.x / ml};
    const double alpha = dot(l.n, c0) - l.k;
    const double beta = dot(l.n, dir);
    const double h2 = dot(c0 - v1, c0 - v1);
    double roots[2];
    const int nr = quadratic(1.0 - beta * beta, -2.0 * alpha * beta, h2 - alpha * alpha, roots);
    for (int i = 0; i < nr; ++i) {
        const double t = alpha + beta * roots[i];
        if (t > 0) out.push_back({c0 + dir * roots[i], t});
    }
}

void solve_ppp(const Point& a, const Point& b, const Point& c, std::vector<Candidate>& out) {
    const Point ab = b - a, ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    if (std::abs(d) < 1e-300) return;
    const double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
    const Point center = a + Point{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    out.push_back({center, dist(center, a)});
}

double distance_to_region_edges(const MultiPolygon& s, const Point& a, const Point& b) {
    double best = std::numeric_limits<double>::infinity();
    s.for_each_edge([&](const Point& p, const Point& q) { best = std::min(best, segment_segment_distance(a, b, p, q)); });
    return best;
}

}  // namespace

InradiusResult inradius(const MultiPolygon& m, double tol) {
    if (m.empty()) throw Error(ErrorCode::EmptyInput, "inradius: empty region");
    const Box bb = m.bbox();
    const double scale = std::max({1.0, bb.width(), bb.height()});
    const double cos_n = std::cos(std::numbers::pi / kSegments);

    // Circumscribed n-gon erosion non-empty ⇒ disk erosion non-empty: lo is a lower bound.
    // Empty at hi ⇒ disk of radius hi/cos(pi/n) has empty erosion: upper bound.
    double lo = 0.0, hi = 0.5 * std::min(bb.width(), bb.height());
    for (int it = 0; it < 60 && hi - lo > 1e-4 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!erode_disk(m, {mid, kSegments, DiskMode::Circumscribed}).empty())
            lo = mid;
        else
            hi = mid;
    }
    const double r_up = hi / cos_n;
    const MultiPolygon centers = lo > 0 ? erode_disk(m, {lo, kSegments, DiskMode::Inscribed}) : m;

    std::vector<Line> lines;
    std::vector<Point> points;
    const double reach = r_up + 1e-9 * scale;
    auto visit_ring = [&](const Ring& r) {
        const std::size_t n = r.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = r[i];
            const Point& b = r[(i + 1) % n];
            if (distance_to_region_edges(centers, a, b) > reach) continue;
            const Point e = b - a;
            const double len = norm(e);
            if (len == 0.0) continue;
            const Point nrm{-e.y / len, e.x / len};
            lines.push_back({nrm, dot(nrm, a)});
            const Point& c = r[(i + 2) % n];
            // Reflex at b: interior on the left, so a right turn.
            if (orient(a, b, c) < 0 && distance_to_region_edges(centers, b, b) <= reach) points.push_back(b);
        }
    };
    for (const auto& p : m.polygons()) {
        visit_ring(p.outer);
        for (const auto& h : p.holes) visit_ring(h);
    }

    std::vector<Candidate> cands;
    const std::size_t nl = lines.size(), np = points.size();
    for (std::size_t i = 0; i < nl; ++i)
        for (std::size_t j = i + 1; j < nl; ++j) {
            for (std::size_t k = j + 1; k < nl; ++k) solve_lll(lines[i], lines[j], lines[k], cands);
            for (std::size_t k = 0; k < np; ++k) solve_llp(lines[i], lines[j], points[k], cands);
        }
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = i + 1; j < np; ++j) {
            for (std::size_t k = 0; k < nl; ++k) solve_lpp(lines[k], points[i], points[j], cands);
            for (std::size_t k = j + 1; k < np; ++k) solve_ppp(points[i], points[j], points[k], cands);
        }

    InradiusResult out;
    out.radius = lo;
    out.center = centers.empty() ? m.polygons().front().outer.front() : centers.polygons().front().outer.front();
    for (const auto& c : cands) {
        if (c.t > r_up + 1e-9 * scale || c.t < lo - 1e-9 * scale) continue;
        if (!inside_raw(m, c.c)) continue;
        const double f = boundary_distance(m, c.c);
        if (f > out.radius) {
            out.radius = f;
            out.center = c.c;
        }
    }

    const double back = std::max(tol, 1e-6 * scale);
    out.witness = erode_disk(m, {std::max(out.radius - back, 0.0), kSegments, DiskMode::Inscribed});
    if (out.witness.empty()) out.witness = centers;
    return out;
}

}  // namespace cspace
