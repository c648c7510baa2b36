#include "cspace/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>

#include "cspace/error.hpp"

namespace cspace::oracle {

namespace bg = boost::geometry;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cr(const Point& o, const Point& a, const Point& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double seg_dist(const Point& p, const Point& a, const Point& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double l2 = dx * dx + dy * dy;
    double t = l2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / l2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

bool crosses(const Point& a, const Point& b, const Point& c, const Point& d) {
    const double d1 = cr(c, d, a), d2 = cr(c, d, b), d3 = cr(a, b, c), d4 = cr(a, b, d);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double seg_seg(const Point& a, const Point& b, const Point& c, const Point& d) {
    if (crosses(a, b, c, d)) return 0.0;
    return std::min({seg_dist(a, c, d), seg_dist(b, c, d), seg_dist(c, a, b), seg_dist(d, a, b)});
}

// Even-odd crossing count over all rings.
bool inside_even_odd(const MultiPolygon& m, const Point& p) {
    bool in = false;
    m.for_each_edge([&](const Point& a, const Point& b) {
        if ((a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)) in = !in;
    });
    return in;
}

double boundary_dist(const MultiPolygon& m, const Point& p) {
    double best = kInf;
    m.for_each_edge([&](const Point& a, const Point& b) { best = std::min(best, seg_dist(p, a, b)); });
    return best;
}

double scale_of(const MultiPolygon& m) {
    const Box b = m.bbox();
    return std::max({1.0, b.width(), b.height(), std::abs(b.min.x), std::abs(b.min.y), std::abs(b.max.x), std::abs(b.max.y)});
}

// -1 strictly inside, 0 on boundary within tol, +1 outside.
int where(const MultiPolygon& m, const Point& p, double tol) {
    if (boundary_dist(m, p) <= tol) return 0;
    return inside_even_odd(m, p) ? -1 : 1;
}

MultiPolygon shift(const MultiPolygon& m, const Point& t) {
    std::vector<Polygon> ps = m.polygons();
    for (auto& p : ps) {
        for (auto& v : p.outer) v = v + t;
        for (auto& h : p.holes)
            for (auto& v : h) v = v + t;
    }
    return MultiPolygon(std::move(ps));
}

MultiPolygon mirror(const MultiPolygon& m) {
    std::vector<Polygon> ps = m.polygons();
    for (auto& p : ps) {
        for (auto& v : p.outer) v = Point{-v.x, -v.y};
        for (auto& h : p.holes)
            for (auto& v : h) v = Point{-v.x, -v.y};
    }
    return MultiPolygon(std::move(ps));
}

double ring_area2(const Ring& r) {
    double s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) s += cross(r[i], r[(i + 1) % r.size()]);
    return s;
}

// Andrew's monotone chain, CCW, collinear points dropped.
Ring hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    Ring h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cr(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cr(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// Splice each hole into the outer ring through a mutually visible vertex pair.
Ring bridge(Ring outer, std::vector<Ring> holes) {
    if (ring_area2(outer) < 0) std::reverse(outer.begin(), outer.end());
    for (auto& h : holes)
        if (ring_area2(h) > 0) std::reverse(h.begin(), h.end());
    auto max_x = [](const Ring& r) {
        std::size_t k = 0;
        for (std::size_t i = 1; i < r.size(); ++i)
            if (r[i].x > r[k].x) k = i;
        return k;
    };
    std::sort(holes.begin(), holes.end(), [&](const Ring& a, const Ring& b) { return a[max_x(a)].x > b[max_x(b)].x; });
    for (const Ring& h : holes) {
        const std::size_t mi = max_x(h);
        const Point M = h[mi];
        // Nearest edge hit by the ray to +x.
        double best = kInf;
        std::size_t pi = 0;
        Point I{};
        const std::size_t n = outer.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point a = outer[i], b = outer[(i + 1) % n];
            if (a.y == b.y) continue;
            if (!((a.y <= M.y && M.y <= b.y) || (b.y <= M.y && M.y <= a.y))) continue;
            const double x = a.x + (M.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x < M.x || x - M.x >= best) continue;
            best = x - M.x;
            I = {x, M.y};
            pi = a.x > b.x ? i : (i + 1) % n;
        }
        Point P = outer[pi];
        if (!(P == I)) {
            // A reflex vertex inside triangle M I P would block the view; take the closest in angle.
            double best_ang = kInf;
            for (std::size_t i = 0; i < n; ++i) {
                const Point v = outer[i];
                if (i == pi) continue;
                const Point prev = outer[(i + n - 1) % n], next = outer[(i + 1) % n];
                if (cr(prev, v, next) >= 0) continue;
                const Point t0 = M, t1 = I, t2 = P;
                const double s0 = cr(t0, t1, v), s1 = cr(t1, t2, v), s2 = cr(t2, t0, v);
                const bool in = (s0 >= 0 && s1 >= 0 && s2 >= 0) || (s0 <= 0 && s1 <= 0 && s2 <= 0);
                if (!in) continue;
                const double ang = std::atan2(std::abs(v.y - M.y), v.x - M.x);
                if (ang < best_ang || (ang == best_ang && dist(v, M) < dist(outer[pi], M))) {
                    best_ang = ang;
                    pi = i;
                }
            }
            P = outer[pi];
        }
        Ring merged;
        for (std::size_t i = 0; i <= pi; ++i) merged.push_back(outer[i]);
        for (std::size_t k = 0; k <= h.size(); ++k) merged.push_back(h[(mi + k) % h.size()]);
        for (std::size_t i = pi; i < n; ++i) merged.push_back(outer[i]);
        outer = std::move(merged);
    }
    return outer;
}

std::vector<Triangle> ear_clip(const Ring& poly) {
    std::vector<Triangle> out;
    std::vector<Point> v = poly;
    while (v.size() > 3) {
        const std::size_t n = v.size();
        bool clipped = false;
        for (std::size_t i = 0; i < n && !clipped; ++i) {
            const Point a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
            if (cr(a, b, c) <= 0) continue;
            bool empty = true;
            for (std::size_t k = 0; k < n && empty; ++k) {
                const Point q = v[k];
                if (q == a || q == b || q == c) continue;
                if (cr(a, b, q) >= 0 && cr(b, c, q) >= 0 && cr(c, a, q) >= 0) empty = false;
            }
            if (!empty) continue;
            out.push_back({a, b, c});
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
        }
        if (clipped) continue;
        // No clean ear: drop a degenerate vertex, else force a convex one.
        bool dropped = false;
        for (std::size_t i = 0; i < n && !dropped; ++i)
            if (std::abs(cr(v[(i + n - 1) % n], v[i], v[(i + 1) % n])) <= 1e-15) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                dropped = true;
            }
        if (dropped) continue;
        for (std::size_t i = 0; i < n && !dropped; ++i) {
            const Point a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
            if (cr(a, b, c) > 0) {
                out.push_back({a, b, c});
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                dropped = true;
            }
        }
        if (!dropped) break;
    }
    if (v.size() == 3 && cr(v[0], v[1], v[2]) > 0) out.push_back({v[0], v[1], v[2]});
    return out;
}

using BPoint = bg::model::d2::point_xy<double>;
using BPoly = bg::model::polygon<BPoint, false, false>;
using BMulti = bg::model::multi_polygon<BPoly>;

BMulti to_boost(const Ring& r) {
    BPoly p;
    for (const auto& v : r) bg::append(p.outer(), BPoint(v.x, v.y));
    bg::correct(p);
    return BMulti{p};
}

MultiPolygon from_boost(const BMulti& m) {
    std::vector<Polygon> ps;
    for (const auto& p : m) {
        Polygon q;
        for (const auto& v : p.outer()) q.outer.push_back({v.x(), v.y()});
        for (const auto& h : p.inners()) {
            Ring r;
            for (const auto& v : h) r.push_back({v.x(), v.y()});
            q.holes.push_back(std::move(r));
        }
        ps.push_back(std::move(q));
    }
    return MultiPolygon(std::move(ps));
}

// Shape data reused across many translations.
struct Shape {
    MultiPolygon m;
    std::vector<Point> centroids;
};

Shape make_shape(const MultiPolygon& m) {
    Shape s{m, {}};
    for (const auto& t : triangulate(m)) s.centroids.push_back((t[0] + t[1] + t[2]) * (1.0 / 3.0));
    return s;
}

// Pieces of a's edges cut at b's vertices and crossings; true if one midpoint has where() == side.
bool edge_piece_where(const MultiPolygon& a, const MultiPolygon& b, int side, double tol) {
    bool hit = false;
    const std::vector<Point> bv = b.vertices();
    a.for_each_edge([&](const Point& p, const Point& q) {
        if (hit) return;
        std::vector<double> ts{0.0, 1.0};
        const Point d = q - p;
        const double l2 = dot(d, d);
        if (l2 <= 0) return;
        for (const auto& v : bv)
            if (seg_dist(v, p, q) <= tol) ts.push_back(dot(v - p, d) / l2);
        b.for_each_edge([&](const Point& c, const Point& e) {
            const double den = cross(d, e - c);
            if (den == 0) return;
            const double t = cross(c - p, e - c) / den, u = cross(c - p, d) / den;
            if (t > 0 && t < 1 && u >= 0 && u <= 1) ts.push_back(t);
        });
        std::sort(ts.begin(), ts.end());
        for (std::size_t k = 0; k + 1 < ts.size() && !hit; ++k) {
            if (ts[k + 1] - ts[k] <= 1e-12) continue;
            const Point mid = p + d * (0.5 * (ts[k] + ts[k + 1]));
            if (where(b, mid, tol) == side) hit = true;
        }
    });
    return hit;
}

bool any_crossing(const MultiPolygon& a, const MultiPolygon& b, double tol) {
    bool hit = false;
    a.for_each_edge([&](const Point& p, const Point& q) {
        if (hit) return;
        b.for_each_edge([&](const Point& c, const Point& d) {
            if (hit) return;
            if (!crosses(p, q, c, d)) return;
            // Robust: endpoints clearly on opposite sides.
            const double lq = std::max(dist(p, q), 1e-300), ld = std::max(dist(c, d), 1e-300);
            if (std::abs(cr(c, d, p)) / ld > tol && std::abs(cr(c, d, q)) / ld > tol && std::abs(cr(p, q, c)) / lq > tol &&
                std::abs(cr(p, q, d)) / lq > tol)
                hit = true;
        });
    });
    return hit;
}

bool interiors_overlap_shapes(const Shape& a, const Shape& b, double tol) {
    if (any_crossing(a.m, b.m, tol)) return true;
    for (const auto& v : a.m.vertices())
        if (where(b.m, v, tol) < 0) return true;
    for (const auto& v : b.m.vertices())
        if (where(a.m, v, tol) < 0) return true;
    for (const auto& c : a.centroids)
        if (where(b.m, c, tol) < 0) return true;
    for (const auto& c : b.centroids)
        if (where(a.m, c, tol) < 0) return true;
    return edge_piece_where(a.m, b.m, -1, tol) || edge_piece_where(b.m, a.m, -1, tol);
}

bool contains_shapes(const Shape& outer, const Shape& inner, double tol) {
    for (const auto& v : inner.m.vertices())
        if (where(outer.m, v, tol) > 0) return false;
    if (any_crossing(outer.m, inner.m, tol)) return false;
    for (const auto& v : outer.m.vertices())
        if (where(inner.m, v, tol) < 0) return false;
    for (const auto& c : inner.centroids)
        if (where(outer.m, c, tol) > 0) return false;
    return !edge_piece_where(inner.m, outer.m, 1, tol);
}

Shape shifted(const Shape& s, const Point& t) {
    Shape out{shift(s.m, t), s.centroids};
    for (auto& c : out.centroids) c = c + t;
    return out;
}

double point_sd(const MultiPolygon& m, const Point& p) {
    const double d = boundary_dist(m, p);
    return inside_even_odd(m, p) ? -d : d;
}

// Signed distance of p to the boundary of {q : member(q)} by marching rays.
double ray_signed_distance(const std::function<bool(const Point&)>& member, const Point& p, double range, double step) {
    const bool in = member(p);
    double best = range;
    constexpr int kDirs = 256;
    for (int k = 0; k < kDirs; ++k) {
        const double th = 2 * M_PI * k / kDirs;
        const Point d{std::cos(th), std::sin(th)};
        for (double t = step; t < best + step; t += step) {
            if (member(p + d * t) == in) continue;
            double lo = t - step, hi = t;
            for (int it = 0; it < 50; ++it) {
                const double mid = 0.5 * (lo + hi);
                (member(p + d * mid) == in ? lo : hi) = mid;
            }
            best = std::min(best, hi);
            break;
        }
    }
    return in ? -best : best;
}

}  // namespace

std::vector<Triangle> triangulate(const MultiPolygon& m) {
    std::vector<Triangle> out;
    for (const auto& poly : m.polygons()) {
        const auto tris = ear_clip(bridge(poly.outer, poly.holes));
        out.insert(out.end(), tris.begin(), tris.end());
    }
    return out;
}

std::vector<Ring> sum_pieces(const MultiPolygon& a, const MultiPolygon& b) {
    const auto ta = triangulate(a), tb = triangulate(b);
    std::vector<Ring> out;
    for (const auto& s : ta)
        for (const auto& t : tb) {
            std::vector<Point> pts;
            for (const auto& u : s)
                for (const auto& v : t) pts.push_back(u + v);
            out.push_back(hull(std::move(pts)));
        }
    return out;
}

MultiPolygon mink_sum(const MultiPolygon& a, const MultiPolygon& b) {
    std::vector<BMulti> parts;
    for (const auto& r : sum_pieces(a, b))
        if (r.size() >= 3) parts.push_back(to_boost(r));
    if (parts.empty()) return {};
    while (parts.size() > 1) {
        std::vector<BMulti> next;
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
            BMulti u;
            bg::union_(parts[i], parts[i + 1], u);
            next.push_back(std::move(u));
        }
        if (parts.size() % 2) next.push_back(std::move(parts.back()));
        parts = std::move(next);
    }
    return from_boost(parts[0]);
}

bool overlaps(const MultiPolygon& a, const MultiPolygon& b) {
    const double tol = 1e-12 * std::max(scale_of(a), scale_of(b));
    bool touch = false;
    a.for_each_edge([&](const Point& p, const Point& q) {
        if (touch) return;
        b.for_each_edge([&](const Point& c, const Point& d) {
            if (!touch && seg_seg(p, q, c, d) <= tol) touch = true;
        });
    });
    if (touch) return true;
    for (const auto& poly : a.polygons())
        if (inside_even_odd(b, poly.outer[0])) return true;
    for (const auto& poly : b.polygons())
        if (inside_even_odd(a, poly.outer[0])) return true;
    return false;
}

bool interiors_overlap(const MultiPolygon& a, const MultiPolygon& b) {
    const double tol = 1e-12 * std::max(scale_of(a), scale_of(b));
    return interiors_overlap_shapes(make_shape(a), make_shape(b), tol);
}

bool contains(const MultiPolygon& outer, const MultiPolygon& inner) {
    const double tol = 1e-12 * std::max(scale_of(outer), scale_of(inner));
    return contains_shapes(make_shape(outer), make_shape(inner), tol);
}

double d1(const MultiPolygon& a, const MultiPolygon& b) {
    if (overlaps(a, b)) return 0.0;
    double best = kInf;
    a.for_each_edge([&](const Point& p, const Point& q) {
        b.for_each_edge([&](const Point& c, const Point& d) { best = std::min(best, seg_seg(p, q, c, d)); });
    });
    return best;
}

double d2(const MultiPolygon& a, const MultiPolygon& b) {
    double best = 0;
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices()) best = std::max(best, dist(u, v));
    return best;
}

SampledObstacle::SampledObstacle(const MultiPolygon& a, const MultiPolygon& b, double density) {
    const MultiPolygon bm = mirror(b);
    pieces_ = sum_pieces(a, bm);
    const Shape sa = make_shape(a), sb = make_shape(b);
    const double tol = 1e-12 * std::max(scale_of(a), scale_of(b));
    // A sample q on a piece edge is in the closed obstacle; it is boundary unless B+q and A
    // overlap in their interiors.
    for (const auto& r : pieces_) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            const Point u = r[i], v = r[(i + 1) % r.size()];
            const int n = std::max(1, static_cast<int>(std::ceil(dist(u, v) * density)));
            bool prev_kept = false;
            Point prev{};
            for (int k = 0; k <= n; ++k) {
                const Point q = u + (v - u) * (static_cast<double>(k) / n);
                const bool kept = !interiors_overlap_shapes(sa, shifted(sb, q), tol);
                if (kept) {
                    boundary_.push_back({prev_kept ? prev : q, q});
                }
                prev_kept = kept;
                prev = q;
            }
        }
    }
}

bool SampledObstacle::inside(const Point& p) const {
    for (const auto& r : pieces_) {
        if (r.size() < 3) continue;
        bool in = true;
        for (std::size_t i = 0; i < r.size() && in; ++i)
            if (cr(r[i], r[(i + 1) % r.size()], p) < 0) in = false;
        if (in) return true;
    }
    return false;
}

double SampledObstacle::signed_distance(const Point& p) const {
    double best = kInf;
    for (const auto& s : boundary_) best = std::min(best, seg_dist(p, s[0], s[1]));
    return inside(p) ? -best : best;
}

namespace {

// sup over x in X (boundary samples, plus interior samples inside the holes of Y) of sd(x, Y).
double sampled_mu(const MultiPolygon& x, const MultiPolygon& y, double density) {
    double best = -kInf;
    x.for_each_edge([&](const Point& a, const Point& b) {
        const int n = std::max(1, static_cast<int>(std::ceil(dist(a, b) * density)));
        for (int k = 0; k <= n; ++k) best = std::max(best, point_sd(y, a + (b - a) * (static_cast<double>(k) / n)));
    });
    bool holes = false;
    for (const auto& p : y.polygons()) holes = holes || !p.holes.empty();
    if (holes) {
        const Box bb = x.bbox();
        const double h = 1.0 / density;
        for (double px = bb.min.x; px <= bb.max.x; px += h)
            for (double py = bb.min.y; py <= bb.max.y; py += h) {
                const Point q{px, py};
                if (inside_even_odd(x, q)) best = std::max(best, point_sd(y, q));
            }
    }
    return best;
}

}  // namespace

double distance(DistanceKind kind, const MultiPolygon& a, const MultiPolygon& b, const Point& p, double density) {
    const MultiPolygon bp = shift(b, p);
    switch (kind) {
        case DistanceKind::D1: return oracle::d1(a, bp);
        case DistanceKind::D2:
        case DistanceKind::GAMMA2: return oracle::d2(a, bp);
        case DistanceKind::GAMMA1: {
            if (!overlaps(a, bp)) return oracle::d1(a, bp);
            return SampledObstacle(a, b, density).signed_distance(p);
        }
        case DistanceKind::MU_BA: return sampled_mu(bp, a, density);
        case DistanceKind::MU_AB: return sampled_mu(a, bp, density);
        case DistanceKind::HAUS: return std::max(sampled_mu(bp, a, density), sampled_mu(a, bp, density));
        default: break;
    }

    // Containment (B+q ⊆ A) or covering (A ⊆ B+q) as a predicate on q.
    const bool covering = kind == DistanceKind::DELTA1 || kind == DistanceKind::DELTA2;
    const Shape sa = make_shape(a), sb = make_shape(b);
    const double tol = 1e-12 * std::max(scale_of(a), scale_of(b));
    auto member = [&](const Point& q) {
        const Shape bq = shifted(sb, q);
        return covering ? contains_shapes(bq, sa, tol) : contains_shapes(sa, bq, tol);
    };
    const Box ba = a.bbox(), bb = b.bbox();
    Box cand = covering ? Box{ba.max - bb.max, ba.min - bb.min} : Box{ba.min - bb.min, ba.max - bb.max};
    const double scale = std::max({1.0, ba.width(), ba.height(), bb.width(), bb.height()});
    const double range = std::max(dist(p, cand.min), dist(p, cand.max)) + std::hypot(cand.width(), cand.height()) + scale;
    const double step = scale / 256;

    std::vector<Point> members;
    if (!cand.empty()) {
        constexpr int kGrid = 96;
        for (int i = 0; i <= kGrid; ++i)
            for (int j = 0; j <= kGrid; ++j) {
                const Point q{cand.min.x + cand.width() * i / kGrid, cand.min.y + cand.height() * j / kGrid};
                if (member(q)) members.push_back(q);
            }
    }
    if (kind == DistanceKind::DSTAR) {
        if (members.empty() || !member(p)) return 0.0;
        return -ray_signed_distance(member, p, range, step);
    }
    if (members.empty())
        throw Error(ErrorCode::UndefinedErosionEmpty, "oracle: no translation satisfies the erosion predicate");
    if (kind == DistanceKind::ETA1 || kind == DistanceKind::DELTA1) return ray_signed_distance(member, p, range, step);
    double best = 0;
    for (const auto& q : members) best = std::max(best, dist(p, q));
    return best;
}

Point Bitmap::center(int i, int j) const {
    return {window.min.x + (i + 0.5) * window.width() / width, window.min.y + (j + 0.5) * window.height() / height};
}

std::size_t Bitmap::count(Truth t) const { return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), t)); }

Bitmap oracle_map(const Evaluator& ev, const TgsExpr& e, int grid) {
    if (grid < 1) throw Error(ErrorCode::InvalidArgument, "grid must be positive");
    Bitmap b;
    b.width = b.height = grid;
    b.window = ev.window(e);
    b.cells.resize(static_cast<std::size_t>(grid) * grid);
    for (int j = 0; j < grid; ++j)
        for (int i = 0; i < grid; ++i) b.cells[static_cast<std::size_t>(j) * grid + i] = ev.eval_point(e, b.center(i, j)).value;
    return b;
}

std::size_t component_count(const Bitmap& b) {
    std::vector<char> seen(b.cells.size(), 0);
    std::size_t count = 0;
    std::vector<std::pair<int, int>> stack;
    for (int j = 0; j < b.height; ++j)
        for (int i = 0; i < b.width; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * b.width + i;
            if (seen[k] || b.cells[k] != Truth::True) continue;
            ++count;
            seen[k] = 1;
            stack.push_back({i, j});
            while (!stack.empty()) {
                auto [x, y] = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= b.width || ny >= b.height) continue;
                        const std::size_t nk = static_cast<std::size_t>(ny) * b.width + nx;
                        if (seen[nk] || b.cells[nk] != Truth::True) continue;
                        seen[nk] = 1;
                        stack.push_back({nx, ny});
                    }
            }
        }
    return count;
}

std::string to_pgm(const Bitmap& b) {
    std::string s = "P2\n" + std::to_string(b.width) + " " + std::to_string(b.height) + "\n255\n";
    for (int j = b.height - 1; j >= 0; --j) {
        for (int i = 0; i < b.width; ++i) {
            const Truth t = b.at(i, j);
            s += t == Truth::True ? "255" : t == Truth::Ambiguous ? "128" : "0";
            s += i + 1 < b.width ? ' ' : '\n';
        }
    }
    return s;
}

Agreement compare_backends(const Evaluator& ev, const TgsExpr& e, const RegionNR& region, const Bitmap& b,
                           double slack) {
    Agreement out;
    const double eps = ev.scene().config.eps;
    for (int j = 0; j < b.height; ++j)
        for (int i = 0; i < b.width; ++i) {
            const Truth t = b.at(i, j);
            const Point c = b.center(i, j);
            if (t == Truth::Ambiguous || ev.near_threshold(e, c, slack)) {
                ++out.band;
                continue;
            }
            ++out.checked;
            const bool member = nr_classify(region, c, eps) == Membership::Member;
            if (member != (t == Truth::True)) {
                ++out.mismatches;
                if (out.witnesses.size() < 8) out.witnesses.push_back(c);
            }
        }
    return out;
}

}  // namespace cspace::oracle
