#include "cspace/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cspace/error.hpp"

namespace cspace {

Ring ApproxDisk::polygon() const {
    const int n = std::max(segments, 8);
    Ring out;
    if (radius <= 0.0) return out;
    out.reserve(static_cast<std::size_t>(n));
    const double step = 2.0 * std::numbers::pi / n;
    const double scale = mode == DiskMode::Inscribed ? radius : radius / std::cos(std::numbers::pi / n);
    const double phase = mode == DiskMode::Inscribed ? 0.0 : 0.5;
    for (int k = 0; k < n; ++k) {
        const double a = (k + phase) * step;
        out.push_back({scale * std::cos(a), scale * std::sin(a)});
    }
    return out;
}

double ApproxDisk::chord_error() const {
    return std::abs(radius) * (1.0 - std::cos(std::numbers::pi / std::max(segments, 8)));
}

double ApproxDisk::error_bound() const {
    return std::abs(radius) * (1.0 / std::cos(std::numbers::pi / std::max(segments, 8)) - 1.0);
}

double DiskConfig::error_bound(double r) const {
    return ApproxDisk{std::abs(r), segments, DiskMode::Circumscribed}.error_bound();
}

// ---------------------------------------------------------------------------
// Convex decomposition

namespace {

struct SlabEdge {
    Point a, b;  // a.x < b.x
};

double y_at(const SlabEdge& e, double x) {
    if (x == e.a.x) return e.a.y;
    if (x == e.b.x) return e.b.y;
    return e.a.y + (x - e.a.x) * (e.b.y - e.a.y) / (e.b.x - e.a.x);
}

struct OpenPiece {
    Ring lower;  // left to right
    Ring upper;  // left to right
    bool continued = false;
};

Ring close_piece(const OpenPiece& o) {
    Ring r = o.lower;
    for (auto it = o.upper.rbegin(); it != o.upper.rend(); ++it) r.push_back(*it);
    return clean_ring(r, 0.0);
}

void decompose_polygon(const Polygon& poly, std::vector<Ring>& out) {
    if (poly.holes.empty() && is_convex(poly.outer, 0.0)) {
        out.push_back(poly.outer);
        return;
    }
    std::vector<SlabEdge> edges;
    std::vector<double> xs;
    auto add_ring = [&](const Ring& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            const Point& p = r[i];
            const Point& q = r[(i + 1) % r.size()];
            xs.push_back(p.x);
            if (p.x == q.x) continue;
            edges.push_back(p.x < q.x ? SlabEdge{p, q} : SlabEdge{q, p});
        }
    };
    add_ring(poly.outer);
    for (const auto& h : poly.holes) add_ring(h);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    const Box bb = MultiPolygon({poly}).bbox();
    const double tiny = 1e-12 * std::max({1.0, bb.width(), bb.height()});

    std::vector<OpenPiece> open;
    std::vector<const SlabEdge*> active;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double x0 = xs[k], x1 = xs[k + 1];
        const double xm = 0.5 * (x0 + x1);
        active.clear();
        for (const auto& e : edges)
            if (e.a.x <= x0 && e.b.x >= x1) active.push_back(&e);
        std::sort(active.begin(), active.end(),
                  [xm](const SlabEdge* u, const SlabEdge* v) { return y_at(*u, xm) < y_at(*v, xm); });

        std::vector<OpenPiece> next;
        for (std::size_t i = 0; i + 1 < active.size(); i += 2) {
            const SlabEdge& lo = *active[i];
            const SlabEdge& hi = *active[i + 1];
            const Point l0{x0, y_at(lo, x0)}, l1{x1, y_at(lo, x1)};
            const Point u0{x0, y_at(hi, x0)}, u1{x1, y_at(hi, x1)};
            bool merged = false;
            for (auto& o : open) {
                if (o.continued) continue;
                if (o.lower.back().x != x0) continue;
                if (std::abs(o.lower.back().y - l0.y) > tiny || std::abs(o.upper.back().y - u0.y) > tiny) continue;
                const bool lower_ok =
                    o.lower.size() < 2 || orient(o.lower[o.lower.size() - 2], o.lower.back(), l1) >= 0.0;
                const bool upper_ok =
                    o.upper.size() < 2 || orient(o.upper[o.upper.size() - 2], o.upper.back(), u1) <= 0.0;
                if (!lower_ok || !upper_ok) break;
                OpenPiece grown = o;
                o.continued = true;
                grown.continued = false;
                grown.lower.push_back(l1);
                grown.upper.push_back(u1);
                next.push_back(std::move(grown));
                merged = true;
                break;
            }
            if (!merged) next.push_back(OpenPiece{{l0, l1}, {u0, u1}, false});
        }
        for (const auto& o : open) {
            if (o.continued) continue;
            Ring r = close_piece(o);
            if (r.size() >= 3) out.push_back(std::move(r));
        }
        open = std::move(next);
    }
    for (const auto& o : open) {
        Ring r = close_piece(o);
        if (r.size() >= 3) out.push_back(std::move(r));
    }
}

}  // namespace

std::vector<Ring> convex_decomposition(const MultiPolygon& m) {
    std::vector<Ring> out;
    for (const auto& p : m.polygons()) decompose_polygon(p, out);
    return out;
}

// ---------------------------------------------------------------------------
// Convex sums

namespace {

std::size_t bottom_index(const Ring& r) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i].y < r[best].y || (r[i].y == r[best].y && r[i].x < r[best].x)) best = i;
    return best;
}

Ring ccw_convex(const Ring& r) {
    Ring out = clean_ring(r, 0.0);
    if (out.size() >= 3 && signed_area(out) < 0) std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

Ring convex_sum(const Ring& p_in, const Ring& q_in) {
    const Ring p = ccw_convex(p_in);
    const Ring q = ccw_convex(q_in);
    if (p.size() < 3 || q.size() < 3) {
        std::vector<Point> pts;
        for (const auto& a : p_in)
            for (const auto& b : q_in) pts.push_back(a + b);
        return convex_hull(std::move(pts));
    }
    const std::size_t n = p.size(), m = q.size();
    const std::size_t i0 = bottom_index(p), j0 = bottom_index(q);
    Ring out;
    out.reserve(n + m);
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        const Point& pi = p[(i0 + i) % n];
        const Point& qj = q[(j0 + j) % m];
        out.push_back(pi + qj);
        const Point e1 = p[(i0 + i + 1) % n] - pi;
        const Point e2 = q[(j0 + j + 1) % m] - qj;
        const double c = cross(e1, e2);
        if (j == m || (i < n && c > 0))
            ++i;
        else if (i == n || c < 0)
            ++j;
        else {
            ++i;
            ++j;
        }
    }
    return clean_ring(out, 0.0);
}

// ---------------------------------------------------------------------------
// Sums, erosion, offsets

namespace {

struct PieceSums {
    std::vector<Ring> rings;
    MultiPolygon region;
};

PieceSums piece_sums(const MultiPolygon& a, const MultiPolygon& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyInput, "mink_sum: empty operand");
    const auto pa = convex_decomposition(a);
    const auto pb = convex_decomposition(b);
    PieceSums out;
    std::vector<MultiPolygon> parts;
    for (const auto& x : pa)
        for (const auto& y : pb) {
            Ring s = convex_sum(x, y);
            if (s.size() < 3) continue;
            parts.push_back(normalize(MultiPolygon::from_ring(s)));
            out.rings.push_back(std::move(s));
        }
    out.region = parts.size() == 1 ? std::move(parts.front()) : union_all(std::move(parts));
    return out;
}

// Portion of segment u->v (parameter interval) strictly inside convex CCW ring r, shrunk by eps.
// Returns false when the open interval is empty.
bool strict_clip(const Ring& r, const Point& u, const Point& v, double eps, double& t0, double& t1) {
    t0 = 0.0;
    t1 = 1.0;
    const Point d = v - u;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Point& a = r[i];
        const Point& b = r[(i + 1) % r.size()];
        const Point e = b - a;
        const double len = norm(e);
        if (len == 0.0) continue;
        // Signed distance of u + t d to the edge line, positive inside.
        const double s0 = cross(e, u - a) / len - eps;
        const double ds = cross(e, d) / len;
        if (ds == 0.0) {
            if (s0 <= 0.0) return false;
            continue;
        }
        const double t = -s0 / ds;
        if (ds > 0)
            t0 = std::max(t0, t);
        else
            t1 = std::min(t1, t);
        if (t0 >= t1) return false;
    }
    return t0 < t1;
}

bool strictly_inside_convex(const Ring& r, const Point& p, double eps) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Point& a = r[i];
        const Point& b = r[(i + 1) % r.size()];
        const double len = dist(a, b);
        if (len == 0.0) continue;
        if (cross(b - a, p - a) / len <= eps) return false;
    }
    return true;
}

bool same_segment(const DegenerateFeature& f, const Point& a, const Point& b, double eps) {
    if (f.points.size() != 2) return false;
    return (dist(f.points[0], a) <= eps && dist(f.points[1], b) <= eps) ||
           (dist(f.points[0], b) <= eps && dist(f.points[1], a) <= eps);
}

std::vector<DegenerateFeature> find_features(const MultiPolygon& a, const MultiPolygon& b,
                                             const PieceSums& ps, double eps) {
    std::vector<DegenerateFeature> out;
    if (ps.rings.size() < 2) return out;
    const MultiPolygon rb = reflect(b);
    auto touching_only = [&](const Point& q) { return !interiors_overlap(a, translate(rb, q), eps); };
    const double margin = 10.0 * eps;

    for (std::size_t k = 0; k < ps.rings.size(); ++k) {
        const Ring& r = ps.rings[k];
        for (std::size_t i = 0; i < r.size(); ++i) {
            const Point u = r[i];
            const Point v = r[(i + 1) % r.size()];
            // Parameter intervals of u->v not strictly inside any other piece.
            std::vector<std::pair<double, double>> keep{{0.0, 1.0}};
            for (std::size_t j = 0; j < ps.rings.size() && !keep.empty(); ++j) {
                if (j == k) continue;
                double t0, t1;
                if (!strict_clip(ps.rings[j], u, v, margin, t0, t1)) continue;
                std::vector<std::pair<double, double>> next;
                for (const auto& [s0, s1] : keep) {
                    if (t1 <= s0 || t0 >= s1) {
                        next.push_back({s0, s1});
                        continue;
                    }
                    if (t0 > s0) next.push_back({s0, t0});
                    if (t1 < s1) next.push_back({t1, s1});
                }
                keep = std::move(next);
            }
            const double len = dist(u, v);
            for (const auto& [s0, s1] : keep) {
                if ((s1 - s0) * len <= margin) continue;
                const Point p0 = u + (v - u) * s0;
                const Point p1 = u + (v - u) * s1;
                const Point mid = (p0 + p1) * 0.5;
                if (classify_point(ps.region, mid, margin) != Location::In) continue;
                bool dup = false;
                for (const auto& f : out) dup = dup || same_segment(f, p0, p1, margin);
                if (dup || !touching_only(mid)) continue;
                out.push_back({{p0, p1}});
            }
        }
    }
    // Isolated points: piece vertices buried in the region but in no piece interior.
    for (const auto& r : ps.rings) {
        for (const auto& v : r) {
            bool buried = false;
            for (const auto& s : ps.rings)
                if (strictly_inside_convex(s, v, margin)) {
                    buried = true;
                    break;
                }
            if (buried) continue;
            bool known = false;
            for (const auto& f : out) {
                const double d = f.is_point() ? dist(f.points[0], v)
                                              : point_segment_distance(v, f.points[0], f.points[1]);
                known = known || d <= margin;
            }
            if (known) continue;
            if (classify_point(ps.region, v, margin) != Location::In) continue;
            if (touching_only(v)) out.push_back({{v}});
        }
    }
    return out;
}

MultiPolygon box_region(const Box& b) { return MultiPolygon::box(b.min.x, b.min.y, b.max.x, b.max.y); }

// A ⊖ B for a convex single-ring A: intersection of A's edge half-planes pushed inward by
// the support of B along each inward normal.
MultiPolygon convex_erosion(const Ring& a, const MultiPolygon& b) {
    const auto bv = b.vertices();
    const Box ab = MultiPolygon::from_ring(a).bbox();
    const Box bb = b.bbox();
    const Box start{{ab.min.x + bb.min.x, ab.min.y + bb.min.y}, {ab.max.x + bb.max.x, ab.max.y + bb.max.y}};
    Ring poly{start.min, {start.max.x, start.min.y}, start.max, {start.min.x, start.max.y}};
    for (std::size_t i = 0; i < a.size() && !poly.empty(); ++i) {
        const Point& p = a[i];
        const Point& q = a[(i + 1) % a.size()];
        const Point e = q - p;
        const Point n{-e.y, e.x};  // inward for CCW
        double support = -std::numeric_limits<double>::infinity();
        for (const auto& v : bv) support = std::max(support, dot(n, v));
        const double c = dot(n, p) + support;  // keep n·x >= c
        Ring next;
        for (std::size_t j = 0; j < poly.size(); ++j) {
            const Point& s = poly[j];
            const Point& t = poly[(j + 1) % poly.size()];
            const double fs = dot(n, s) - c, ft = dot(n, t) - c;
            if (fs >= 0) next.push_back(s);
            if ((fs >= 0) != (ft >= 0)) {
                const double w = fs / (fs - ft);
                Point x = s + (t - s) * w;
                if (n.x == 0.0) x.y = c / n.y;
                if (n.y == 0.0) x.x = c / n.x;
                next.push_back(x);
            }
        }
        poly = std::move(next);
    }
    if (poly.size() < 3) return {};
    return normalize(MultiPolygon::from_ring(poly));
}

MultiPolygon subtract_blockers(MultiPolygon e, const Ring& bpoly, std::span<const DegenerateFeature> blockers) {
    if (e.empty() || blockers.empty()) return e;
    std::vector<MultiPolygon> cut;
    for (const auto& f : blockers) {
        Ring s = convex_sum(f.points, bpoly);
        if (s.size() >= 3) cut.push_back(normalize(MultiPolygon::from_ring(std::move(s))));
    }
    return boolean_reg(e, union_all(std::move(cut)), BoolOp::Diff);
}

}  // namespace

bool interiors_overlap(const MultiPolygon& a, const MultiPolygon& b, double eps) {
    const double slack = eps * std::max(1.0, std::min(a.perimeter(), b.perimeter()));
    return overlap_area(a, b) > slack;
}

MultiPolygon mink_sum_region(const MultiPolygon& a, const MultiPolygon& b) { return piece_sums(a, b).region; }

MinkResult mink_sum(const MultiPolygon& a, const MultiPolygon& b) {
    PieceSums ps = piece_sums(a, b);
    MinkResult out;
    out.degenerate_features = find_features(a, b, ps, kDefaultEps);
    out.region = std::move(ps.region);
    return out;
}

MinkResult mink_sum(const MultiPolygon& a, const Point& b) {
    if (a.empty()) throw Error(ErrorCode::EmptyInput, "mink_sum: empty operand");
    return {normalize(translate(a, b)), {}};
}

MultiPolygon erosion(const MultiPolygon& a, const MultiPolygon& b, std::span<const DegenerateFeature> blockers) {
    if (b.empty()) throw Error(ErrorCode::EmptyInput, "erosion: empty structuring element");
    if (a.empty()) return {};
    // The polygon used for blockers: B itself when convex, its hull otherwise (a sufficient cut
    // for the disk elements this is used with).
    const Ring bhull = convex_hull(b);
    if (a.polygons().size() == 1 && a.polygons()[0].holes.empty() && is_convex(a.polygons()[0].outer, 0.0))
        return subtract_blockers(convex_erosion(a.polygons()[0].outer, b), bhull, blockers);

    const Box ba = a.bbox(), bb = b.bbox();
    const Point b0 = b.polygons().front().outer.front();
    // A ⊖ B ⊆ A + b0 for any b0 in B, so X bounds the result.
    const Box x = Box{ba.min + b0, ba.max + b0}.inflated(1.0);
    const Box w = Box{x.min - bb.max, x.max - bb.min}.inflated(1.0);
    const MultiPolygon comp = boolean_reg(box_region(w), a, BoolOp::Diff);
    const MultiPolygon grown = mink_sum_region(comp, b);
    return subtract_blockers(boolean_reg(box_region(x), grown, BoolOp::Diff), bhull, blockers);
}

MultiPolygon dilate_disk(const MultiPolygon& a, const ApproxDisk& d) {
    if (a.empty() || d.radius <= 0.0) return a;
    return mink_sum_region(a, MultiPolygon::from_ring(d.polygon()));
}

MultiPolygon erode_disk(const MultiPolygon& a, const ApproxDisk& d, std::span<const DegenerateFeature> blockers) {
    if (a.empty()) return a;
    if (d.radius <= 0.0) return a;
    return erosion(a, MultiPolygon::from_ring(d.polygon()), blockers);
}

MinkResult cspace_obstacle(const MultiPolygon& a, const MultiPolygon& b) { return mink_sum(a, reflect(b)); }

}  // namespace cspace
