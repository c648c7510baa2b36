#include "cspace/geom.hpp"

#include <algorithm>
#include <limits>

#include "cspace/error.hpp"

namespace cspace {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInput: return "EMPTY_INPUT";
        case ErrorCode::UndefinedErosionEmpty: return "UNDEFINED_EROSION_EMPTY";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::SchemaError: return "SCHEMA_ERROR";
        case ErrorCode::InvalidRing: return "INVALID_RING";
        case ErrorCode::UnknownObject: return "UNKNOWN_OBJECT";
        case ErrorCode::UnknownGroup: return "UNKNOWN_GROUP";
        case ErrorCode::MixedSubjects: return "MIXED_SUBJECTS";
        case ErrorCode::UnsupportedGroupAtom: return "UNSUPPORTED_GROUP_ATOM";
        case ErrorCode::OracleMismatch: return "ORACLE_MISMATCH";
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    }
    return "UNKNOWN";
}

const char* to_string(Location loc) {
    switch (loc) {
        case Location::In: return "IN";
        case Location::On: return "ON";
        case Location::Out: return "OUT";
    }
    return "?";
}

Point closest_point_on_segment(const Point& p, const Point& a, const Point& b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= 0.0) return a;
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return a + ab * t;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    return dist(p, closest_point_on_segment(p, a, b));
}

namespace {

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    const double d1 = orient(a, b, c), d2 = orient(a, b, d);
    const double d3 = orient(c, d, a), d4 = orient(c, d, b);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

double segment_segment_distance(const Point& a, const Point& b, const Point& c, const Point& d) {
    if (segments_cross(a, b, c, d)) return 0.0;
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                     point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

void Box::expand(const Point& p) {
    min.x = std::min(min.x, p.x);
    min.y = std::min(min.y, p.y);
    max.x = std::max(max.x, p.x);
    max.y = std::max(max.y, p.y);
}

void Box::expand(const Box& b) {
    if (b.empty()) return;
    expand(b.min);
    expand(b.max);
}

Box Box::empty_box() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {{inf, inf}, {-inf, -inf}};
}

double signed_area(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) return 0.0;
    // Shifted to the first vertex to limit cancellation on far-from-origin rings.
    const Point o = ring[0];
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) s += cross(ring[i] - o, ring[i + 1] - o);
    return 0.5 * s;
}

bool is_convex(std::span<const Point> ring, double eps) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    const double sign = signed_area(ring) >= 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        const Point& c = ring[(i + 2) % n];
        const double len = dist(a, b) + dist(b, c);
        if (sign * orient(a, b, c) < -eps * len) return false;
    }
    return true;
}

bool is_simple(std::span<const Point> ring, double eps) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        if (dist(a, b) <= eps) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            const Point& c = ring[j];
            const Point& d = ring[(j + 1) % n];
            if (segment_segment_distance(a, b, c, d) <= eps) return false;
        }
    }
    // Adjacent edges folding back onto each other.
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[(i + n - 1) % n];
        const Point& b = ring[i];
        const Point& c = ring[(i + 1) % n];
        if (std::abs(orient(a, b, c)) <= eps * (dist(a, b) + dist(b, c)) && dot(a - b, c - b) > 0) return false;
    }
    return true;
}

MultiPolygon MultiPolygon::from_ring(Ring outer) {
    if (signed_area(outer) < 0) std::reverse(outer.begin(), outer.end());
    return MultiPolygon({Polygon{std::move(outer), {}}});
}

MultiPolygon MultiPolygon::box(double x0, double y0, double x1, double y1) {
    return from_ring({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

std::size_t MultiPolygon::ring_count() const {
    std::size_t n = 0;
    for (const auto& p : polys_) n += 1 + p.holes.size();
    return n;
}

std::size_t MultiPolygon::vertex_count() const {
    std::size_t n = 0;
    for (const auto& p : polys_) {
        n += p.outer.size();
        for (const auto& h : p.holes) n += h.size();
    }
    return n;
}

double MultiPolygon::area() const {
    double a = 0.0;
    for (const auto& p : polys_) {
        a += std::abs(signed_area(p.outer));
        for (const auto& h : p.holes) a -= std::abs(signed_area(h));
    }
    return a;
}

double MultiPolygon::perimeter() const {
    double s = 0.0;
    for_each_edge([&](const Point& a, const Point& b) { s += dist(a, b); });
    return s;
}

Box MultiPolygon::bbox() const {
    Box b = Box::empty_box();
    for (const auto& p : polys_)
        for (const auto& v : p.outer) b.expand(v);
    return b;
}

std::vector<Point> MultiPolygon::vertices() const {
    std::vector<Point> out;
    out.reserve(vertex_count());
    for (const auto& p : polys_) {
        out.insert(out.end(), p.outer.begin(), p.outer.end());
        for (const auto& h : p.holes) out.insert(out.end(), h.begin(), h.end());
    }
    return out;
}

Point Transform::apply(const Point& p) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * p.x - s * p.y + translation.x, s * p.x + c * p.y + translation.y};
}

Ring Transform::apply(const Ring& r) const {
    Ring out;
    out.reserve(r.size());
    for (const auto& p : r) out.push_back(apply(p));
    return out;
}

MultiPolygon Transform::apply(const MultiPolygon& m) const {
    std::vector<Polygon> polys;
    for (const auto& p : m.polygons()) {
        Polygon q{apply(p.outer), {}};
        for (const auto& h : p.holes) q.holes.push_back(apply(h));
        polys.push_back(std::move(q));
    }
    return MultiPolygon(std::move(polys));
}

MultiPolygon translate(const MultiPolygon& m, const Point& t) {
    MultiPolygon out = m;
    for (auto& p : out.polygons()) {
        for (auto& v : p.outer) v += t;
        for (auto& h : p.holes)
            for (auto& v : h) v += t;
    }
    return out;
}

Point reflect(const Point& p) { return -p; }

MultiPolygon reflect(const MultiPolygon& m) {
    // Point reflection is a rotation by pi, so orientation is preserved.
    MultiPolygon out = m;
    for (auto& p : out.polygons()) {
        for (auto& v : p.outer) v = -v;
        for (auto& h : p.holes)
            for (auto& v : h) v = -v;
    }
    return out;
}

Ring clean_ring(const Ring& r, double eps) {
    Ring out;
    out.reserve(r.size());
    for (const auto& p : r) {
        if (!out.empty() && dist(out.back(), p) <= eps) continue;
        out.push_back(p);
    }
    while (out.size() > 1 && dist(out.front(), out.back()) <= eps) out.pop_back();
    // Drop vertices lying within eps of the chord through their neighbours, repeatedly.
    bool changed = true;
    while (changed && out.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i) {
            const std::size_t n = out.size();
            const Point& a = out[(i + n - 1) % n];
            const Point& b = out[i];
            const Point& c = out[(i + 1) % n];
            const double ac = dist(a, c);
            bool drop = false;
            if (ac <= eps) {
                drop = true;  // spike back onto itself
            } else {
                // Collinear continuation, or a needle spike folding back along the chord.
                if (std::abs(orient(a, b, c)) / ac <= eps) drop = true;
            }
            if (drop) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                if (i > 0) --i;
            }
        }
    }
    if (out.size() < 3) return {};
    return out;
}

namespace {

void canonical_start(Ring& r) {
    auto it = std::min_element(r.begin(), r.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    std::rotate(r.begin(), it, r.end());
}

bool collapsed(const Ring& r, double eps) {
    if (r.size() < 3) return true;
    double per = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) per += dist(r[i], r[(i + 1) % r.size()]);
    return std::abs(signed_area(r)) <= eps * per * 0.5;
}

}  // namespace

MultiPolygon normalize(const MultiPolygon& m, double eps) {
    std::vector<Polygon> polys;
    for (const auto& p : m.polygons()) {
        Ring outer = clean_ring(p.outer, eps);
        if (collapsed(outer, eps)) continue;
        if (signed_area(outer) < 0) std::reverse(outer.begin(), outer.end());
        for (auto& v : outer) v = v + Point{0.0, 0.0};  // no negative zeros
        canonical_start(outer);
        Polygon q{std::move(outer), {}};
        for (const auto& h : p.holes) {
            Ring hr = clean_ring(h, eps);
            if (collapsed(hr, eps)) continue;
            if (signed_area(hr) > 0) std::reverse(hr.begin(), hr.end());
            for (auto& v : hr) v = v + Point{0.0, 0.0};
            canonical_start(hr);
            q.holes.push_back(std::move(hr));
        }
        polys.push_back(std::move(q));
    }
    std::sort(polys.begin(), polys.end(), [](const Polygon& a, const Polygon& b) {
        const Point& pa = a.outer.front();
        const Point& pb = b.outer.front();
        return pa.x < pb.x || (pa.x == pb.x && pa.y < pb.y);
    });
    return MultiPolygon(std::move(polys));
}

double boundary_distance(const MultiPolygon& m, const Point& p) {
    double best = std::numeric_limits<double>::infinity();
    m.for_each_edge([&](const Point& a, const Point& b) {
        best = std::min(best, point_segment_distance(p, a, b));
    });
    return best;
}

namespace {

bool ring_crossing(const Ring& r, const Point& p) {
    bool in = false;
    const std::size_t n = r.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = r[i];
        const Point& b = r[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) in = !in;
        }
    }
    return in;
}

}  // namespace

bool inside_raw(const MultiPolygon& m, const Point& p) {
    for (const auto& poly : m.polygons()) {
        if (!ring_crossing(poly.outer, p)) continue;
        bool in_hole = false;
        for (const auto& h : poly.holes)
            if (ring_crossing(h, p)) { in_hole = true; break; }
        if (!in_hole) return true;
    }
    return false;
}

namespace {

// One pass over a ring: crossing parity, and whether p is within eps of an edge. Edges whose
// box misses p by more than eps skip the distance computation.
bool ring_scan(const Ring& r, const Point& p, double eps, bool& near) {
    bool in = false;
    const std::size_t n = r.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = r[i];
        const Point& b = r[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) in = !in;
        }
        if (near) continue;
        if (p.x < std::min(a.x, b.x) - eps || p.x > std::max(a.x, b.x) + eps || p.y < std::min(a.y, b.y) - eps ||
            p.y > std::max(a.y, b.y) + eps)
            continue;
        near = point_segment_distance(p, a, b) <= eps;
    }
    return in;
}

}  // namespace

Location classify_point(const MultiPolygon& m, const Point& p, double eps) {
    if (m.empty()) return Location::Out;
    bool near = false, inside = false;
    for (const auto& poly : m.polygons()) {
        bool in = ring_scan(poly.outer, p, eps, near);
        for (const auto& h : poly.holes) in = ring_scan(h, p, eps, near) ? false : in;
        inside = inside || in;
    }
    if (near) return Location::On;
    return inside ? Location::In : Location::Out;
}

double signed_distance(const MultiPolygon& m, const Point& p, double eps) {
    if (m.empty()) return std::numeric_limits<double>::infinity();
    const double d = boundary_distance(m, p);
    if (d <= eps) return 0.0;
    return inside_raw(m, p) ? -d : d;
}

bool contains_region(const MultiPolygon& p, const MultiPolygon& q, double eps) {
    if (q.empty()) return true;
    if (p.empty()) return false;
    for (const auto& v : q.vertices())
        if (classify_point(p, v, eps) == Location::Out) return false;
    for (const auto& poly : p.polygons()) {
        for (const auto& v : poly.outer)
            if (classify_point(q, v, eps) == Location::In) return false;
        for (const auto& h : poly.holes)
            for (const auto& v : h)
                if (classify_point(q, v, eps) == Location::In) return false;
    }
    bool ok = true;
    std::vector<double> ts;
    q.for_each_edge([&](const Point& a, const Point& b) {
        if (!ok) return;
        const Point ab = b - a;
        const double lab = norm(ab);
        if (lab == 0.0) return;
        ts.assign({0.0, 1.0});
        p.for_each_edge([&](const Point& c, const Point& d) {
            if (!ok) return;
            const Point cd = d - c;
            const double lcd = norm(cd);
            if (lcd == 0.0) return;
            const double sa = cross(cd, a - c) / lcd, sb = cross(cd, b - c) / lcd;
            const double sc = cross(ab, c - a) / lab, sd = cross(ab, d - a) / lab;
            const bool split_ab = (sa > eps && sb < -eps) || (sa < -eps && sb > eps);
            const bool split_cd = (sc > eps && sd < -eps) || (sc < -eps && sd > eps);
            if (split_ab && split_cd) {
                ok = false;
                return;
            }
            for (const Point* v : {&c, &d}) {
                const double t = dot(*v - a, ab) / (lab * lab);
                if (t > 0.0 && t < 1.0 && std::abs(cross(ab, *v - a)) / lab <= eps) ts.push_back(t);
            }
            if ((sa > 0) != (sb > 0) && sa != sb) ts.push_back(sa / (sa - sb));
        });
        if (!ok) return;
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 0; i + 1 < ts.size() && ok; ++i) {
            if (ts[i + 1] - ts[i] <= 0.0) continue;
            const Point mid = a + ab * (0.5 * (ts[i] + ts[i + 1]));
            if (classify_point(p, mid, eps) == Location::Out) ok = false;
        }
    });
    return ok;
}

Ring convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    Ring h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && orient(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

Ring convex_hull(const MultiPolygon& m) {
    if (m.empty()) throw Error(ErrorCode::EmptyInput, "convex_hull: empty input");
    std::vector<Point> pts;
    for (const auto& p : m.polygons()) pts.insert(pts.end(), p.outer.begin(), p.outer.end());
    return convex_hull(std::move(pts));
}

std::vector<Point> extreme_points(const MultiPolygon& m) { return convex_hull(m); }

}  // namespace cspace
