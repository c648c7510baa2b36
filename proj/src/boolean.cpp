// Regularized Booleans on MultiPolygon, backed by Boost.Geometry's overlay.

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "cspace/geom.hpp"

namespace cspace {

namespace {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
// Counter-clockwise outers, open rings: matches the canonical MultiPolygon orientation.
using BPolygon = bg::model::polygon<BPoint, false, false>;
using BMulti = bg::model::multi_polygon<BPolygon>;

void to_ring(const Ring& r, BPolygon::ring_type& out) {
    out.clear();
    out.reserve(r.size());
    for (const auto& p : r) out.emplace_back(p.x, p.y);
}

BMulti to_boost(const MultiPolygon& m) {
    BMulti out;
    out.reserve(m.polygons().size());
    for (const auto& p : m.polygons()) {
        BPolygon bp;
        to_ring(p.outer, bp.outer());
        for (const auto& h : p.holes) {
            bp.inners().emplace_back();
            to_ring(h, bp.inners().back());
        }
        out.push_back(std::move(bp));
    }
    return out;
}

Ring from_ring(const BPolygon::ring_type& r) {
    Ring out;
    out.reserve(r.size());
    for (const auto& p : r) out.push_back({p.x(), p.y()});
    return out;
}

MultiPolygon from_boost(const BMulti& m) {
    std::vector<Polygon> polys;
    polys.reserve(m.size());
    for (const auto& bp : m) {
        Polygon p{from_ring(bp.outer()), {}};
        for (const auto& h : bp.inners()) p.holes.push_back(from_ring(h));
        polys.push_back(std::move(p));
    }
    return normalize(MultiPolygon(std::move(polys)));
}

// Overlay with the integer-rescaling policy. Coordinates snap slightly, so it is only a
// fallback for inputs the exact overlay mishandles.
BMulti overlay_rescaled(const BMulti& a, const BMulti& b, BoolOp op) {
    using Rescale = bg::detail::get_rescale_policy::rescale_policy_type<BPoint, true>::type;
    using Strategy = bg::strategy::relate::services::default_strategy<BMulti, BMulti>::type;
    const Strategy strategy;
    const Rescale policy = bg::get_rescale_policy<Rescale>(a, b, strategy);
    BMulti out;
    switch (op) {
        case BoolOp::Union:
            bg::dispatch::union_insert<BMulti, BMulti, BPolygon>::apply(a, b, policy, std::back_inserter(out), strategy);
            break;
        case BoolOp::Intersect: bg::dispatch::intersection<BMulti, BMulti>::apply(a, b, policy, out, strategy); break;
        case BoolOp::Diff:
            bg::detail::difference::call_intersection_insert<BMulti, BMulti, BPolygon>::apply(
                a, b, policy, std::back_inserter(out), strategy);
            break;
    }
    return out;
}

// Area bounds every correct result satisfies; the exact overlay occasionally drops everything.
bool plausible(double a, double b, double out, BoolOp op) {
    const double tol = 1e-9 * std::max(1.0, a + b);
    switch (op) {
        case BoolOp::Union: return out >= std::max(a, b) - tol && out <= a + b + tol;
        case BoolOp::Intersect: return out <= std::min(a, b) + tol;
        case BoolOp::Diff: return out >= a - b - tol && out <= a + tol;
    }
    return true;
}

// Input vertices whose membership is clear-cut (strictly inside or outside the other operand)
// must land on the matching side of the result. Catches pieces the overlay drops or invents.
bool vertices_consistent(const MultiPolygon& p, const MultiPolygon& q, const MultiPolygon& r, BoolOp op) {
    const auto check = [&](const MultiPolygon& self, const MultiPolygon& other, bool first) {
        for (const auto& v : self.vertices()) {
            const Location lo = classify_point(other, v);
            if (lo == Location::On) continue;
            const bool in_other = lo == Location::In;
            bool keep = false;  // v must be in the closed result
            switch (op) {
                case BoolOp::Union: keep = true; break;
                case BoolOp::Intersect: keep = in_other; break;
                case BoolOp::Diff: keep = first ? !in_other : in_other; break;
            }
            const Location lr = classify_point(r, v);
            if (keep ? lr == Location::Out : lr != Location::Out) return false;
        }
        return true;
    };
    return check(p, q, true) && check(q, p, false);
}

}  // namespace

MultiPolygon boolean_reg(const MultiPolygon& p, const MultiPolygon& q, BoolOp op) {
    switch (op) {
        case BoolOp::Union:
            if (p.empty()) return q;
            if (q.empty()) return p;
            break;
        case BoolOp::Intersect:
            if (p.empty() || q.empty()) return {};
            break;
        case BoolOp::Diff:
            if (p.empty()) return {};
            if (q.empty()) return p;
            break;
    }
    const BMulti a = to_boost(p);
    const BMulti b = to_boost(q);
    if (op != BoolOp::Union) {
        const auto ba = bg::return_envelope<bg::model::box<BPoint>>(a);
        const auto bb = bg::return_envelope<bg::model::box<BPoint>>(b);
        if (bg::disjoint(ba, bb)) return op == BoolOp::Intersect ? MultiPolygon{} : p;
    }
    BMulti out;
    switch (op) {
        case BoolOp::Union: bg::union_(a, b, out); break;
        case BoolOp::Intersect: bg::intersection(a, b, out); break;
        case BoolOp::Diff: bg::difference(a, b, out); break;
    }
    const double pa = bg::area(a), qa = bg::area(b);
    MultiPolygon r = from_boost(out);
    if (!plausible(pa, qa, bg::area(out), op) || !vertices_consistent(p, q, r, op))
        r = from_boost(overlay_rescaled(a, b, op));
    return r;
}

MultiPolygon union_all(std::vector<MultiPolygon> parts) {
    std::erase_if(parts, [](const MultiPolygon& m) { return m.empty(); });
    if (parts.empty()) return {};
    while (parts.size() > 1) {
        std::vector<MultiPolygon> next;
        next.reserve((parts.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
            next.push_back(boolean_reg(parts[i], parts[i + 1], BoolOp::Union));
        if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
        parts = std::move(next);
    }
    return std::move(parts.front());
}

double overlap_area(const MultiPolygon& p, const MultiPolygon& q) {
    return boolean_reg(p, q, BoolOp::Intersect).area();
}

bool contains(const MultiPolygon& p, const MultiPolygon& q, double eps) {
    if (q.empty()) return true;
    const double slack = eps * std::max(1.0, q.perimeter());
    return boolean_reg(q, p, BoolOp::Diff).area() <= slack;
}

MultiPolygon regularize(const MultiPolygon& m) {
    if (m.empty()) return m;
    // Re-union the polygons one by one so overlapping or touching parts merge.
    std::vector<MultiPolygon> parts;
    for (const auto& p : m.polygons()) parts.push_back(normalize(MultiPolygon({p})));
    return union_all(std::move(parts));
}

}  // namespace cspace
