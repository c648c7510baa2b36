#include "cspace/region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace cspace {

const char* to_string(Flag f) {
    switch (f) {
        case Flag::Included: return "INCLUDED";
        case Flag::Excluded: return "EXCLUDED";
        case Flag::Ambiguous: return "AMBIGUOUS";
    }
    return "?";
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::Member: return "MEMBER";
        case Membership::NonMember: return "NON_MEMBER";
        case Membership::BoundaryAmbiguous: return "AMBIGUOUS";
    }
    return "?";
}

namespace {

Membership of(Flag f) {
    switch (f) {
        case Flag::Included: return Membership::Member;
        case Flag::Excluded: return Membership::NonMember;
        default: return Membership::BoundaryAmbiguous;
    }
}

Flag flag_of(Membership m) {
    switch (m) {
        case Membership::Member: return Flag::Included;
        case Membership::NonMember: return Flag::Excluded;
        default: return Flag::Ambiguous;
    }
}

Flag flip(Flag f) {
    if (f == Flag::Included) return Flag::Excluded;
    if (f == Flag::Excluded) return Flag::Included;
    return f;
}

// Kleene three-valued logic.
Membership k_and(Membership a, Membership b) {
    if (a == Membership::NonMember || b == Membership::NonMember) return Membership::NonMember;
    if (a == Membership::Member && b == Membership::Member) return Membership::Member;
    return Membership::BoundaryAmbiguous;
}

Membership k_or(Membership a, Membership b) {
    if (a == Membership::Member || b == Membership::Member) return Membership::Member;
    if (a == Membership::NonMember && b == Membership::NonMember) return Membership::NonMember;
    return Membership::BoundaryAmbiguous;
}

Membership k_not(Membership a) {
    if (a == Membership::Member) return Membership::NonMember;
    if (a == Membership::NonMember) return Membership::Member;
    return a;
}

struct Seg {
    Point a, b;
};

Box seg_box(const Point& a, const Point& b, double eps) {
    return Box{{std::min(a.x, b.x), std::min(a.y, b.y)}, {std::max(a.x, b.x), std::max(a.y, b.y)}}.inflated(eps);
}

bool boxes_meet(const Box& p, const Box& q) {
    return p.min.x <= q.max.x && q.min.x <= p.max.x && p.min.y <= q.max.y && q.min.y <= p.max.y;
}

// Parameters on ab where cd touches or crosses it, strictly inside (eps, len - eps).
void split_params(const Point& a, const Point& b, const Point& c, const Point& d, double eps, std::vector<double>& ts) {
    const Point ab = b - a;
    const double l2 = dot(ab, ab);
    if (l2 <= 0) return;
    const double len = std::sqrt(l2);
    auto push = [&](double t) {
        if (t * len > eps && (1 - t) * len > eps) ts.push_back(t);
    };
    for (const Point& v : {c, d})
        if (point_segment_distance(v, a, b) <= eps) push(dot(v - a, ab) / l2);
    const Point cd = d - c;
    const double lc = norm(cd);
    if (lc <= 0) return;
    const double sa = cross(cd, a - c) / lc, sb = cross(cd, b - c) / lc;
    const double sc = cross(ab, c - a) / len, sd = cross(ab, d - a) / len;
    if (((sa > eps && sb < -eps) || (sa < -eps && sb > eps)) && ((sc > eps && sd < -eps) || (sc < -eps && sd > eps)))
        push(sa / (sa - sb));
}

std::vector<Seg> area_edges(const MultiPolygon& m) {
    std::vector<Seg> out;
    m.for_each_edge([&](const Point& a, const Point& b) { out.push_back({a, b}); });
    return out;
}

// Split every segment at its contacts with all others, drop pieces shorter than eps, dedupe.
std::vector<Seg> overlay(const std::vector<Seg>& in, double eps) {
    const std::size_t n = in.size();
    std::vector<Box> boxes(n);
    for (std::size_t i = 0; i < n; ++i) boxes[i] = seg_box(in[i].a, in[i].b, eps);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return boxes[i].min.x < boxes[j].min.x; });

    std::vector<std::vector<double>> ts(n);
    for (std::size_t oi = 0; oi < n; ++oi) {
        const std::size_t i = order[oi];
        for (std::size_t oj = oi + 1; oj < n; ++oj) {
            const std::size_t j = order[oj];
            if (boxes[j].min.x > boxes[i].max.x) break;
            if (!boxes_meet(boxes[i], boxes[j])) continue;
            split_params(in[i].a, in[i].b, in[j].a, in[j].b, eps, ts[i]);
            split_params(in[j].a, in[j].b, in[i].a, in[i].b, eps, ts[j]);
        }
    }

    std::vector<Seg> pieces;
    for (std::size_t i = 0; i < n; ++i) {
        auto& t = ts[i];
        t.push_back(0.0);
        t.push_back(1.0);
        std::sort(t.begin(), t.end());
        const Point a = in[i].a, ab = in[i].b - in[i].a;
        Point prev = a;
        for (std::size_t k = 1; k < t.size(); ++k) {
            const Point q = k + 1 == t.size() ? in[i].b : a + ab * t[k];
            if (dist(prev, q) <= eps) continue;
            Seg s{prev, q};
            if (std::tie(s.b.x, s.b.y) < std::tie(s.a.x, s.a.y)) std::swap(s.a, s.b);
            pieces.push_back(s);
            prev = q;
        }
    }

    std::sort(pieces.begin(), pieces.end(), [](const Seg& p, const Seg& q) { return p.a.x < q.a.x; });
    std::vector<Seg> out;
    std::vector<char> dead(pieces.size(), 0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (dead[i]) continue;
        for (std::size_t j = i + 1; j < pieces.size() && pieces[j].a.x - pieces[i].a.x <= eps; ++j)
            if (!dead[j] && dist(pieces[i].a, pieces[j].a) <= eps && dist(pieces[i].b, pieces[j].b) <= eps) dead[j] = 1;
        out.push_back(pieces[i]);
    }
    return out;
}

// Collinear runs of equal flag sharing an endpoint are joined; keeps overlays from fragmenting.
std::vector<FlaggedSegment> merge_runs(std::vector<FlaggedSegment> segs, double eps) {
    std::sort(segs.begin(), segs.end(), [](const auto& p, const auto& q) { return p.a.x < q.a.x; });
    const std::size_t n = segs.size();
    std::vector<char> dead(n, 0);
    std::vector<double> ax(n);
    for (std::size_t i = 0; i < n; ++i) ax[i] = segs[i].a.x;
    for (std::size_t i = 0; i < n; ++i) {
        if (dead[i]) continue;
        bool grew = true;
        while (grew) {
            grew = false;
            const Point end = segs[i].b;
            auto j0 = std::lower_bound(ax.begin(), ax.end(), end.x - eps) - ax.begin();
            for (auto j = static_cast<std::size_t>(j0); j < n && ax[j] <= end.x + eps; ++j) {
                if (j == i || dead[j] || segs[j].flag != segs[i].flag || dist(end, segs[j].a) > eps) continue;
                if (dot(end - segs[i].a, segs[j].b - segs[j].a) <= 0) continue;
                if (point_segment_distance(end, segs[i].a, segs[j].b) > 0.1 * eps) continue;
                segs[i].b = segs[j].b;
                dead[j] = 1;
                grew = true;
                break;
            }
        }
    }
    std::vector<FlaggedSegment> kept;
    for (std::size_t i = 0; i < n; ++i)
        if (!dead[i]) kept.push_back(segs[i]);
    return kept;
}

Membership classify_parts(const std::vector<FlaggedSegment>& segs, const std::vector<FlaggedPoint>& pts,
                          const MultiPolygon& area, const Point& p, double eps) {
    bool any = false;
    Flag f = Flag::Included;
    auto note = [&](Flag g) {
        if (!any) {
            f = g;
            any = true;
        } else if (f != g) {
            f = Flag::Ambiguous;
        }
    };
    for (const auto& q : pts)
        if (dist(q.p, p) <= eps) note(q.flag);
    if (any) return of(f);
    for (const auto& s : segs) {
        if (std::min(s.a.x, s.b.x) - eps > p.x || std::max(s.a.x, s.b.x) + eps < p.x) continue;
        if (std::min(s.a.y, s.b.y) - eps > p.y || std::max(s.a.y, s.b.y) + eps < p.y) continue;
        if (point_segment_distance(p, s.a, s.b) <= eps) note(s.flag);
    }
    if (any) return of(f);
    if (area.empty()) return Membership::NonMember;
    return classify_point(area, p, eps) == Location::Out ? Membership::NonMember : Membership::Member;
}

enum class Op { Union, Intersect };

RegionNR combine(const RegionNR& r, const RegionNR& s, Op op, double eps) {
    RegionNR out;
    out.window = r.window;
    out.window.expand(s.window);
    out.area = boolean_reg(r.area, s.area, op == Op::Union ? BoolOp::Union : BoolOp::Intersect);

    auto eval = [&](const Point& p) {
        const Membership mr = nr_classify(r, p, eps), ms = nr_classify(s, p, eps);
        return op == Op::Union ? k_or(mr, ms) : k_and(mr, ms);
    };

    std::vector<Seg> cand;
    for (const RegionNR* x : {&r, &s}) {
        for (const auto& g : x->segments) cand.push_back({g.a, g.b});
        for (const auto& e : area_edges(x->area)) cand.push_back(e);
    }
    for (const auto& e : area_edges(out.area)) cand.push_back(e);
    const std::vector<Seg> pieces = overlay(cand, eps);

    for (const auto& pc : pieces) {
        const Point m = (pc.a + pc.b) * 0.5;
        const Membership v = eval(m);
        const Location loc = out.area.empty() ? Location::Out : classify_point(out.area, m, eps);
        bool keep = loc == Location::On || (loc == Location::In && v != Membership::Member) ||
                    (loc == Location::Out && v != Membership::NonMember);
        if (keep) out.segments.push_back({pc.a, pc.b, flag_of(v)});
    }
    out.segments = merge_runs(std::move(out.segments), eps);

    // Vertices whose membership is not what the segments and area imply.
    std::vector<Point> verts;
    for (const auto& pc : pieces) {
        verts.push_back(pc.a);
        verts.push_back(pc.b);
    }
    for (const RegionNR* x : {&r, &s})
        for (const auto& q : x->points) verts.push_back(q.p);
    std::sort(verts.begin(), verts.end(), [](const Point& p, const Point& q) { return std::tie(p.x, p.y) < std::tie(q.x, q.y); });
    std::vector<Point> uniq;
    for (const auto& v : verts) {
        bool dup = false;
        for (std::size_t k = uniq.size(); k-- > 0 && v.x - uniq[k].x <= eps;)
            if (dist(uniq[k], v) <= eps) {
                dup = true;
                break;
            }
        if (!dup) uniq.push_back(v);
    }
    for (const auto& v : uniq) {
        const Membership want = eval(v);
        if (classify_parts(out.segments, {}, out.area, v, eps) != want) out.points.push_back({v, flag_of(want)});
    }
    return out;
}

Location locate(const MultiPolygon& area, const Point& p, double eps) {
    return area.empty() ? Location::Out : classify_point(area, p, eps);
}

}  // namespace

RegionNR RegionNR::empty(const Box& window) {
    RegionNR r;
    r.window = window;
    return r;
}

RegionNR RegionNR::full(const Box& window) {
    return closed(MultiPolygon::box(window.min.x, window.min.y, window.max.x, window.max.y), window);
}

RegionNR RegionNR::closed(MultiPolygon area, const Box& window) {
    RegionNR r;
    r.window = window;
    r.area = std::move(area);
    r.area.for_each_edge([&](const Point& a, const Point& b) { r.segments.push_back({a, b, Flag::Included}); });
    return r;
}

RegionNR RegionNR::open(MultiPolygon area, const Box& window) {
    RegionNR r;
    r.window = window;
    r.area = std::move(area);
    r.area.for_each_edge([&](const Point& a, const Point& b) { r.segments.push_back({a, b, Flag::Excluded}); });
    return r;
}

RegionNR RegionNR::curves(const std::vector<std::vector<Point>>& polylines, const std::vector<Point>& pts,
                          const Box& window) {
    RegionNR r;
    r.window = window;
    for (const auto& pl : polylines) {
        if (pl.size() == 1) r.points.push_back({pl[0], Flag::Included});
        for (std::size_t i = 0; i + 1 < pl.size(); ++i) r.segments.push_back({pl[i], pl[i + 1], Flag::Included});
    }
    for (const auto& p : pts) r.points.push_back({p, Flag::Included});
    return r;
}

bool RegionNR::is_empty() const {
    if (!area.empty()) return false;
    for (const auto& s : segments)
        if (s.flag == Flag::Included) return false;
    for (const auto& p : points)
        if (p.flag == Flag::Included) return false;
    return true;
}

std::vector<FlaggedSegment> RegionNR::free_features(double eps) const {
    std::vector<FlaggedSegment> out;
    for (const auto& s : segments)
        if (s.flag == Flag::Included && locate(area, (s.a + s.b) * 0.5, eps) == Location::Out) out.push_back(s);
    return out;
}

Membership nr_classify(const RegionNR& r, const Point& p, double eps) {
    return classify_parts(r.segments, r.points, r.area, p, eps);
}

RegionNR nr_union(const RegionNR& r, const RegionNR& s, double eps) { return combine(r, s, Op::Union, eps); }

RegionNR nr_intersect(const RegionNR& r, const RegionNR& s, double eps) { return combine(r, s, Op::Intersect, eps); }

RegionNR nr_complement(const RegionNR& r, double eps) {
    RegionNR out;
    out.window = r.window;
    const Box& w = r.window;
    out.area = boolean_reg(MultiPolygon::box(w.min.x, w.min.y, w.max.x, w.max.y), r.area, BoolOp::Diff);
    for (const auto& s : r.segments) out.segments.push_back({s.a, s.b, flip(s.flag)});
    for (const auto& p : r.points) out.points.push_back({p.p, flip(p.flag)});
    // Area edges without a flag of their own (window sides) take the complemented membership.
    out.area.for_each_edge([&](const Point& a, const Point& b) {
        const Point m = (a + b) * 0.5;
        for (const auto& s : r.segments)
            if (point_segment_distance(m, s.a, s.b) <= eps) return;
        out.segments.push_back({a, b, flag_of(k_not(nr_classify(r, m, eps)))});
    });
    // Points of r implied by its area alone flip as well.
    std::vector<FlaggedPoint> extra;
    for (const auto& s : out.segments)
        for (const Point& v : {s.a, s.b}) {
            const Membership want = k_not(nr_classify(r, v, eps));
            if (nr_classify(out, v, eps) != want) extra.push_back({v, flag_of(want)});
        }
    for (const auto& p : extra) out.points.push_back(p);
    return out;
}

RegionNR nr_difference(const RegionNR& r, const RegionNR& s, double eps) {
    return nr_intersect(r, nr_complement(s, eps), eps);
}

RegionNR nr_interior(const RegionNR& r, double eps) {
    RegionNR out;
    out.window = r.window;
    out.area = r.area;
    for (const auto& s : r.segments)
        if (locate(r.area, (s.a + s.b) * 0.5, eps) != Location::Out) out.segments.push_back({s.a, s.b, Flag::Excluded});
    out.area.for_each_edge([&](const Point& a, const Point& b) {
        const Point m = (a + b) * 0.5;
        for (const auto& s : out.segments)
            if (point_segment_distance(m, s.a, s.b) <= eps) return;
        out.segments.push_back({a, b, Flag::Excluded});
    });
    for (const auto& p : r.points)
        if (locate(r.area, p.p, eps) != Location::Out) out.points.push_back({p.p, Flag::Excluded});
    return out;
}

RegionNR nr_closure(const RegionNR& r, double eps) {
    RegionNR out;
    out.window = r.window;
    out.area = r.area;
    out.area.for_each_edge([&](const Point& a, const Point& b) { out.segments.push_back({a, b, Flag::Included}); });
    for (const auto& s : r.segments)
        if (s.flag != Flag::Excluded && locate(r.area, (s.a + s.b) * 0.5, eps) == Location::Out)
            out.segments.push_back({s.a, s.b, Flag::Included});
    for (const auto& p : r.points)
        if (p.flag != Flag::Excluded && locate(r.area, p.p, eps) == Location::Out) out.points.push_back({p.p, Flag::Included});
    return out;
}

RegionNR nr_boundary(const RegionNR& r, double eps) {
    RegionNR out;
    out.window = r.window;
    out.area.polygons().clear();
    r.area.for_each_edge([&](const Point& a, const Point& b) { out.segments.push_back({a, b, Flag::Included}); });
    for (const auto& s : r.segments) {
        const Location loc = locate(r.area, (s.a + s.b) * 0.5, eps);
        if (loc == Location::On) continue;
        if (loc == Location::In || s.flag != Flag::Excluded) out.segments.push_back({s.a, s.b, Flag::Included});
    }
    for (const auto& p : r.points) {
        const Location loc = locate(r.area, p.p, eps);
        if (loc == Location::In || (loc == Location::Out && p.flag != Flag::Excluded))
            out.points.push_back({p.p, Flag::Included});
    }
    return out;
}

MultiPolygon nr_regularize(const RegionNR& r) { return regularize(r.area); }

CurveIntersection nr_curve_intersect(const RegionNR& r, const RegionNR& s, double eps) {
    CurveIntersection out;
    auto add = [&](const Point& p) {
        for (const auto& q : out.points)
            if (dist(p, q) <= eps) return;
        out.points.push_back(p);
    };
    for (const auto& g : r.segments) {
        const Box bg = seg_box(g.a, g.b, eps);
        for (const auto& h : s.segments) {
            if (!boxes_meet(bg, seg_box(h.a, h.b, eps))) continue;
            if (segment_segment_distance(g.a, g.b, h.a, h.b) > eps) continue;
            const Point u = g.b - g.a, v = h.b - h.a;
            const double lu = norm(u), lv = norm(v);
            const bool parallel = std::abs(cross(u, v)) <= eps * std::max(lu, lv);
            if (parallel && lu > 0 && lv > 0) {
                // Overlap along a shared line: report the extent if it has positive length.
                const Point d = u * (1.0 / lu);
                double t0 = 0, t1 = lu;
                const double h0 = dot(h.a - g.a, d), h1 = dot(h.b - g.a, d);
                t0 = std::max(t0, std::min(h0, h1));
                t1 = std::min(t1, std::max(h0, h1));
                if (t1 - t0 > eps && point_segment_distance(h.a, g.a - d * 1e6, g.b + d * 1e6) <= eps) {
                    if (!out.degenerate_overlap) out.diagnostics.push_back("DEGENERATE_OVERLAP: curves share a collinear stretch");
                    out.degenerate_overlap = true;
                    add(g.a + d * t0);
                    add(g.a + d * t1);
                    continue;
                }
            }
            const double den = cross(u, v);
            if (std::abs(den) > 0) {
                const double t = std::clamp(cross(h.a - g.a, v) / den, 0.0, 1.0);
                add(g.a + u * t);
            } else {
                add(closest_point_on_segment(h.a, g.a, g.b));
            }
        }
    }
    for (const auto& p : r.points)
        for (const auto& h : s.segments)
            if (point_segment_distance(p.p, h.a, h.b) <= eps) add(p.p);
    for (const auto& p : s.points) {
        for (const auto& g : r.segments)
            if (point_segment_distance(p.p, g.a, g.b) <= eps) add(p.p);
        for (const auto& q : r.points)
            if (dist(p.p, q.p) <= eps) add(p.p);
    }
    return out;
}

std::size_t component_count(const RegionNR& r, double eps) {
    // Nodes: polygons, then Included free segments, then Included isolated points.
    const auto& polys = r.area.polygons();
    std::vector<MultiPolygon> pm;
    for (const auto& p : polys) pm.emplace_back(std::vector<Polygon>{p});
    std::vector<FlaggedSegment> segs = r.free_features(eps);
    std::vector<Point> pts;
    for (const auto& p : r.points)
        if (p.flag == Flag::Included && locate(r.area, p.p, eps) == Location::Out) pts.push_back(p.p);

    const std::size_t np = pm.size(), ns = segs.size(), n = np + ns + pts.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    // Polygons that touch: share a boundary point not excluded from the set.
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = i + 1; j < np; ++j) {
            bool touch = false;
            pm[i].for_each_edge([&](const Point& a, const Point& b) {
                if (touch) return;
                pm[j].for_each_edge([&](const Point& c, const Point& d) {
                    if (!touch && segment_segment_distance(a, b, c, d) <= eps) touch = true;
                });
            });
            if (touch) unite(i, j);
        }
    auto seg_meets_poly = [&](const FlaggedSegment& s, const MultiPolygon& m) {
        if (classify_point(m, s.a, eps) != Location::Out || classify_point(m, s.b, eps) != Location::Out) return true;
        bool hit = false;
        m.for_each_edge([&](const Point& a, const Point& b) {
            if (!hit && segment_segment_distance(a, b, s.a, s.b) <= eps) hit = true;
        });
        return hit;
    };
    for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t j = 0; j < np; ++j)
            if (seg_meets_poly(segs[i], pm[j])) unite(np + i, j);
        for (std::size_t j = i + 1; j < ns; ++j)
            if (segment_segment_distance(segs[i].a, segs[i].b, segs[j].a, segs[j].b) <= eps) unite(np + i, np + j);
    }
    for (std::size_t k = 0; k < pts.size(); ++k)
        for (std::size_t i = 0; i < ns; ++i)
            if (point_segment_distance(pts[k], segs[i].a, segs[i].b) <= eps) unite(np + ns + k, np + i);

    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (find(i) == i) ++count;
    return count;
}

}  // namespace cspace
