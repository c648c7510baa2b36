#include "cspace/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "cspace/error.hpp"

namespace cspace {

const char* to_string(DistanceKind k) {
    switch (k) {
        case DistanceKind::D1: return "D1";
        case DistanceKind::D2: return "D2";
        case DistanceKind::DSTAR: return "DSTAR";
        case DistanceKind::GAMMA1: return "GAMMA1";
        case DistanceKind::GAMMA2: return "GAMMA2";
        case DistanceKind::ETA1: return "ETA1";
        case DistanceKind::ETA2: return "ETA2";
        case DistanceKind::DELTA1: return "DELTA1";
        case DistanceKind::DELTA2: return "DELTA2";
        case DistanceKind::MU_BA: return "MU_BA";
        case DistanceKind::MU_AB: return "MU_AB";
        case DistanceKind::HAUS: return "HAUS";
    }
    return "?";
}

const char* dsl_name(DistanceKind k) {
    switch (k) {
        case DistanceKind::D1: return "d1";
        case DistanceKind::D2: return "d2";
        case DistanceKind::DSTAR: return "dstar";
        case DistanceKind::GAMMA1: return "gamma1";
        case DistanceKind::GAMMA2: return "gamma2";
        case DistanceKind::ETA1: return "eta1";
        case DistanceKind::ETA2: return "eta2";
        case DistanceKind::DELTA1: return "delta1";
        case DistanceKind::DELTA2: return "delta2";
        case DistanceKind::MU_BA: return "mu";
        case DistanceKind::MU_AB: return "hdir";
        case DistanceKind::HAUS: return "haus";
    }
    return "?";
}

std::optional<DistanceKind> distance_from_dsl(std::string_view name) {
    for (auto k : kAllDistanceKinds)
        if (name == dsl_name(k)) return k;
    return std::nullopt;
}

namespace {

void require(const MultiPolygon& m, const char* what) {
    if (m.empty()) throw Error(ErrorCode::EmptyInput, std::string(what) + ": empty input");
}

Point nearest_boundary_point(const MultiPolygon& m, const Point& p) {
    double best = std::numeric_limits<double>::infinity();
    Point out = p;
    m.for_each_edge([&](const Point& a, const Point& b) {
        const Point c = closest_point_on_segment(p, a, b);
        const double d = dist(c, p);
        if (d < best) {
            best = d;
            out = c;
        }
    });
    return out;
}

double raw_sd(const MultiPolygon& a, const Point& q) {
    const double d = boundary_distance(a, q);
    return inside_raw(a, q) ? -d : d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Standard distances

SignedDistance d1_witness(const MultiPolygon& a, const MultiPolygon& b) {
    require(a, "d1");
    require(b, "d1");
    double best = std::numeric_limits<double>::infinity();
    std::pair<Point, Point> w;
    a.for_each_edge([&](const Point& p, const Point& q) {
        b.for_each_edge([&](const Point& r, const Point& s) {
            if (best == 0.0) return;
            const double d = segment_segment_distance(p, q, r, s);
            if (d < best) {
                best = d;
                // Closest pair among the four endpoint projections (exact unless crossing).
                const Point cands[4][2] = {{p, closest_point_on_segment(p, r, s)},
                                           {q, closest_point_on_segment(q, r, s)},
                                           {closest_point_on_segment(r, p, q), r},
                                           {closest_point_on_segment(s, p, q), s}};
                double bd = std::numeric_limits<double>::infinity();
                for (const auto& c : cands)
                    if (dist(c[0], c[1]) < bd) {
                        bd = dist(c[0], c[1]);
                        w = {c[0], c[1]};
                    }
            }
        });
    });
    // One region inside the other without boundary contact.
    const Point pa = a.polygons().front().outer.front();
    const Point pb = b.polygons().front().outer.front();
    if (inside_raw(b, pa)) return {0.0, std::make_pair(pa, pa)};
    if (inside_raw(a, pb)) return {0.0, std::make_pair(pb, pb)};
    return {best, w};
}

double d1(const MultiPolygon& a, const MultiPolygon& b) { return d1_witness(a, b).value; }

double d2(const MultiPolygon& a, const MultiPolygon& b) {
    require(a, "d2");
    require(b, "d2");
    double best = 0.0;
    const auto va = a.vertices();
    const auto vb = b.vertices();
    for (const auto& p : va)
        for (const auto& q : vb) best = std::max(best, dist(p, q));
    return best;
}

// ---------------------------------------------------------------------------
// Region primitives

double obstacle_signed_distance(const MinkResult& co, const Point& p, double eps) {
    double v = signed_distance(co.region, p, eps);
    if (v >= 0.0 || co.degenerate_features.empty()) return v;
    for (const auto& f : co.degenerate_features) {
        const double d = f.is_point() ? dist(p, f.points[0]) : point_segment_distance(p, f.points[0], f.points[1]);
        v = std::max(v, d <= eps ? 0.0 : -d);
    }
    return v;
}

double farthest_distance(std::span<const Point> pts, const Point& p) {
    double best = 0.0;
    for (const auto& v : pts) best = std::max(best, dist(v, p));
    return best;
}

// ---------------------------------------------------------------------------
// Translational distances

SignedDistance gamma1(const MultiPolygon& b, const MultiPolygon& a) {
    require(a, "gamma1");
    require(b, "gamma1");
    const MinkResult co = cspace_obstacle(a, b);
    const Point o{0, 0};
    SignedDistance out{obstacle_signed_distance(co, o), std::nullopt};
    out.witness = std::make_pair(o, nearest_boundary_point(co.region, o));
    return out;
}

double gamma2(const MultiPolygon& b, const MultiPolygon& a) {
    require(a, "gamma2");
    require(b, "gamma2");
    // farthest point of the hull of A ⊕ B̌ from the origin is a vertex difference a - b with
    // both on their hulls; reading it off the pair keeps the value bit-identical to d₂
    const Ring ha = convex_hull(a), hb = convex_hull(b);
    double best = 0.0;
    for (const auto& p : ha)
        for (const auto& q : hb) best = std::max(best, dist(p, q));
    return best;
}

namespace {

DistancePair erosion_pair(const MultiPolygon& base, const char* what) {
    if (base.empty())
        throw Error(ErrorCode::UndefinedErosionEmpty, std::string(what) + ": erosion base is empty");
    const Point o{0, 0};
    DistancePair out;
    out.first.value = signed_distance(base, o);
    out.first.witness = std::make_pair(o, nearest_boundary_point(base, o));
    const Ring hull = convex_hull(base);
    out.second = farthest_distance(hull, o);
    return out;
}

}  // namespace

DistancePair eta(const MultiPolygon& b, const MultiPolygon& a) {
    require(a, "eta");
    require(b, "eta");
    return erosion_pair(erosion(a, reflect(b)), "eta");
}

DistancePair delta(const MultiPolygon& b, const MultiPolygon& a) {
    require(a, "delta");
    require(b, "delta");
    return erosion_pair(erosion(reflect(b), a), "delta");
}

double dstar(const MultiPolygon& a, const MultiPolygon& b) {
    require(a, "dstar");
    require(b, "dstar");
    const MultiPolygon base = erosion(a, reflect(b));
    if (base.empty()) return 0.0;
    return std::max(0.0, -signed_distance(base, {0, 0}));
}

double penetration_depth(const MultiPolygon& a, const MultiPolygon& b) {
    return std::max(0.0, -gamma1(b, a).value);
}

// ---------------------------------------------------------------------------
// Signed directed Hausdorff distance

namespace {

struct Feature {
    bool is_line;
    Point n;   // unit normal (line)
    double k;  // n·x = k (line)
    Point a, b;  // segment endpoints (line) or the point (a)
    double reach;  // distance from the query segment
};

// Max over t in [0,1] of the signed distance of u + t w to A, by enumerating the breakpoints of
// the nearest-feature envelope.
double segment_max(const MultiPolygon& a, const Point& u, const Point& v, Point& arg) {
    const Point w = v - u;
    const double len = norm(w);
    const double fu = raw_sd(a, u), fv = raw_sd(a, v);
    double best = fu;
    arg = u;
    if (fv > best) {
        best = fv;
        arg = v;
    }
    if (len == 0.0) return best;
    const double bound = 0.5 * (std::abs(fu) + std::abs(fv) + len);

    std::vector<Feature> feats;
    a.for_each_edge([&](const Point& c, const Point& d) {
        const double reach = segment_segment_distance(u, v, c, d);
        if (reach > bound) return;
        const Point e = d - c;
        const double l = norm(e);
        if (l == 0.0) return;
        const Point n{-e.y / l, e.x / l};
        feats.push_back({true, n, dot(n, c), c, d, reach});
        feats.push_back({false, {}, 0.0, c, c, point_segment_distance(c, u, v)});
    });

    std::vector<double> ts;
    auto add_t = [&](double t) {
        if (t > 0.0 && t < 1.0) ts.push_back(t);
    };
    // Linear forms along the segment: line value L(t) = s0 + s1 t; point: |u - p + t w|^2.
    for (std::size_t i = 0; i < feats.size(); ++i) {
        const Feature& f = feats[i];
        if (f.is_line) {
            const double s0 = dot(f.n, u) - f.k, s1 = dot(f.n, w);
            if (s1 != 0.0) add_t(-s0 / s1);
        } else {
            add_t(dot(f.a - u, w) / (len * len));
        }
        for (std::size_t j = i + 1; j < feats.size(); ++j) {
            const Feature& g = feats[j];
            if (f.is_line && g.is_line) {
                const double a0 = dot(f.n, u) - f.k, a1 = dot(f.n, w);
                const double b0 = dot(g.n, u) - g.k, b1 = dot(g.n, w);
                if (a1 - b1 != 0.0) add_t((b0 - a0) / (a1 - b1));
                if (a1 + b1 != 0.0) add_t(-(a0 + b0) / (a1 + b1));
            } else if (!f.is_line && !g.is_line) {
                const Point d = g.a - f.a;
                const double den = 2.0 * dot(w, d);
                if (den != 0.0) add_t((dot(g.a, g.a) - dot(f.a, f.a) - 2.0 * dot(u, d)) / den);
            } else {
                const Feature& l = f.is_line ? f : g;
                const Feature& p = f.is_line ? g : f;
                const double s0 = dot(l.n, u) - l.k, s1 = dot(l.n, w);
                const Point r = u - p.a;
                // (s0 + s1 t)^2 = |r + t w|^2
                const double qa = s1 * s1 - len * len, qb = 2.0 * (s0 * s1 - dot(r, w)), qc = s0 * s0 - dot(r, r);
                if (std::abs(qa) < 1e-300) {
                    if (qb != 0.0) add_t(-qc / qb);
                } else {
                    const double disc = qb * qb - 4.0 * qa * qc;
                    if (disc >= 0.0) {
                        const double s = std::sqrt(disc);
                        add_t((-qb + s) / (2.0 * qa));
                        add_t((-qb - s) / (2.0 * qa));
                    }
                }
            }
        }
    }
    for (double t : ts) {
        const Point q = u + w * t;
        const double f = raw_sd(a, q);
        if (f > best) {
            best = f;
            arg = q;
        }
    }
    return best;
}

// Interior maxima of the signed distance only occur inside bounded components of A's complement
// (holes). Branch and bound over the part of each hole's box covered by B.
double hole_max(const MultiPolygon& a, const MultiPolygon& b, const Point& off, double best, Point& arg) {
    const Box bb = b.bbox();
    const Box bo{bb.min + off, bb.max + off};
    for (const auto& poly : a.polygons()) {
        for (const auto& h : poly.holes) {
            Box hb = Box::empty_box();
            for (const auto& v : h) hb.expand(v);
            Box cell{{std::max(hb.min.x, bo.min.x), std::max(hb.min.y, bo.min.y)},
                     {std::min(hb.max.x, bo.max.x), std::min(hb.max.y, bo.max.y)}};
            if (cell.empty()) continue;
            struct Item {
                double ub;
                Box box;
                bool operator<(const Item& o) const { return ub < o.ub; }
            };
            auto make = [&](const Box& c) {
                const Point m = (c.min + c.max) * 0.5;
                const double half = 0.5 * std::hypot(c.width(), c.height());
                const double f = raw_sd(a, m);
                if (inside_raw(b, m - off) && f > best) {
                    best = f;
                    arg = m;
                }
                return Item{f + half, c};
            };
            std::priority_queue<Item> pq;
            pq.push(make(cell));
            int evals = 0;
            while (!pq.empty() && evals < 20000) {
                Item it = pq.top();
                pq.pop();
                if (it.ub <= best + 1e-9) break;
                const Box& c = it.box;
                const Point m = (c.min + c.max) * 0.5;
                const Box kids[4] = {{c.min, m}, {{m.x, c.min.y}, {c.max.x, m.y}}, {{c.min.x, m.y}, {m.x, c.max.y}}, {m, c.max}};
                for (const auto& k : kids) {
                    pq.push(make(k));
                    ++evals;
                }
            }
        }
    }
    return best;
}

}  // namespace

double mu_at(const MultiPolygon& b, const Point& offset, const MultiPolygon& a) {
    require(a, "mu");
    require(b, "mu");
    double best = -std::numeric_limits<double>::infinity();
    Point arg{};
    b.for_each_edge([&](const Point& p, const Point& q) {
        Point at;
        const double v = segment_max(a, p + offset, q + offset, at);
        if (v > best) {
            best = v;
            arg = at;
        }
    });
    return hole_max(a, b, offset, best, arg);
}

SignedDistance mu(const MultiPolygon& b, const MultiPolygon& a) {
    require(a, "mu");
    require(b, "mu");
    double best = -std::numeric_limits<double>::infinity();
    Point arg{};
    b.for_each_edge([&](const Point& p, const Point& q) {
        Point at;
        const double v = segment_max(a, p, q, at);
        if (v > best) {
            best = v;
            arg = at;
        }
    });
    best = hole_max(a, b, {0, 0}, best, arg);
    return {best, std::make_pair(arg, nearest_boundary_point(a, arg))};
}

double mu_bisect(const MultiPolygon& b, const MultiPolygon& a, const DiskConfig& cfg, double tol) {
    require(a, "mu");
    require(b, "mu");
    const Box ab = a.bbox();
    double lo = -0.5 * std::min(ab.width(), ab.height()) - 1e-9;
    double hi = d2(a, b) + 1e-9;
    auto member = [&](double lambda) {
        const MultiPolygon g = lambda >= 0 ? dilate_disk(a, cfg.dilation(lambda)) : erode_disk(a, cfg.erosion(-lambda));
        return !g.empty() && contains_region(g, b);
    };
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (member(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double hausdorff(const MultiPolygon& a, const MultiPolygon& b) {
    return std::max(mu(a, b).value, mu(b, a).value) + 0.0;
}

}  // namespace cspace
