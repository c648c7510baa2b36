#include "cspace/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cspace/error.hpp"

namespace cspace {

const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::GAMMA1_F: return "GAMMA1_F";
        case FamilyKind::GAMMA2_F: return "GAMMA2_F";
        case FamilyKind::H1_F: return "H1_F";
        case FamilyKind::H2_F: return "H2_F";
        case FamilyKind::DELTA1_F: return "DELTA1_F";
        case FamilyKind::DELTA2_F: return "DELTA2_F";
        case FamilyKind::M1_F: return "M1_F";
        case FamilyKind::M2_F: return "M2_F";
        case FamilyKind::M3_F: return "M3_F";
    }
    return "?";
}

FamilyKind family_for(DistanceKind k) {
    switch (k) {
        case DistanceKind::D1:
        case DistanceKind::GAMMA1: return FamilyKind::GAMMA1_F;
        case DistanceKind::D2:
        case DistanceKind::GAMMA2: return FamilyKind::GAMMA2_F;
        case DistanceKind::DSTAR:
        case DistanceKind::ETA1: return FamilyKind::H1_F;
        case DistanceKind::ETA2: return FamilyKind::H2_F;
        case DistanceKind::DELTA1: return FamilyKind::DELTA1_F;
        case DistanceKind::DELTA2: return FamilyKind::DELTA2_F;
        case DistanceKind::MU_BA: return FamilyKind::M1_F;
        case DistanceKind::MU_AB: return FamilyKind::M2_F;
        case DistanceKind::HAUS: return FamilyKind::M3_F;
    }
    return FamilyKind::GAMMA1_F;
}

DistanceKind distance_for(FamilyKind k) {
    switch (k) {
        case FamilyKind::GAMMA1_F: return DistanceKind::GAMMA1;
        case FamilyKind::GAMMA2_F: return DistanceKind::GAMMA2;
        case FamilyKind::H1_F: return DistanceKind::ETA1;
        case FamilyKind::H2_F: return DistanceKind::ETA2;
        case FamilyKind::DELTA1_F: return DistanceKind::DELTA1;
        case FamilyKind::DELTA2_F: return DistanceKind::DELTA2;
        case FamilyKind::M1_F: return DistanceKind::MU_BA;
        case FamilyKind::M2_F: return DistanceKind::MU_AB;
        case FamilyKind::M3_F: return DistanceKind::HAUS;
    }
    return DistanceKind::GAMMA1;
}

BaseKind base_for(FamilyKind k) {
    switch (k) {
        case FamilyKind::H1_F:
        case FamilyKind::H2_F: return BaseKind::Containment;
        case FamilyKind::DELTA1_F:
        case FamilyKind::DELTA2_F: return BaseKind::Covering;
        default: return BaseKind::Obstacle;
    }
}

BaseKind base_for(DistanceKind k) { return base_for(family_for(k)); }

namespace {

std::size_t idx(BaseKind k) { return static_cast<std::size_t>(k); }

const char* base_name(BaseKind k) {
    switch (k) {
        case BaseKind::Obstacle: return "C-space obstacle";
        case BaseKind::Containment: return "containment base A-erosion";
        case BaseKind::Covering: return "covering base B-erosion";
    }
    return "?";
}

// Keep the part of convex CCW `poly` with cross(e, x - a) >= 0 for edge (a, a + e).
Ring clip_left(const Ring& poly, const Point& a, const Point& e) {
    Ring out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& s = poly[i];
        const Point& t = poly[(i + 1) % n];
        const double fs = cross(e, s - a), ft = cross(e, t - a);
        if (fs >= 0) out.push_back(s);
        if ((fs >= 0) != (ft >= 0)) out.push_back(s + (t - s) * (fs / (fs - ft)));
    }
    return out;
}

}  // namespace

FamilyCache::FamilyCache(MultiPolygon a, MultiPolygon b, DiskConfig disk, double eps)
    : a_(std::move(a)), b_(std::move(b)), disk_(disk), eps_(eps) {
    if (a_.empty() || b_.empty()) throw Error(ErrorCode::EmptyInput, "family cache: empty object");
    obstacle_ = cspace_obstacle(a_, b_);
    bases_[idx(BaseKind::Obstacle)] = obstacle_.region;
    bases_[idx(BaseKind::Containment)] = erosion(a_, reflect(b_));
    bases_[idx(BaseKind::Covering)] = erosion(reflect(b_), a_);
    for (std::size_t i = 0; i < 3; ++i) {
        inradius_[i] = std::make_unique<Lazy>();
        if (bases_[i].empty()) continue;
        hulls_[i] = convex_hull(bases_[i]);
        circles_[i] = smallest_enclosing_circle(std::span<const Point>(hulls_[i]));
    }
}

const MultiPolygon& FamilyCache::base(BaseKind k) const { return bases_[idx(k)]; }

const MultiPolygon& FamilyCache::require_base(BaseKind k) const {
    const MultiPolygon& m = bases_[idx(k)];
    if (m.empty())
        throw Error(ErrorCode::UndefinedErosionEmpty, std::string(base_name(k)) + " is empty; distance undefined");
    return m;
}

const Ring& FamilyCache::hull(BaseKind k) const {
    require_base(k);
    return hulls_[idx(k)];
}

const Circle& FamilyCache::enclosing(BaseKind k) const {
    require_base(k);
    return circles_[idx(k)];
}

const InradiusResult& FamilyCache::inradius(BaseKind k) const {
    const MultiPolygon& m = require_base(k);
    Lazy& lazy = *inradius_[idx(k)];
    std::call_once(lazy.once, [&] { lazy.value = cspace::inradius(m); });
    return lazy.value;
}

MultiPolygon FamilyCache::offset(const MultiPolygon& x, double lambda) const {
    if (lambda >= 0) return dilate_disk(x, disk_.dilation(lambda));
    return erode_disk(x, disk_.erosion(-lambda));
}

MultiPolygon FamilyCache::disk_intersection(const Ring& centers, double lambda) const {
    if (lambda <= 0 || centers.empty()) return {};
    const Ring disk = disk_.dilation(lambda).polygon();
    Ring poly;
    for (const auto& v : disk) poly.push_back(v + centers[0]);
    for (std::size_t c = 1; c < centers.size() && poly.size() >= 3; ++c) {
        for (std::size_t i = 0; i < disk.size() && poly.size() >= 3; ++i) {
            const Point a = disk[i] + centers[c];
            const Point e = disk[(i + 1) % disk.size()] - disk[i];
            poly = clip_left(poly, a, e);
        }
    }
    if (poly.size() < 3) return {};
    return normalize(MultiPolygon::from_ring(std::move(poly)), eps_);
}

FamilySlice FamilyCache::slice(FamilyKind k, double lambda) const {
    FamilySlice s;
    s.kind = k;
    s.lambda = lambda;
    s.error_bound = disk_.error_bound(lambda);
    switch (k) {
        case FamilyKind::M1_F:
        case FamilyKind::M2_F:
        case FamilyKind::M3_F: {
            MultiPolygon m1, m2;
            if (k != FamilyKind::M2_F) {
                const MultiPolygon g = offset(a_, lambda);
                if (k == FamilyKind::M1_F) s.base_region = g;
                if (!g.empty()) m1 = erosion(g, reflect(b_));
            }
            if (k != FamilyKind::M1_F) {
                const MultiPolygon g = offset(reflect(b_), lambda);
                if (k == FamilyKind::M2_F) s.base_region = g;
                if (!g.empty()) m2 = erosion(g, a_);
            }
            if (k == FamilyKind::M1_F)
                s.region = std::move(m1);
            else if (k == FamilyKind::M2_F)
                s.region = std::move(m2);
            else
                s.region = boolean_reg(m1, m2, BoolOp::Intersect);
            s.r_base = std::numeric_limits<double>::quiet_NaN();
            s.R_base = std::numeric_limits<double>::quiet_NaN();
            return s;
        }
        default: break;
    }

    const BaseKind bk = base_for(k);
    const MultiPolygon& base = require_base(bk);
    s.base_region = base;
    s.R_base = circles_[idx(bk)].radius;
    s.center = circles_[idx(bk)].center;
    const InradiusResult& ir = inradius(bk);
    s.r_base = ir.radius;

    const bool second = k == FamilyKind::GAMMA2_F || k == FamilyKind::H2_F || k == FamilyKind::DELTA2_F;
    if (!second) {
        if (lambda > 0) {
            s.region = dilate_disk(base, disk_.dilation(lambda));
        } else if (lambda < 0) {
            const auto feats = bk == BaseKind::Obstacle ? std::span<const DegenerateFeature>(obstacle_.degenerate_features)
                                                        : std::span<const DegenerateFeature>();
            s.region = erode_disk(base, disk_.erosion(-lambda), feats);
        } else {
            s.region = base;
            if (bk == BaseKind::Obstacle) s.features = obstacle_.degenerate_features;
        }
        return s;
    }
    const Box bb = base.bbox();
    const double scale = std::max({1.0, bb.width(), bb.height()});
    s.region = disk_intersection(hulls_[idx(bk)], lambda);
    if (s.region.empty() && lambda >= s.R_base - 1e-9 * scale) s.features.push_back({{s.center}});
    return s;
}

double FamilyCache::extreme_lambda(DistanceKind k) const {
    switch (k) {
        case DistanceKind::D1:
        case DistanceKind::DSTAR: return 0.0;
        case DistanceKind::GAMMA1:
        case DistanceKind::ETA1:
        case DistanceKind::DELTA1: return -inradius(base_for(k)).radius;
        case DistanceKind::D2:
        case DistanceKind::GAMMA2:
        case DistanceKind::ETA2:
        case DistanceKind::DELTA2: return enclosing(base_for(k)).radius;
        default: break;
    }
    // μ families: bisection on emptiness of the slice.
    const Box ba = a_.bbox(), bb = b_.bbox();
    double lo = -0.5 * std::max(std::min(ba.width(), ba.height()), std::min(bb.width(), bb.height())) - 1e-9;
    double hi = distance_at(k, {0, 0});
    const double scale = std::max({1.0, ba.width(), ba.height(), bb.width(), bb.height()});
    const FamilyKind fk = family_for(k);
    for (int it = 0; it < 60 && hi - lo > 1e-7 * scale; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (slice(fk, mid).region.empty())
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double FamilyCache::distance_at(DistanceKind k, const Point& p) const {
    switch (k) {
        case DistanceKind::D1: return std::max(0.0, obstacle_signed_distance(obstacle_, p, eps_));
        case DistanceKind::D2:
        case DistanceKind::GAMMA2: return farthest_distance(hull(BaseKind::Obstacle), p);
        case DistanceKind::GAMMA1: return obstacle_signed_distance(obstacle_, p, eps_);
        case DistanceKind::ETA1: return signed_distance(require_base(BaseKind::Containment), p, eps_);
        case DistanceKind::ETA2: return farthest_distance(hull(BaseKind::Containment), p);
        case DistanceKind::DELTA1: return signed_distance(require_base(BaseKind::Covering), p, eps_);
        case DistanceKind::DELTA2: return farthest_distance(hull(BaseKind::Covering), p);
        case DistanceKind::DSTAR: {
            const MultiPolygon& ci = base(BaseKind::Containment);
            if (ci.empty()) return 0.0;
            return std::max(0.0, -signed_distance(ci, p, eps_));
        }
        case DistanceKind::MU_BA: return mu_at(b_, p, a_);
        case DistanceKind::MU_AB: return mu_at(a_, -p, b_);
        case DistanceKind::HAUS: return std::max(mu_at(b_, p, a_), mu_at(a_, -p, b_));
    }
    return 0.0;
}

}  // namespace cspace
