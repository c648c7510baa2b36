#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "cspace/geom.hpp"
#include "cspace/minkowski.hpp"

namespace cspace {

enum class DistanceKind { D1, D2, DSTAR, GAMMA1, GAMMA2, ETA1, ETA2, DELTA1, DELTA2, MU_BA, MU_AB, HAUS };

inline constexpr DistanceKind kAllDistanceKinds[] = {
    DistanceKind::D1,     DistanceKind::D2,     DistanceKind::DSTAR, DistanceKind::GAMMA1,
    DistanceKind::GAMMA2, DistanceKind::ETA1,   DistanceKind::ETA2,  DistanceKind::DELTA1,
    DistanceKind::DELTA2, DistanceKind::MU_BA,  DistanceKind::MU_AB, DistanceKind::HAUS};

const char* to_string(DistanceKind k);
/// DSL spelling: gamma1, eta2, mu, hdir, haus, dstar, ...
const char* dsl_name(DistanceKind k);
std::optional<DistanceKind> distance_from_dsl(std::string_view name);

struct SignedDistance {
    double value = 0.0;
    /// (from, to): the translation from `from` to `to` realizes the value.
    std::optional<std::pair<Point, Point>> witness;
};

struct DistancePair {
    SignedDistance first;
    double second = 0.0;
};

double d1(const MultiPolygon& a, const MultiPolygon& b);
SignedDistance d1_witness(const MultiPolygon& a, const MultiPolygon& b);
double d2(const MultiPolygon& a, const MultiPolygon& b);

/// Arguments are (subject B, reference A) throughout: ω(B, A).
SignedDistance gamma1(const MultiPolygon& b, const MultiPolygon& a);
double gamma2(const MultiPolygon& b, const MultiPolygon& a);
DistancePair eta(const MultiPolygon& b, const MultiPolygon& a);
DistancePair delta(const MultiPolygon& b, const MultiPolygon& a);
/// μ(B, A) = sup over b in B of the signed distance of b to A. Exact up to rounding on B's
/// boundary (breakpoints of the nearest-feature envelope); branch and bound inside A's holes.
SignedDistance mu(const MultiPolygon& b, const MultiPolygon& a);
/// μ(B, A) by bisection on λ over O ∈ M₁(λ), i.e. B ⊂ Γ₁(λ, A).
double mu_bisect(const MultiPolygon& b, const MultiPolygon& a, const DiskConfig& cfg = {}, double tol = 1e-9);
double hausdorff(const MultiPolygon& a, const MultiPolygon& b);
/// d*(A, B): how deep B sits inside A; 0 unless B ⊂ A.
double dstar(const MultiPolygon& a, const MultiPolygon& b);
double penetration_depth(const MultiPolygon& a, const MultiPolygon& b);

// Primitives shared with the family cache.

/// Signed distance from p to the boundary of iA⊕iB̌ given the regularized sum and its
/// degenerate features: a feature is boundary of the open set even inside the closed region.
double obstacle_signed_distance(const MinkResult& co, const Point& p, double eps = kDefaultEps);
/// Largest distance from p to a point of `pts`.
double farthest_distance(std::span<const Point> pts, const Point& p);
/// μ(B + offset, A).
double mu_at(const MultiPolygon& b, const Point& offset, const MultiPolygon& a);

}  // namespace cspace
