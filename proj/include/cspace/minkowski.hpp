#pragma once

#include <span>
#include <vector>

#include "cspace/error.hpp"
#include "cspace/geom.hpp"

namespace cspace {

enum class DiskMode { Inscribed, Circumscribed };

/// Regular n-gon standing in for the ball of radius `radius` centred at the origin.
/// Inscribed: vertices on the circle (first vertex on +x). Circumscribed: edge midpoints on
/// the circle (first edge facing +x), so both variants are exact along the coordinate axes
/// when n is a multiple of 4.
struct ApproxDisk {
    double radius = 0.0;
    int segments = 64;
    DiskMode mode = DiskMode::Inscribed;

    Ring polygon() const;
    /// radius * (1 - cos(pi/n)): sagitta of one chord.
    double chord_error() const;
    /// Largest radial gap between the n-gon boundary and the true circle, for either mode.
    double error_bound() const;
};

struct DiskConfig {
    int segments = 64;
    DiskMode dilate_mode = DiskMode::Inscribed;
    DiskMode erode_mode = DiskMode::Circumscribed;

    ApproxDisk dilation(double r) const { return {r, segments, dilate_mode}; }
    ApproxDisk erosion(double r) const { return {r, segments, erode_mode}; }
    /// error_bound() for a disk of radius |r| in whichever mode is worse.
    double error_bound(double r) const;
};

/// A lower-dimensional piece of the outer envelope: a segment (2 points) or an isolated point.
struct DegenerateFeature {
    std::vector<Point> points;

    bool is_point() const { return points.size() == 1; }
};

struct MinkResult {
    MultiPolygon region;
    std::vector<DegenerateFeature> degenerate_features;
};

/// Decomposes a region into convex pieces: vertical-slab trapezoids, greedily merged along x
/// while the merged piece stays convex. Convex single-ring inputs come back unchanged.
std::vector<Ring> convex_decomposition(const MultiPolygon& m);

/// Minkowski sum of two convex CCW rings by edge-angle merge. Rings with fewer than three
/// vertices (points, segments) are summed through the hull of pairwise sums.
Ring convex_sum(const Ring& p, const Ring& q);

/// A ⊕ B with outer-envelope bookkeeping.
MinkResult mink_sum(const MultiPolygon& a, const MultiPolygon& b);
MinkResult mink_sum(const MultiPolygon& a, const Point& b);
/// A ⊕ B region only (no degenerate feature detection).
MultiPolygon mink_sum_region(const MultiPolygon& a, const MultiPolygon& b);

/// A ⊖ B = ⋂_{b∈B} (A + b), computed through the complement inside a working box.
/// Segments in `blockers` are treated as removed from A (outer-envelope features).
MultiPolygon erosion(const MultiPolygon& a, const MultiPolygon& b,
                     std::span<const DegenerateFeature> blockers = {});

MultiPolygon dilate_disk(const MultiPolygon& a, const ApproxDisk& d);
MultiPolygon erode_disk(const MultiPolygon& a, const ApproxDisk& d,
                        std::span<const DegenerateFeature> blockers = {});

/// CO_B(A) = A ⊕ B̌: translations p of B with (B + p) ∩ A ≠ ∅.
MinkResult cspace_obstacle(const MultiPolygon& a, const MultiPolygon& b);

/// Whether the interiors of two regions overlap by more than a slack area.
bool interiors_overlap(const MultiPolygon& a, const MultiPolygon& b, double eps = kDefaultEps);

}  // namespace cspace
