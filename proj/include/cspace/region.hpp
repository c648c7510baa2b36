#pragma once

#include <string>
#include <vector>

#include "cspace/geom.hpp"

namespace cspace {

enum class Flag { Included, Excluded, Ambiguous };
enum class Membership { Member, NonMember, BoundaryAmbiguous };

const char* to_string(Flag f);
const char* to_string(Membership m);

struct FlaggedSegment {
    Point a, b;
    Flag flag = Flag::Included;
};

struct FlaggedPoint {
    Point p;
    Flag flag = Flag::Included;
};

/// A possibly non-regular planar set inside a window. `area` is the closure of the 2D part.
/// `segments` carry membership for the area boundary (Included/Excluded per piece), for slits
/// removed from the area interior (Excluded), and for free curve features outside the area
/// (Included). `points` override membership at single locations (vertices, isolated points).
struct RegionNR {
    MultiPolygon area;
    std::vector<FlaggedSegment> segments;
    std::vector<FlaggedPoint> points;
    Box window = Box::empty_box();

    static RegionNR empty(const Box& window);
    static RegionNR full(const Box& window);
    static RegionNR closed(MultiPolygon area, const Box& window);
    static RegionNR open(MultiPolygon area, const Box& window);
    /// Included polylines and points, no area.
    static RegionNR curves(const std::vector<std::vector<Point>>& polylines, const std::vector<Point>& pts,
                           const Box& window);

    /// No area and nothing Included.
    bool is_empty() const;
    /// Included segments lying outside the area (dangling curves).
    std::vector<FlaggedSegment> free_features(double eps = kDefaultEps) const;
};

Membership nr_classify(const RegionNR& r, const Point& p, double eps = kDefaultEps);

RegionNR nr_union(const RegionNR& r, const RegionNR& s, double eps = kDefaultEps);
RegionNR nr_intersect(const RegionNR& r, const RegionNR& s, double eps = kDefaultEps);
RegionNR nr_complement(const RegionNR& r, double eps = kDefaultEps);
RegionNR nr_difference(const RegionNR& r, const RegionNR& s, double eps = kDefaultEps);
RegionNR nr_interior(const RegionNR& r, double eps = kDefaultEps);
RegionNR nr_closure(const RegionNR& r, double eps = kDefaultEps);
RegionNR nr_boundary(const RegionNR& r, double eps = kDefaultEps);
MultiPolygon nr_regularize(const RegionNR& r);

struct CurveIntersection {
    std::vector<Point> points;
    /// Set when the curves share a collinear stretch; its endpoints are reported as points.
    bool degenerate_overlap = false;
    std::vector<std::string> diagnostics;
};

/// Intersection points of the curve sets (all segments) of two regions, deduplicated at eps.
CurveIntersection nr_curve_intersect(const RegionNR& r, const RegionNR& s, double eps = kDefaultEps);

/// Connected components of the member set: area polygons, Included free curves and isolated
/// Included points, joined when they touch.
std::size_t component_count(const RegionNR& r, double eps = kDefaultEps);

}  // namespace cspace
