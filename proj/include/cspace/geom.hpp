#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace cspace {

/// Default welding / ON-classification / regularization tolerance, in scene units.
inline constexpr double kDefaultEps = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator-() const { return {-x, -y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
    bool operator==(const Point&) const = default;
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& a) { return std::hypot(a.x, a.y); }
inline double dist(const Point& a, const Point& b) { return norm(a - b); }
/// Twice the signed area of triangle abc; positive when counter-clockwise.
inline double orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }

double point_segment_distance(const Point& p, const Point& a, const Point& b);
Point closest_point_on_segment(const Point& p, const Point& a, const Point& b);
double segment_segment_distance(const Point& a, const Point& b, const Point& c, const Point& d);

struct Box {
    Point min{0.0, 0.0};
    Point max{0.0, 0.0};

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    bool empty() const { return max.x < min.x || max.y < min.y; }
    Box inflated(double d) const { return {{min.x - d, min.y - d}, {max.x + d, max.y + d}}; }
    bool contains(const Point& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    void expand(const Point& p);
    void expand(const Box& b);
    static Box empty_box();
};

/// Closed polyline without repeated closing vertex. Outer rings are CCW, holes CW.
using Ring = std::vector<Point>;

double signed_area(std::span<const Point> ring);
bool is_convex(std::span<const Point> ring, double eps = kDefaultEps);
/// True when no two non-adjacent edges touch and adjacent edges only share their vertex.
bool is_simple(std::span<const Point> ring, double eps = kDefaultEps);

struct Polygon {
    Ring outer;
    std::vector<Ring> holes;
};

/// A closed regular planar region: a set of polygons with holes, pairwise interior-disjoint.
class MultiPolygon {
public:
    MultiPolygon() = default;
    explicit MultiPolygon(std::vector<Polygon> polys) : polys_(std::move(polys)) {}
    static MultiPolygon from_ring(Ring outer);
    static MultiPolygon box(double x0, double y0, double x1, double y1);

    const std::vector<Polygon>& polygons() const { return polys_; }
    std::vector<Polygon>& polygons() { return polys_; }
    bool empty() const { return polys_.empty(); }
    std::size_t ring_count() const;
    std::size_t vertex_count() const;

    double area() const;
    double perimeter() const;
    Box bbox() const;
    std::vector<Point> vertices() const;

    template <typename F>
    void for_each_edge(F&& f) const {
        for (const auto& poly : polys_) {
            visit_ring(poly.outer, f);
            for (const auto& h : poly.holes) visit_ring(h, f);
        }
    }

private:
    template <typename F>
    static void visit_ring(const Ring& r, F& f) {
        const std::size_t n = r.size();
        for (std::size_t i = 0; i < n; ++i) f(r[i], r[(i + 1) % n]);
    }

    std::vector<Polygon> polys_;
};

/// Rigid motion: rotation by theta about the origin, then translation.
struct Transform {
    double theta = 0.0;
    Point translation{};

    Point apply(const Point& p) const;
    Ring apply(const Ring& r) const;
    MultiPolygon apply(const MultiPolygon& m) const;
};

MultiPolygon translate(const MultiPolygon& m, const Point& t);
MultiPolygon reflect(const MultiPolygon& m);
Point reflect(const Point& p);

/// Orients rings canonically, welds near-duplicate vertices, drops collinear vertices and
/// rings that collapse below eps, and rotates each ring to start at its lowest-left vertex.
MultiPolygon normalize(const MultiPolygon& m, double eps = kDefaultEps);
Ring clean_ring(const Ring& r, double eps = kDefaultEps);

enum class Location { In, On, Out };

const char* to_string(Location loc);

/// Distance from p to the nearest boundary edge of m (infinity when m is empty).
double boundary_distance(const MultiPolygon& m, const Point& p);
/// Even-odd containment, ignoring the boundary band.
bool inside_raw(const MultiPolygon& m, const Point& p);
Location classify_point(const MultiPolygon& m, const Point& p, double eps = kDefaultEps);
/// Negative inside, zero within eps of the boundary, positive outside.
double signed_distance(const MultiPolygon& m, const Point& p, double eps = kDefaultEps);

enum class BoolOp { Union, Intersect, Diff };

/// Regularized Boolean operation (closure of the interior of the set result).
MultiPolygon boolean_reg(const MultiPolygon& p, const MultiPolygon& q, BoolOp op);
/// Regularized union of many operands, merged pairwise in a balanced tree.
MultiPolygon union_all(std::vector<MultiPolygon> parts);
/// Area of the regularized intersection.
double overlap_area(const MultiPolygon& p, const MultiPolygon& q);
/// q ⊆ p up to an area slack proportional to eps.
bool contains(const MultiPolygon& p, const MultiPolygon& q, double eps = kDefaultEps);
/// q ⊆ p decided on boundaries: vertices of q in p, no vertex of p strictly inside q, no proper
/// edge crossings, and every piece of q's boundary between contacts in p. Tolerance eps is linear.
bool contains_region(const MultiPolygon& p, const MultiPolygon& q, double eps = kDefaultEps);
/// Regularize a region: k i P. Boolean results are already regular; this re-runs the cleanup.
MultiPolygon regularize(const MultiPolygon& m);

Ring convex_hull(std::vector<Point> pts);
Ring convex_hull(const MultiPolygon& m);
std::vector<Point> extreme_points(const MultiPolygon& m);

struct Circle {
    Point center{};
    double radius = 0.0;
};

Circle smallest_enclosing_circle(std::span<const Point> pts);
Circle smallest_enclosing_circle(const MultiPolygon& m);

struct InradiusResult {
    double radius = 0.0;
    /// Surviving erosion just below the inradius; approximates the locus of incircle centers.
    MultiPolygon witness;
    /// One point realizing the inradius.
    Point center{};
};

/// Largest inscribed circle radius. Polygonal-disk bisection brackets the radius, then an
/// exact polish over equidistance points of nearby edges and reflex vertices pins it down.
InradiusResult inradius(const MultiPolygon& m, double tol = 1e-9);

}  // namespace cspace
