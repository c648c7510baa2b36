#pragma once

#include <array>
#include <string>
#include <vector>

#include "cspace/distances.hpp"
#include "cspace/tgs.hpp"

// Brute-force references. Everything here is written from the definitions and does not call
// the fast Minkowski, distance or family code.
namespace cspace::oracle {

using Triangle = std::array<Point, 3>;

/// Ear clipping; holes are bridged to the outer ring first.
std::vector<Triangle> triangulate(const MultiPolygon& m);
/// Union of the hulls of pairwise triangle vertex sums, A ⊕ B, as convex pieces.
std::vector<Ring> sum_pieces(const MultiPolygon& a, const MultiPolygon& b);
/// Regularized union of sum_pieces.
MultiPolygon mink_sum(const MultiPolygon& a, const MultiPolygon& b);

bool overlaps(const MultiPolygon& a, const MultiPolygon& b);  ///< closed sets meet
bool interiors_overlap(const MultiPolygon& a, const MultiPolygon& b);
bool contains(const MultiPolygon& outer, const MultiPolygon& inner);  ///< inner ⊆ outer

double d1(const MultiPolygon& a, const MultiPolygon& b);
double d2(const MultiPolygon& a, const MultiPolygon& b);

/// Boundary of A ⊕ B̌ sampled at `density` points per unit length; signed distance to it.
class SampledObstacle {
public:
    SampledObstacle(const MultiPolygon& a, const MultiPolygon& b, double density);
    double signed_distance(const Point& p) const;
    bool inside(const Point& p) const;

private:
    std::vector<Ring> pieces_;
    std::vector<std::array<Point, 2>> boundary_;
};

/// ω(B + p, A) from first definitions. Throws UNDEFINED_EROSION_EMPTY like the fast path.
double distance(DistanceKind kind, const MultiPolygon& a, const MultiPolygon& b, const Point& p, double density = 64);

struct Bitmap {
    int width = 0;
    int height = 0;
    Box window;
    std::vector<Truth> cells;  ///< row-major, row 0 at window.min.y

    Truth at(int i, int j) const { return cells[static_cast<std::size_t>(j) * width + i]; }
    Point center(int i, int j) const;
    std::size_t count(Truth t) const;
};

/// eval_point at every cell centre of a grid × grid raster over the evaluator's window.
Bitmap oracle_map(const Evaluator& ev, const TgsExpr& e, int grid);
/// 8-connected components of TRUE cells.
std::size_t component_count(const Bitmap& b);

std::string to_pgm(const Bitmap& b);

struct Agreement {
    std::size_t checked = 0;
    std::size_t band = 0;  ///< AMBIGUOUS cells and cells near a threshold, skipped
    std::size_t mismatches = 0;
    std::vector<Point> witnesses;  ///< first few disagreeing cell centres

    double fraction() const { return checked ? static_cast<double>(mismatches) / checked : 0.0; }
};

/// Cell-by-cell comparison of a bitmap against region membership (MEMBER vs TRUE).
Agreement compare_backends(const Evaluator& ev, const TgsExpr& e, const RegionNR& region, const Bitmap& b,
                           double slack = 1e-6);

}  // namespace cspace::oracle
