#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>

#include "cspace/distances.hpp"
#include "cspace/error.hpp"
#include "cspace/geom.hpp"
#include "cspace/minkowski.hpp"

namespace cspace {

enum class FamilyKind { GAMMA1_F, GAMMA2_F, H1_F, H2_F, DELTA1_F, DELTA2_F, M1_F, M2_F, M3_F };

inline constexpr FamilyKind kAllFamilyKinds[] = {FamilyKind::GAMMA1_F, FamilyKind::GAMMA2_F, FamilyKind::H1_F,
                                                 FamilyKind::H2_F,     FamilyKind::DELTA1_F, FamilyKind::DELTA2_F,
                                                 FamilyKind::M1_F,     FamilyKind::M2_F,     FamilyKind::M3_F};

const char* to_string(FamilyKind k);

/// The family whose λ-slice is the sublevel set {p : ω(B+p, A) ≤ λ}. D1 maps to Γ₁ (valid for
/// λ ≥ 0), D2 to Γ₂. DSTAR has no sublevel family of its own and maps to H₁ (see tgs).
FamilyKind family_for(DistanceKind k);
/// The distance whose sublevel sets the family describes.
DistanceKind distance_for(FamilyKind k);

/// Cached Minkowski regions a family is built on.
enum class BaseKind { Obstacle, Containment, Covering };

BaseKind base_for(FamilyKind k);
BaseKind base_for(DistanceKind k);

struct FamilySlice {
    FamilyKind kind = FamilyKind::GAMMA1_F;
    double lambda = 0.0;
    MultiPolygon region;
    MultiPolygon base_region;
    double r_base = 0.0;
    double R_base = 0.0;
    Point center{};
    /// Radial disk-approximation error carried by the slice boundary.
    double error_bound = 0.0;
    /// Lower-dimensional members not represented by `region`: outer-envelope slits of Γ₁(0), or
    /// the single SEC center of Γ₂ at λ = R.
    std::vector<DegenerateFeature> features;
};

/// Per object pair (reference A, moving subject B): the C-space obstacle A⊕B̌, the containment
/// base A⊖B̌ and the covering base B̌⊖A, computed once. Slices are pure functions of the cache.
class FamilyCache {
public:
    FamilyCache(MultiPolygon a, MultiPolygon b, DiskConfig disk = {}, double eps = kDefaultEps);

    const MultiPolygon& a() const { return a_; }
    const MultiPolygon& b() const { return b_; }
    const DiskConfig& disk() const { return disk_; }
    double eps() const { return eps_; }

    const MinkResult& obstacle() const { return obstacle_; }
    const MultiPolygon& base(BaseKind k) const;
    /// Throws UNDEFINED_EROSION_EMPTY for an empty erosion base.
    const MultiPolygon& require_base(BaseKind k) const;
    const Ring& hull(BaseKind k) const;
    const Circle& enclosing(BaseKind k) const;
    const InradiusResult& inradius(BaseKind k) const;

    FamilySlice slice(FamilyKind k, double lambda) const;
    /// Attainable minimum of the distance over all translations: −r or R of the base, or the
    /// emptiness threshold of the M family.
    double extreme_lambda(DistanceKind k) const;
    /// ω(B + p, A).
    double distance_at(DistanceKind k, const Point& p) const;

    /// Γ₁(λ, X): offset of a single region by the polygonal disk.
    MultiPolygon offset(const MultiPolygon& x, double lambda) const;

private:
    struct Lazy {
        std::once_flag once;
        InradiusResult value;
    };

    MultiPolygon disk_intersection(const Ring& centers, double lambda) const;

    MultiPolygon a_, b_;
    DiskConfig disk_;
    double eps_;
    MinkResult obstacle_;
    std::array<MultiPolygon, 3> bases_;
    std::array<Ring, 3> hulls_;
    std::array<Circle, 3> circles_;
    std::array<std::unique_ptr<Lazy>, 3> inradius_;
};

}  // namespace cspace
