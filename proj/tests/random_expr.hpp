#pragma once

#include <random>

#include "cspace/tgs.hpp"
#include "support.hpp"

namespace testing {

// Container R, subject B, obstacle O: every atom below is defined everywhere.
inline cspace::Scene expr_scene() {
    cspace::Scene s;
    s.objects["R"] = box(0, 0, 6, 5);
    s.objects["B"] = poly({{0, 0}, {1, 0}, {0.3, 0.8}});
    s.objects["O"] = poly({{2, 1.5}, {3.5, 2}, {2.5, 3.2}});
    s.container = "R";
    s.subject = "B";
    return s;
}

inline cspace::TgsAtom random_atom(std::mt19937_64& rng) {
    using cspace::DistanceKind;
    struct Choice {
        DistanceKind dist;
        const char* ref;
        double lo, hi;
    };
    static const Choice choices[] = {
        {DistanceKind::GAMMA1, "O", -1, 3},   {DistanceKind::GAMMA2, "O", 2, 6},  {DistanceKind::ETA1, "R", -2, 1},
        {DistanceKind::ETA2, "R", 5, 8},      {DistanceKind::MU_BA, "O", -0.5, 3}, {DistanceKind::D1, "O", 0, 3},
        {DistanceKind::D2, "O", 2, 6},        {DistanceKind::HAUS, "O", 0.5, 4},
    };
    const Choice& c = choices[rng() % std::size(choices)];
    cspace::TgsAtom a;
    a.dist = c.dist;
    a.subject = "B";
    a.reference = c.ref;
    const int k = static_cast<int>(rng() % 13);
    a.cmp = k < 12 ? static_cast<cspace::Cmp>(k % 6) : cspace::Cmp::TO_MIN;
    // quarter-unit thresholds keep printing exact and make chains of equal λ likely
    a.lambda = a.cmp == cspace::Cmp::TO_MIN ? 0.0 : std::round(uniform(rng, c.lo, c.hi) * 4) / 4;
    return a;
}

inline cspace::TgsExpr random_expr(std::mt19937_64& rng, int depth) {
    using cspace::TgsExpr;
    const int k = static_cast<int>(rng() % 10);
    if (depth == 0 || k < 3) {
        if (rng() % 25 == 0) return rng() % 2 ? TgsExpr::truth() : TgsExpr::falsity();
        return TgsExpr::make_atom(random_atom(rng));
    }
    if (k < 5) return TgsExpr::negate(random_expr(rng, depth - 1));
    std::vector<TgsExpr> xs;
    const int n = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n; ++i) xs.push_back(random_expr(rng, depth - 1));
    return k < 8 ? TgsExpr::conj(std::move(xs)) : TgsExpr::disj(std::move(xs));
}

}  // namespace testing
