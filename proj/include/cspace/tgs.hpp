#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "cspace/distances.hpp"
#include "cspace/error.hpp"
#include "cspace/families.hpp"
#include "cspace/region.hpp"
#include "cspace/scene.hpp"

namespace cspace {

enum class Cmp { LT, LE, EQ, NE, GE, GT, TO_MIN };

const char* to_string(Cmp c);

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct TgsAtom {
    DistanceKind dist = DistanceKind::GAMMA1;
    std::string subject;
    std::string reference;
    Cmp cmp = Cmp::LE;
    double lambda = 0.0;  // unused for TO_MIN
    Span span;

    /// Same distance and object pair.
    bool same_key(const TgsAtom& o) const {
        return dist == o.dist && subject == o.subject && reference == o.reference;
    }
};

struct TgsExpr {
    enum class Op { And, Or, Not, Atom, True, False };

    Op op = Op::True;
    std::vector<TgsExpr> children;
    TgsAtom atom;
    Span span;

    static TgsExpr make_atom(TgsAtom a);
    static TgsExpr conj(std::vector<TgsExpr> xs);
    static TgsExpr disj(std::vector<TgsExpr> xs);
    static TgsExpr negate(TgsExpr x);
    static TgsExpr truth();
    static TgsExpr falsity();

    bool is_atom() const { return op == Op::Atom; }
    std::size_t atom_count() const;
};

/// Structural equality, ignoring source spans.
bool operator==(const TgsExpr& a, const TgsExpr& b);

class TgsParseError : public Error {
public:
    TgsParseError(std::size_t position, std::vector<std::string> expected, const std::string& found);

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

/// expr := term (("or"|"|") term)* ; term := factor (("and"|"&") factor)* ;
/// factor := ("not"|"!") factor | "(" expr ")" | "true" | "false" | atom ;
/// atom := DIST "(" ID "," ID ")" (CMP NUMBER | "->" "min")
TgsExpr parse(std::string_view text);
std::string print(const TgsExpr& e);

/// Negation normal form, flattened And/Or, constants folded, same-key comparison chains merged.
TgsExpr normalize(const TgsExpr& e);
/// Rewrites atoms whose reference is a group into per-member conjunctions or disjunctions.
TgsExpr multi_obstacle_expand(const TgsExpr& e, const Scene& scene);
/// Expansion of one group atom over explicit members.
TgsExpr expand_group_atom(const TgsAtom& a, const std::vector<std::string>& members);

enum class Truth { True, False, Ambiguous };

const char* to_string(Truth t);

struct PointResult {
    Truth value = Truth::False;
    std::vector<std::string> diagnostics;
};

struct RegionResult {
    RegionNR region;
    std::vector<std::string> diagnostics;
};

/// Evaluates expressions over one scene. Family caches are built on first use per object pair.
class Evaluator {
public:
    explicit Evaluator(Scene scene);

    const Scene& scene() const { return scene_; }
    const FamilyCache& cache(const std::string& subject, const std::string& reference) const;

    PointResult eval_point(const TgsExpr& e, const Point& p) const;
    RegionResult eval_region(const TgsExpr& e) const;

    /// Configuration window: the scene's, or the bbox of the family bases of all atoms inflated
    /// by max |λ| + 1.
    Box window(const TgsExpr& e) const;
    /// True when some atom's distance at p is within `slack` plus the disk error of its threshold.
    bool near_threshold(const TgsExpr& e, const Point& p, double slack) const;
    /// Common subject of all atoms; throws MIXED_SUBJECTS.
    std::string subject_of(const TgsExpr& e) const;
    /// λ attained as minimum for TO_MIN atoms.
    double extreme(const TgsAtom& a) const;

private:
    Truth eval_atom(const TgsAtom& a, const Point& p, std::vector<std::string>& diag) const;
    RegionNR atom_region(const TgsAtom& a, const Box& window, std::vector<std::string>& diag) const;
    RegionNR fold(const TgsExpr& e, const Box& window, std::vector<std::string>& diag) const;

    Scene scene_;
    DiskConfig disk_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::string, std::string>, std::unique_ptr<FamilyCache>> caches_;
};

struct Preset {
    std::string name;
    std::string text;  // before group expansion
    TgsExpr expr;      // expanded
};

/// findspace, problem1a, problem1b, problem2, problem3, problem4, problem5, problem5full.
/// Missing λ parameters throw INVALID_ARGUMENT.
Preset build_preset(const std::string& name, const Scene& scene, const std::map<std::string, double>& lambdas);
std::vector<std::string> preset_names();

}  // namespace cspace
