#include <cmath>
#include <limits>

#include "cspace/tgs.hpp"

namespace cspace {

namespace {

using Op = TgsExpr::Op;

Cmp complement(Cmp c) {
    switch (c) {
        case Cmp::LT: return Cmp::GE;
        case Cmp::GE: return Cmp::LT;
        case Cmp::LE: return Cmp::GT;
        case Cmp::GT: return Cmp::LE;
        case Cmp::EQ: return Cmp::NE;
        case Cmp::NE: return Cmp::EQ;
        default: return c;
    }
}

TgsExpr nnf(const TgsExpr& e, bool neg) {
    switch (e.op) {
        case Op::True: return neg ? TgsExpr::falsity() : TgsExpr::truth();
        case Op::False: return neg ? TgsExpr::truth() : TgsExpr::falsity();
        case Op::Atom: {
            if (!neg) return e;
            if (e.atom.cmp == Cmp::TO_MIN) return TgsExpr::negate(e);
            TgsAtom a = e.atom;
            a.cmp = complement(a.cmp);
            return TgsExpr::make_atom(std::move(a));
        }
        case Op::Not: return nnf(e.children[0], !neg);
        case Op::And:
        case Op::Or: {
            const bool conj = (e.op == Op::And) != neg;
            std::vector<TgsExpr> xs;
            for (const auto& c : e.children) xs.push_back(nnf(c, neg));
            TgsExpr out;
            out.op = conj ? Op::And : Op::Or;
            out.children = std::move(xs);
            return out;
        }
    }
    return e;
}

struct Bound {
    double v;
    bool strict = false;
};

bool is_order(Cmp c) { return c == Cmp::LT || c == Cmp::LE || c == Cmp::GE || c == Cmp::GT || c == Cmp::EQ; }

TgsExpr atom_of(const TgsAtom& key, Cmp c, double v) {
    TgsAtom a = key;
    a.cmp = c;
    a.lambda = v;
    return TgsExpr::make_atom(std::move(a));
}

// Same-key comparisons under AND become one interval.
std::vector<TgsExpr> merge_and(std::vector<TgsExpr> xs, bool& contradiction) {
    std::vector<TgsExpr> out;
    std::vector<char> used(xs.size(), 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (used[i]) continue;
        if (!xs[i].is_atom() || !is_order(xs[i].atom.cmp)) {
            out.push_back(std::move(xs[i]));
            continue;
        }
        const TgsAtom key = xs[i].atom;
        Bound lo{-std::numeric_limits<double>::infinity()}, hi{std::numeric_limits<double>::infinity()};
        std::size_t count = 0;
        for (std::size_t j = i; j < xs.size(); ++j) {
            if (used[j] || !xs[j].is_atom() || !is_order(xs[j].atom.cmp) || !xs[j].atom.same_key(key)) continue;
            used[j] = 1;
            ++count;
            const Cmp c = xs[j].atom.cmp;
            const double v = xs[j].atom.lambda;
            if (c == Cmp::GE || c == Cmp::GT || c == Cmp::EQ) {
                const bool s = c == Cmp::GT;
                if (v > lo.v) lo = {v, s};
                else if (v == lo.v) lo.strict = lo.strict || s;
            }
            if (c == Cmp::LE || c == Cmp::LT || c == Cmp::EQ) {
                const bool s = c == Cmp::LT;
                if (v < hi.v) hi = {v, s};
                else if (v == hi.v) hi.strict = hi.strict || s;
            }
        }
        if (count == 1) {
            out.push_back(std::move(xs[i]));
            continue;
        }
        if (lo.v > hi.v || (lo.v == hi.v && (lo.strict || hi.strict))) {
            contradiction = true;
            return {};
        }
        if (lo.v == hi.v) {
            out.push_back(atom_of(key, Cmp::EQ, lo.v));
            continue;
        }
        if (std::isfinite(lo.v)) out.push_back(atom_of(key, lo.strict ? Cmp::GT : Cmp::GE, lo.v));
        if (std::isfinite(hi.v)) out.push_back(atom_of(key, hi.strict ? Cmp::LT : Cmp::LE, hi.v));
    }
    return out;
}

// Same-key upper bounds under OR keep the loosest; likewise lower bounds.
std::vector<TgsExpr> merge_or(std::vector<TgsExpr> xs) {
    std::vector<TgsExpr> out;
    std::vector<char> used(xs.size(), 0);
    auto upper = [](Cmp c) { return c == Cmp::LE || c == Cmp::LT; };
    auto lower = [](Cmp c) { return c == Cmp::GE || c == Cmp::GT; };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (used[i]) continue;
        const bool up = xs[i].is_atom() && upper(xs[i].atom.cmp);
        const bool dn = xs[i].is_atom() && lower(xs[i].atom.cmp);
        if (!up && !dn) {
            out.push_back(std::move(xs[i]));
            continue;
        }
        TgsAtom best = xs[i].atom;
        used[i] = 1;
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (used[j] || !xs[j].is_atom() || !xs[j].atom.same_key(best)) continue;
            const TgsAtom& a = xs[j].atom;
            if (up ? !upper(a.cmp) : !lower(a.cmp)) continue;
            used[j] = 1;
            const bool looser = up ? a.lambda > best.lambda : a.lambda < best.lambda;
            const bool closed = a.cmp == Cmp::LE || a.cmp == Cmp::GE;
            if (looser || (a.lambda == best.lambda && closed)) best = a;
        }
        out.push_back(TgsExpr::make_atom(std::move(best)));
    }
    return out;
}

TgsExpr simplify(const TgsExpr& e) {
    if (e.op != Op::And && e.op != Op::Or) {
        if (e.op == Op::Not) return TgsExpr::negate(simplify(e.children[0]));
        return e;
    }
    const Op absorbing = e.op == Op::And ? Op::False : Op::True;
    const Op neutral = e.op == Op::And ? Op::True : Op::False;
    std::vector<TgsExpr> xs;
    for (const auto& c : e.children) {
        TgsExpr s = simplify(c);
        if (s.op == absorbing) return s;
        if (s.op == neutral) continue;
        if (s.op == e.op)
            for (auto& g : s.children) xs.push_back(std::move(g));
        else
            xs.push_back(std::move(s));
    }
    if (e.op == Op::And) {
        bool contradiction = false;
        xs = merge_and(std::move(xs), contradiction);
        if (contradiction) return TgsExpr::falsity();
        return TgsExpr::conj(std::move(xs));
    }
    xs = merge_or(std::move(xs));
    return TgsExpr::disj(std::move(xs));
}

}  // namespace

TgsExpr normalize(const TgsExpr& e) { return simplify(nnf(e, false)); }

TgsExpr expand_group_atom(const TgsAtom& a, const std::vector<std::string>& members) {
    bool min_type = false;
    switch (a.dist) {
        case DistanceKind::GAMMA1:
        case DistanceKind::D1: min_type = true; break;
        case DistanceKind::GAMMA2:
        case DistanceKind::D2: break;
        default:
            throw Error(ErrorCode::UnsupportedGroupAtom,
                        std::string("no group rule for ") + dsl_name(a.dist) + " against group " + a.reference);
    }
    const bool upper = a.cmp == Cmp::LE || a.cmp == Cmp::LT;
    const bool lower = a.cmp == Cmp::GE || a.cmp == Cmp::GT;
    if (!upper && !lower)
        throw Error(ErrorCode::UnsupportedGroupAtom,
                    std::string("comparison ") + to_string(a.cmp) + " has no group rule for " + a.reference);
    std::vector<TgsExpr> xs;
    for (const auto& m : members) {
        TgsAtom b = a;
        b.reference = m;
        xs.push_back(TgsExpr::make_atom(std::move(b)));
    }
    // min over members: below-threshold for any, above for all; max-type the other way round.
    if (upper == min_type) return TgsExpr::disj(std::move(xs));
    return TgsExpr::conj(std::move(xs));
}

TgsExpr multi_obstacle_expand(const TgsExpr& e, const Scene& scene) {
    if (e.op == Op::Atom) {
        const TgsAtom& a = e.atom;
        if (scene.has_object(a.reference)) return e;
        auto it = scene.groups.find(a.reference);
        if (it == scene.groups.end()) throw Error(ErrorCode::UnknownGroup, "unknown object or group: " + a.reference);
        return expand_group_atom(a, it->second);
    }
    TgsExpr out = e;
    for (auto& c : out.children) c = multi_obstacle_expand(c, scene);
    return out;
}

}  // namespace cspace
