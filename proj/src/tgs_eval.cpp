#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cspace/tgs.hpp"

namespace cspace {

namespace {

using Op = TgsExpr::Op;

Truth t_and(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::True && b == Truth::True) return Truth::True;
    return Truth::Ambiguous;
}

Truth t_or(Truth a, Truth b) {
    if (a == Truth::True || b == Truth::True) return Truth::True;
    if (a == Truth::False && b == Truth::False) return Truth::False;
    return Truth::Ambiguous;
}

Truth t_not(Truth a) {
    if (a == Truth::True) return Truth::False;
    if (a == Truth::False) return Truth::True;
    return a;
}

Truth compare(double w, Cmp c, double lambda, double tol) {
    const double d = w - lambda;
    if (std::abs(d) <= tol) return Truth::Ambiguous;
    switch (c) {
        case Cmp::LT:
        case Cmp::LE: return d < 0 ? Truth::True : Truth::False;
        case Cmp::GT:
        case Cmp::GE: return d > 0 ? Truth::True : Truth::False;
        case Cmp::EQ:
        case Cmp::TO_MIN: return Truth::False;
        case Cmp::NE: return Truth::True;
    }
    return Truth::False;
}

// d = max(0, v) against λ, decided on v so that the clamp does not blur the zero level.
Truth compare_clamped(double v, Cmp c, double lambda, double tol) {
    if (c == Cmp::TO_MIN) c = Cmp::EQ, lambda = 0.0;
    if (lambda > 0) return compare(v, c, lambda, tol);
    if (lambda < 0) return (c == Cmp::LE || c == Cmp::LT || c == Cmp::EQ) ? Truth::False : Truth::True;
    switch (c) {
        case Cmp::LE:
        case Cmp::EQ: return compare(v, Cmp::LE, 0.0, tol);
        case Cmp::LT: return Truth::False;
        case Cmp::GE: return Truth::True;
        default: return compare(v, Cmp::GT, 0.0, tol);
    }
}

bool gamma2_type(DistanceKind k) {
    return k == DistanceKind::GAMMA2 || k == DistanceKind::D2 || k == DistanceKind::ETA2 || k == DistanceKind::DELTA2;
}

bool gamma1_type(DistanceKind k) {
    return k == DistanceKind::GAMMA1 || k == DistanceKind::ETA1 || k == DistanceKind::DELTA1;
}

void add_features(RegionNR& r, const std::vector<DegenerateFeature>& fs, Flag flag) {
    for (const auto& f : fs) {
        if (f.is_point())
            r.points.push_back({f.points[0], flag});
        else
            for (std::size_t i = 0; i + 1 < f.points.size(); ++i) r.segments.push_back({f.points[i], f.points[i + 1], flag});
    }
}

template <typename F>
void for_each_atom(const TgsExpr& e, F&& f) {
    if (e.op == Op::Atom) {
        f(e.atom);
        return;
    }
    for (const auto& c : e.children) for_each_atom(c, f);
}

// A thin witness region collapses to its centre point, its principal segment, or its outline.
RegionNR degenerate_witness(const InradiusResult& ir, double scale, const Box& w) {
    const MultiPolygon& m = ir.witness;
    const std::vector<Point> vs = m.vertices();
    if (vs.empty()) return RegionNR::curves({}, {ir.center}, w);
    const Box bb = m.bbox();
    const double diam = std::hypot(bb.width(), bb.height());
    if (diam <= 1e-4 * scale) return RegionNR::curves({}, {ir.center}, w);
    Point c{0, 0};
    for (const auto& v : vs) c += v;
    c = c * (1.0 / static_cast<double>(vs.size()));
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& v : vs) {
        const Point d = v - c;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    const double theta = 0.5 * std::atan2(2 * sxy, sxx - syy);
    const Point u{std::cos(theta), std::sin(theta)}, n{-u.y, u.x};
    double t0 = std::numeric_limits<double>::infinity(), t1 = -t0, s0 = t0, s1 = -t0;
    for (const auto& v : vs) {
        t0 = std::min(t0, dot(v - c, u));
        t1 = std::max(t1, dot(v - c, u));
        s0 = std::min(s0, dot(v - c, n));
        s1 = std::max(s1, dot(v - c, n));
    }
    if (s1 - s0 <= 1e-4 * scale) {
        const Point mid = c + n * (0.5 * (s0 + s1));
        return RegionNR::curves({{mid + u * t0, mid + u * t1}}, {}, w);
    }
    std::vector<std::vector<Point>> lines;
    m.for_each_edge([&](const Point& a, const Point& b) { lines.push_back({a, b}); });
    return RegionNR::curves(lines, {}, w);
}

}  // namespace

Evaluator::Evaluator(Scene scene) : scene_(std::move(scene)) {
    disk_.segments = scene_.config.disk_segments;
}

const FamilyCache& Evaluator::cache(const std::string& subject, const std::string& reference) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(subject, reference);
    auto it = caches_.find(key);
    if (it != caches_.end()) return *it->second;
    auto c = std::make_unique<FamilyCache>(scene_.object(reference), scene_.object(subject), disk_, scene_.config.eps);
    return *caches_.emplace(key, std::move(c)).first->second;
}

std::string Evaluator::subject_of(const TgsExpr& e) const {
    std::string subject;
    for_each_atom(e, [&](const TgsAtom& a) {
        if (subject.empty())
            subject = a.subject;
        else if (a.subject != subject)
            throw Error(ErrorCode::MixedSubjects, "atoms move different subjects: " + subject + " and " + a.subject);
    });
    return subject;
}

double Evaluator::extreme(const TgsAtom& a) const {
    if (a.dist == DistanceKind::D1 || a.dist == DistanceKind::DSTAR) return 0.0;
    return cache(a.subject, a.reference).extreme_lambda(a.dist);
}

Truth Evaluator::eval_atom(const TgsAtom& a, const Point& p, std::vector<std::string>& diag) const {
    const double tol = scene_.config.eps_cmp;
    const auto flag = [&](Truth t) {
        if (t == Truth::Ambiguous) diag.push_back("NEAR_THRESHOLD: " + print(TgsExpr::make_atom(a)));
        return t;
    };
    try {
        const FamilyCache& fc = cache(a.subject, a.reference);
        switch (a.dist) {
            case DistanceKind::D1:
                return flag(compare_clamped(fc.distance_at(DistanceKind::GAMMA1, p), a.cmp, a.lambda, tol));
            case DistanceKind::DSTAR: {
                const MultiPolygon& ci = fc.base(BaseKind::Containment);
                const double v = ci.empty() ? -std::numeric_limits<double>::infinity()
                                            : -signed_distance(ci, p, scene_.config.eps);
                return flag(compare_clamped(v, a.cmp, a.lambda, tol));
            }
            default: break;
        }
        const double w = fc.distance_at(a.dist, p);
        if (a.cmp == Cmp::TO_MIN) return flag(compare(w, Cmp::EQ, extreme(a), tol));
        return flag(compare(w, a.cmp, a.lambda, tol));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UndefinedErosionEmpty) throw;
        diag.push_back(std::string("UNDEFINED_EROSION_EMPTY: ") + dsl_name(a.dist) + "(" + a.subject + "," +
                       a.reference + ") " + e.what());
        return Truth::False;
    }
}

PointResult Evaluator::eval_point(const TgsExpr& e, const Point& p) const {
    PointResult r;
    struct Walk {
        const Evaluator& ev;
        const Point& p;
        std::vector<std::string>& diag;
        Truth operator()(const TgsExpr& x) const {
            switch (x.op) {
                case Op::True: return Truth::True;
                case Op::False: return Truth::False;
                case Op::Atom: return ev.eval_atom(x.atom, p, diag);
                case Op::Not: return t_not((*this)(x.children[0]));
                case Op::And: {
                    Truth t = Truth::True;
                    for (const auto& c : x.children) t = t_and(t, (*this)(c));
                    return t;
                }
                case Op::Or: {
                    Truth t = Truth::False;
                    for (const auto& c : x.children) t = t_or(t, (*this)(c));
                    return t;
                }
            }
            return Truth::False;
        }
    };
    r.value = Walk{*this, p, r.diagnostics}(e);
    return r;
}

Box Evaluator::window(const TgsExpr& e) const {
    if (scene_.config.window) return *scene_.config.window;
    Box box = Box::empty_box();
    double lam = 0.0;
    for_each_atom(e, [&](const TgsAtom& a) {
        if (a.cmp != Cmp::TO_MIN) lam = std::max(lam, std::abs(a.lambda));
        const FamilyCache& fc = cache(a.subject, a.reference);
        BaseKind bk = base_for(a.dist);
        if (a.dist == DistanceKind::DSTAR) bk = BaseKind::Containment;
        const MultiPolygon& m = fc.base(bk);
        box.expand(m.empty() ? fc.obstacle().region.bbox() : m.bbox());
    });
    if (box.empty())
        for (const auto& [name, obj] : scene_.objects) box.expand(obj.bbox());
    return box.inflated(lam + 1.0);
}

bool Evaluator::near_threshold(const TgsExpr& e, const Point& p, double slack) const {
    bool near = false;
    for_each_atom(e, [&](const TgsAtom& a) {
        if (near) return;
        try {
            const FamilyCache& fc = cache(a.subject, a.reference);
            double v = 0, lam = a.cmp == Cmp::TO_MIN ? extreme(a) : a.lambda;
            if (a.dist == DistanceKind::D1) {
                v = fc.distance_at(DistanceKind::GAMMA1, p);
                if (lam < 0) return;
            } else if (a.dist == DistanceKind::DSTAR) {
                const MultiPolygon& ci = fc.base(BaseKind::Containment);
                if (ci.empty() || lam < 0) return;
                v = -signed_distance(ci, p, scene_.config.eps);
            } else {
                v = fc.distance_at(a.dist, p);
            }
            double band = slack + disk_.error_bound(lam);
            if (a.cmp == Cmp::TO_MIN) band += 1e-6 * std::max(1.0, std::abs(lam));
            if (std::abs(v - lam) <= band) near = true;
        } catch (const Error& err) {
            if (err.code() != ErrorCode::UndefinedErosionEmpty) throw;
        }
    });
    return near;
}

RegionNR Evaluator::atom_region(const TgsAtom& a, const Box& w, std::vector<std::string>& diag) const {
    const double eps = scene_.config.eps;
    try {
        const FamilyCache& fc = cache(a.subject, a.reference);
        const FamilyKind fk = family_for(a.dist);

        auto closed_slice = [&](double lam) {
            FamilySlice s = fc.slice(fk, lam);
            RegionNR r = RegionNR::closed(std::move(s.region), w);
            add_features(r, s.features, Flag::Included);
            return r;
        };
        auto open_slice = [&](double lam) {
            FamilySlice s = fc.slice(fk, lam);
            RegionNR r = RegionNR::open(std::move(s.region), w);
            add_features(r, s.features, Flag::Excluded);
            return r;
        };

        if (a.cmp == Cmp::TO_MIN && a.dist != DistanceKind::D1 && a.dist != DistanceKind::DSTAR) {
            const double lam = extreme(a);
            if (gamma2_type(a.dist)) {
                const Circle& c = fc.enclosing(base_for(a.dist));
                return RegionNR::curves({}, {c.center}, w);
            }
            if (gamma1_type(a.dist)) {
                const BaseKind bk = base_for(a.dist);
                const Box bb = fc.base(bk).bbox();
                const double scale = std::max({1.0, bb.width(), bb.height()});
                return degenerate_witness(fc.inradius(bk), scale, w);
            }
            return closed_slice(lam);
        }

        // Sublevel sets {ω ≤ λ} and {ω < λ}; every comparison is a Boolean of these two.
        RegionNR le, lt;
        double lam = a.cmp == Cmp::TO_MIN ? 0.0 : a.lambda;
        Cmp cmp = a.cmp == Cmp::TO_MIN ? Cmp::EQ : a.cmp;
        if (a.dist == DistanceKind::D1) {
            le = lam < 0 ? RegionNR::empty(w) : closed_slice(lam);
            lt = lam <= 0 ? RegionNR::empty(w) : open_slice(lam);
        } else if (a.dist == DistanceKind::DSTAR) {
            const MultiPolygon& ci = fc.base(BaseKind::Containment);
            if (ci.empty()) {
                le = lam >= 0 ? RegionNR::full(w) : RegionNR::empty(w);
                lt = lam > 0 ? RegionNR::full(w) : RegionNR::empty(w);
            } else {
                auto h1 = [&](double l, bool closed) {
                    FamilySlice s = fc.slice(FamilyKind::H1_F, l);
                    return closed ? RegionNR::closed(std::move(s.region), w) : RegionNR::open(std::move(s.region), w);
                };
                le = lam < 0 ? RegionNR::empty(w) : nr_complement(h1(-lam, false), eps);
                lt = lam <= 0 ? RegionNR::empty(w) : nr_complement(h1(-lam, true), eps);
            }
        } else {
            le = closed_slice(lam);
            lt = open_slice(lam);
        }
        switch (cmp) {
            case Cmp::LE: return le;
            case Cmp::LT: return lt;
            case Cmp::GE: return nr_complement(lt, eps);
            case Cmp::GT: return nr_complement(le, eps);
            case Cmp::EQ: return nr_intersect(le, nr_complement(lt, eps), eps);
            case Cmp::NE: return nr_complement(nr_intersect(le, nr_complement(lt, eps), eps), eps);
            default: break;
        }
        return RegionNR::empty(w);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UndefinedErosionEmpty) throw;
        diag.push_back(std::string("UNDEFINED_EROSION_EMPTY: ") + dsl_name(a.dist) + "(" + a.subject + "," +
                       a.reference + ") " + e.what());
        return RegionNR::empty(w);
    }
}

RegionNR Evaluator::fold(const TgsExpr& e, const Box& w, std::vector<std::string>& diag) const {
    const double eps = scene_.config.eps;
    switch (e.op) {
        case Op::True: return RegionNR::full(w);
        case Op::False: return RegionNR::empty(w);
        case Op::Atom: return atom_region(e.atom, w, diag);
        case Op::Not: return nr_complement(fold(e.children[0], w, diag), eps);
        case Op::And:
        case Op::Or: {
            RegionNR acc = fold(e.children[0], w, diag);
            for (std::size_t i = 1; i < e.children.size(); ++i) {
                if (e.op == Op::And && acc.is_empty()) break;
                RegionNR next = fold(e.children[i], w, diag);
                acc = e.op == Op::And ? nr_intersect(acc, next, eps) : nr_union(acc, next, eps);
            }
            return acc;
        }
    }
    return RegionNR::empty(w);
}

RegionResult Evaluator::eval_region(const TgsExpr& e) const {
    subject_of(e);
    RegionResult out;
    const Box w = window(e);

    // A threshold equal to the extreme radius of the same pair degenerates the solution.
    std::vector<TgsAtom> atoms;
    for_each_atom(e, [&](const TgsAtom& a) { atoms.push_back(a); });
    for (const auto& m : atoms) {
        if (m.cmp != Cmp::TO_MIN) continue;
        for (const auto& a : atoms) {
            if (a.cmp == Cmp::TO_MIN || a.subject != m.subject || a.reference != m.reference) continue;
            try {
                const FamilyCache& fc = cache(a.subject, a.reference);
                const BaseKind bk = base_for(a.dist);
                const double r = fc.inradius(bk).radius, R = fc.enclosing(bk).radius;
                const double tol = scene_.config.eps_cmp;
                if (std::abs(std::abs(a.lambda) - r) < tol || std::abs(a.lambda - R) < tol)
                    out.diagnostics.push_back("DEGENERATE_THRESHOLD: " + print(TgsExpr::make_atom(a)) +
                                              " meets the extreme radius of its base");
            } catch (const Error& err) {
                if (err.code() != ErrorCode::UndefinedErosionEmpty) throw;
            }
        }
    }
    out.region = fold(e, w, out.diagnostics);
    out.region.window = w;
    return out;
}

std::vector<std::string> preset_names() {
    return {"findspace", "problem1a", "problem1b", "problem2", "problem3", "problem4", "problem5", "problem5full"};
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Preset build_preset(const std::string& name, const Scene& scene, const std::map<std::string, double>& lambdas) {
    auto get = [&](const std::string& key) -> double {
        auto it = lambdas.find(key);
        if (it == lambdas.end()) throw Error(ErrorCode::InvalidArgument, "preset " + name + " needs --lambda " + key + "=VALUE");
        return it->second;
    };
    auto get_i = [&](const std::string& key, std::size_t i) -> double {
        const std::string k = key + std::to_string(i + 1);
        return lambdas.count(k) ? lambdas.at(k) : get(key);
    };
    const std::string S = scene.subject;
    if (!scene.has_object(S)) throw Error(ErrorCode::UnknownObject, "subject not in scene: " + S);
    const std::vector<std::string> obs = scene.obstacles();
    auto container = [&]() -> std::string {
        if (!scene.container) throw Error(ErrorCode::InvalidArgument, "preset " + name + " needs a container");
        return *scene.container;
    };
    auto first_obstacle = [&]() -> std::string {
        if (obs.empty()) throw Error(ErrorCode::InvalidArgument, "scene has no reference object");
        return obs.front();
    };
    auto atom = [&](const char* d, const std::string& ref, const char* cmp, double v) {
        return std::string(d) + "(" + S + "," + ref + ") " + cmp + " " + num(v);
    };
    auto joined = [](const std::vector<std::string>& xs, const char* op) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? std::string(" ") + op + " " : "") + xs[i];
        return s;
    };

    std::string text;
    if (name == "findspace") {
        std::vector<std::string> hits;
        for (const auto& o : obs) hits.push_back(atom("gamma1", o, "<=", 0));
        text = atom("eta1", container(), "<=", 0);
        if (!hits.empty()) text += " & !(" + joined(hits, "|") + ")";
    } else if (name == "problem1a" || name == "problem1b") {
        const std::string A = first_obstacle();
        const bool a = name == "problem1a";
        const char* in = a ? "&" : "|";
        const char* out = a ? "|" : "&";
        const char* names[] = {"d1", "d2", "dstar"};
        std::vector<std::string> groups;
        for (int k = 0; k < 3; ++k) {
            const double lo = get("l" + std::to_string(2 * k + 1)), hi = get("l" + std::to_string(2 * k + 2));
            groups.push_back("(" + atom(names[k], A, "<=", lo) + " " + in + " " + atom(names[k], A, ">=", hi) + ")");
        }
        text = joined(groups, out);
    } else if (name == "problem2") {
        const std::string A = first_obstacle();
        auto band = [&](const char* d, int i) {
            return atom(d, A, ">=", get("l" + std::to_string(i))) + " & " + atom(d, A, "<=", get("l" + std::to_string(i + 1)));
        };
        text = "(" + band("gamma1", 1) + " & " + band("gamma2", 3) + ") | (" + band("eta1", 5) + " & " + band("eta2", 7) + ")";
    } else if (name == "problem3") {
        text = atom("eta1", container(), "<=", get("lR"));
        for (std::size_t i = 0; i < obs.size(); ++i) text += " & " + atom("gamma1", obs[i], ">", get_i("l", i));
    } else if (name == "problem4") {
        const double l = get("l");
        if (l != 1 && l != 2) throw Error(ErrorCode::InvalidArgument, "problem4: l must be 1 or 2");
        const char* d = l == 1 ? "gamma1" : "gamma2";
        const std::string G = scene.groups.empty() ? std::string("obstacles") : scene.groups.begin()->first;
        text = atom(d, G, "<=", get("l1")) + " & " + atom(d, G, ">", get("l2"));
    } else if (name == "problem5") {
        std::vector<std::string> xs;
        for (std::size_t i = 0; i < obs.size(); ++i) xs.push_back(atom("delta1", obs[i], "<=", get_i("l", i)));
        text = joined(xs, "&");
    } else if (name == "problem5full") {
        std::vector<std::string> cover, bands;
        for (std::size_t i = 0; i < obs.size(); ++i) {
            cover.push_back(atom("delta2", obs[i], "<=", get_i("e", i)));
            bands.push_back(atom("delta1", obs[i], ">=", get_i("lm", i)) + " & " + atom("delta1", obs[i], "<=", get_i("lp", i)));
        }
        text = "(" + joined(cover, "|") + ") & " + joined(bands, "&");
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown preset: " + name);
    }
    if (text.empty()) throw Error(ErrorCode::InvalidArgument, "preset " + name + " has no obstacles");

    Scene expanded = scene;
    if (expanded.groups.empty()) expanded.groups["obstacles"] = obs;
    return {name, text, normalize(multi_obstacle_expand(parse(text), expanded))};
}

}  // namespace cspace
