#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "cspace/tgs.hpp"

namespace cspace {

const char* to_string(Cmp c) {
    switch (c) {
        case Cmp::LT: return "<";
        case Cmp::LE: return "<=";
        case Cmp::EQ: return "=";
        case Cmp::NE: return "!=";
        case Cmp::GE: return ">=";
        case Cmp::GT: return ">";
        case Cmp::TO_MIN: return "-> min";
    }
    return "?";
}

const char* to_string(Truth t) {
    switch (t) {
        case Truth::True: return "TRUE";
        case Truth::False: return "FALSE";
        case Truth::Ambiguous: return "AMBIGUOUS";
    }
    return "?";
}

TgsExpr TgsExpr::make_atom(TgsAtom a) {
    TgsExpr e;
    e.op = Op::Atom;
    e.span = a.span;
    e.atom = std::move(a);
    return e;
}

TgsExpr TgsExpr::conj(std::vector<TgsExpr> xs) {
    if (xs.size() == 1) return std::move(xs[0]);
    TgsExpr e;
    e.op = xs.empty() ? Op::True : Op::And;
    e.children = std::move(xs);
    return e;
}

TgsExpr TgsExpr::disj(std::vector<TgsExpr> xs) {
    if (xs.size() == 1) return std::move(xs[0]);
    TgsExpr e;
    e.op = xs.empty() ? Op::False : Op::Or;
    e.children = std::move(xs);
    return e;
}

TgsExpr TgsExpr::negate(TgsExpr x) {
    TgsExpr e;
    e.op = Op::Not;
    e.children.push_back(std::move(x));
    return e;
}

TgsExpr TgsExpr::truth() { return TgsExpr{}; }

TgsExpr TgsExpr::falsity() {
    TgsExpr e;
    e.op = Op::False;
    return e;
}

std::size_t TgsExpr::atom_count() const {
    if (op == Op::Atom) return 1;
    std::size_t n = 0;
    for (const auto& c : children) n += c.atom_count();
    return n;
}

bool operator==(const TgsExpr& a, const TgsExpr& b) {
    if (a.op != b.op || a.children.size() != b.children.size()) return false;
    if (a.op == TgsExpr::Op::Atom) {
        const auto &x = a.atom, &y = b.atom;
        if (!x.same_key(y) || x.cmp != y.cmp) return false;
        if (x.cmp != Cmp::TO_MIN && !(x.lambda == y.lambda)) return false;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!(a.children[i] == b.children[i])) return false;
    return true;
}

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += xs[i];
    }
    return s;
}

}  // namespace

TgsParseError::TgsParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
    : Error(ErrorCode::ParseError,
            "parse error at " + std::to_string(position) + ": expected " + join(expected) + ", found " + found),
      position_(position),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Cmp, Arrow, And, Or, Not, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
            Token t;
            t.pos = i_;
            if (i_ >= s_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            const char c = s_[i_];
            auto two = [&](const char* op) { return s_.substr(i_, 2) == op; };
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i_;
                while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
                t.text = std::string(s_.substr(i_, j - i_));
                t.kind = t.text == "and" ? Tok::And : t.text == "or" ? Tok::Or : t.text == "not" ? Tok::Not : Tok::Ident;
                i_ = j;
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
                       ((c == '-' || c == '+') && i_ + 1 < s_.size() &&
                        (std::isdigit(static_cast<unsigned char>(s_[i_ + 1])) || s_[i_ + 1] == '.'))) {
                std::size_t j = i_ + 1;
                while (j < s_.size()) {
                    const char d = s_[j];
                    if (std::isdigit(static_cast<unsigned char>(d)) || d == '.') {
                        ++j;
                    } else if ((d == 'e' || d == 'E')) {
                        ++j;
                        if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
                    } else {
                        break;
                    }
                }
                t.kind = Tok::Number;
                t.text = std::string(s_.substr(i_, j - i_));
                i_ = j;
            } else if (two("<=") || two(">=") || two("!=") || two("==")) {
                t.kind = Tok::Cmp;
                t.text = std::string(s_.substr(i_, 2));
                i_ += 2;
            } else if (two("->")) {
                t.kind = Tok::Arrow;
                t.text = "->";
                i_ += 2;
            } else if (two("&&") || two("||")) {
                t.kind = c == '&' ? Tok::And : Tok::Or;
                t.text = std::string(s_.substr(i_, 2));
                i_ += 2;
            } else {
                t.text = std::string(1, c);
                switch (c) {
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case ',': t.kind = Tok::Comma; break;
                    case '<':
                    case '>':
                    case '=': t.kind = Tok::Cmp; break;
                    case '&': t.kind = Tok::And; break;
                    case '|': t.kind = Tok::Or; break;
                    case '!': t.kind = Tok::Not; break;
                    default: throw TgsParseError(i_, {"token"}, "'" + t.text + "'");
                }
                ++i_;
            }
            out.push_back(std::move(t));
        }
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view s) : toks_(Lexer(s).run()) {}

    TgsExpr run() {
        TgsExpr e = expr();
        if (peek().kind != Tok::End) fail({"'|'", "'&'", "end of input"});
        return e;
    }

private:
    const Token& peek() const { return toks_[k_]; }
    Token take() { return toks_[k_++]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        throw TgsParseError(t.pos, std::move(expected), t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
    }

    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail({what});
        return take();
    }

    TgsExpr expr() {
        std::vector<TgsExpr> xs;
        const std::size_t begin = peek().pos;
        xs.push_back(term());
        while (peek().kind == Tok::Or) {
            take();
            xs.push_back(term());
        }
        if (xs.size() == 1) return std::move(xs[0]);
        TgsExpr e = TgsExpr::disj(std::move(xs));
        e.span = {begin, peek().pos};
        return e;
    }

    TgsExpr term() {
        std::vector<TgsExpr> xs;
        const std::size_t begin = peek().pos;
        xs.push_back(factor());
        while (peek().kind == Tok::And) {
            take();
            xs.push_back(factor());
        }
        if (xs.size() == 1) return std::move(xs[0]);
        TgsExpr e = TgsExpr::conj(std::move(xs));
        e.span = {begin, peek().pos};
        return e;
    }

    TgsExpr factor() {
        const Token& t = peek();
        const std::size_t begin = t.pos;
        if (t.kind == Tok::Not) {
            take();
            TgsExpr e = TgsExpr::negate(factor());
            e.span = {begin, peek().pos};
            return e;
        }
        if (t.kind == Tok::LParen) {
            take();
            TgsExpr e = expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (t.kind == Tok::Ident && (t.text == "true" || t.text == "false")) {
            TgsExpr e = t.text == "true" ? TgsExpr::truth() : TgsExpr::falsity();
            take();
            e.span = {begin, peek().pos};
            return e;
        }
        if (t.kind == Tok::Ident) return atom();
        fail({"'not'", "'('", "distance name"});
    }

    TgsExpr atom() {
        const Token name = take();
        const auto kind = distance_from_dsl(name.text);
        if (!kind) {
            --k_;
            fail({"distance name (gamma1, gamma2, eta1, eta2, delta1, delta2, mu, hdir, haus, d1, d2, dstar)"});
        }
        TgsAtom a;
        a.dist = *kind;
        expect(Tok::LParen, "'('");
        a.subject = expect(Tok::Ident, "object name").text;
        expect(Tok::Comma, "','");
        a.reference = expect(Tok::Ident, "object name").text;
        expect(Tok::RParen, "')'");
        if (peek().kind == Tok::Arrow) {
            take();
            if (peek().kind != Tok::Ident || peek().text != "min") fail({"'min'"});
            take();
            a.cmp = Cmp::TO_MIN;
        } else {
            if (peek().kind != Tok::Cmp) fail({"comparison", "'->'"});
            const std::string op = take().text;
            a.cmp = op == "<"    ? Cmp::LT
                    : op == "<=" ? Cmp::LE
                    : op == ">"  ? Cmp::GT
                    : op == ">=" ? Cmp::GE
                    : op == "!=" ? Cmp::NE
                                 : Cmp::EQ;
            if (peek().kind != Tok::Number) fail({"number"});
            const Token num = take();
            std::string_view sv = num.text;
            if (!sv.empty() && sv[0] == '+') sv.remove_prefix(1);
            double v = 0;
            const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
            if (res.ec != std::errc() || res.ptr != sv.data() + sv.size() || !std::isfinite(v)) {
                --k_;
                fail({"finite number"});
            }
            a.lambda = v;
        }
        if (a.subject == a.reference) throw TgsParseError(name.pos, {"distinct subject and reference"}, "'" + a.subject + "'");
        a.span = {name.pos, peek().pos};
        return TgsExpr::make_atom(std::move(a));
    }

    std::vector<Token> toks_;
    std::size_t k_ = 0;
};

std::string number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_to(const TgsExpr& e, std::string& out) {
    auto child = [&](const TgsExpr& c) {
        const bool compound = c.op == TgsExpr::Op::And || c.op == TgsExpr::Op::Or;
        if (compound) out += '(';
        print_to(c, out);
        if (compound) out += ')';
    };
    switch (e.op) {
        case TgsExpr::Op::True: out += "true"; break;
        case TgsExpr::Op::False: out += "false"; break;
        case TgsExpr::Op::Atom: {
            const auto& a = e.atom;
            out += dsl_name(a.dist);
            out += '(' + a.subject + ',' + a.reference + ')';
            if (a.cmp == Cmp::TO_MIN)
                out += " -> min";
            else
                out += std::string(" ") + to_string(a.cmp) + " " + number(a.lambda);
            break;
        }
        case TgsExpr::Op::Not:
            out += '!';
            child(e.children[0]);
            break;
        case TgsExpr::Op::And:
        case TgsExpr::Op::Or:
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += e.op == TgsExpr::Op::And ? " & " : " | ";
                child(e.children[i]);
            }
            break;
    }
}

}  // namespace

TgsExpr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const TgsExpr& e) {
    std::string s;
    print_to(e, s);
    return s;
}

}  // namespace cspace
