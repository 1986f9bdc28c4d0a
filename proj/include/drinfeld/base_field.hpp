/*
   Copyright 2026 the drinfeld authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// The rational function field F = F_q(T) and its places: exact arithmetic
// in A = F_q[T], normalized rational functions, valuations (v_inf(T) = -1),
// residue fields with reduction maps, and factorization into monic
// irreducibles. Also hosts the polynomial text syntax used by the CLI and
// the JSON formats: sums of c*T^k, with extension-field coefficients written
// in the generator symbol g, e.g. "(g+1)*T^2+2*T+1".

#ifndef DRINFELD_BASE_FIELD_HPP
#define DRINFELD_BASE_FIELD_HPP

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/extfield.hpp"
#include "drinfeld/gf.hpp"
#include "drinfeld/polyring.hpp"

namespace drinfeld {

// ---------------------------------------------------------------------------
// rational functions

struct RationalFunction {
    FqPoly num;
    FqPoly den;  // monic, coprime to num; zero is {num = 0, den = 1}
};

class FuncField {
  public:
    using Elem = RationalFunction;

    explicit FuncField(Fq base) : base_(std::move(base)) {}

    const Fq& base_fq() const { return base_; }
    std::uint32_t p() const { return base_.p(); }
    std::uint64_t q() const { return base_.q(); }

    friend bool operator==(const FuncField& a, const FuncField& b) { return a.base_ == b.base_; }

    Elem zero() const { return {{}, poly_one(base_)}; }
    Elem one() const { return {poly_one(base_), poly_one(base_)}; }
    Elem var_T() const { return {poly_x(base_), poly_one(base_)}; }

    Elem from_poly(FqPoly p) const {
        poly_trim(base_, p);
        return {std::move(p), poly_one(base_)};
    }
    Elem from_int(std::int64_t v) const { return from_poly(poly_const(base_, base_.from_int(v))); }
    Elem embed_fq(const FqElem& c) const { return from_poly(poly_const(base_, c)); }

    Elem make(FqPoly num, FqPoly den) const {
        poly_trim(base_, num);
        poly_trim(base_, den);
        if (den.empty()) throw MathError("zero denominator in F_q(T)");
        return normalize(std::move(num), std::move(den));
    }

    bool is_zero(const Elem& a) const { return a.num.empty(); }
    bool is_poly(const Elem& a) const { return poly_deg<Fq>(a.den) == 0; }

    bool eq(const Elem& a, const Elem& b) const {
        return poly_eq(base_, a.num, b.num) && poly_eq(base_, a.den, b.den);
    }

    Elem add(const Elem& a, const Elem& b) const {
        if (is_poly(a) && is_poly(b)) return from_poly(poly_add(base_, a.num, b.num));
        FqPoly num = poly_add(base_, poly_mul(base_, a.num, b.den), poly_mul(base_, b.num, a.den));
        return normalize(std::move(num), poly_mul(base_, a.den, b.den));
    }
    Elem neg(const Elem& a) const { return {poly_neg(base_, a.num), a.den}; }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

    Elem mul(const Elem& a, const Elem& b) const {
        if (a.num.empty() || b.num.empty()) return zero();
        if (is_poly(a) && is_poly(b)) return from_poly(poly_mul(base_, a.num, b.num));
        return normalize(poly_mul(base_, a.num, b.num), poly_mul(base_, a.den, b.den));
    }

    Elem inv(const Elem& a) const {
        if (a.num.empty()) throw MathError("division by zero in F_q(T)");
        return normalize(a.den, a.num);
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    // x^q via coefficient spreads on numerator and denominator; coprimality
    // and monicity survive the q-power.
    Elem frobenius_q(const Elem& a) const {
        if (a.num.empty()) return zero();
        return {poly_q_power(base_, a.num), poly_q_power(base_, a.den)};
    }

    Elem pow_u64(const Elem& a, std::uint64_t e) const {
        Elem r = one(), base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

  private:
    Elem normalize(FqPoly num, FqPoly den) const {
        poly_trim(base_, num);
        poly_trim(base_, den);
        if (num.empty()) return zero();
        if (poly_deg<Fq>(den) > 0) {
            FqPoly g = poly_gcd(base_, num, den);
            if (poly_deg<Fq>(g) > 0) {
                num = poly_div_exact(base_, std::move(num), g);
                den = poly_div_exact(base_, std::move(den), g);
            }
        }
        if (!base_.eq(den.back(), base_.one())) {
            auto lc_inv = base_.inv(den.back());
            num = poly_scale(base_, num, lc_inv);
            den = poly_scale(base_, den, lc_inv);
        }
        return {std::move(num), std::move(den)};
    }

    Fq base_;
};

// ---------------------------------------------------------------------------
// places

struct Place {
    bool infinite = false;
    FqPoly gen;  // monic irreducible; empty when infinite

    unsigned degree() const { return infinite ? 1u : static_cast<unsigned>(gen.size() - 1); }
};

inline Place place_infinity() { return {true, {}}; }

inline Place make_place(const Fq& fq, FqPoly gen) {
    poly_trim(fq, gen);
    if (poly_deg<Fq>(gen) < 1) throw MathError("a finite place needs a polynomial of degree >= 1");
    gen = poly_make_monic(fq, std::move(gen));
    if (!poly_is_irreducible(fq, gen)) throw MathError("place generator is reducible");
    return {false, std::move(gen)};
}

inline bool place_eq(const Fq& fq, const Place& a, const Place& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || poly_eq(fq, a.gen, b.gen);
}

// Order used everywhere reports are emitted: by degree, then generator,
// with the infinite place after finite places of equal degree.
inline bool place_less(const Fq& fq, const Place& a, const Place& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.infinite != b.infinite) return !a.infinite;
    if (a.infinite) return false;
    return poly_less(fq, a.gen, b.gen);
}

// Multiplicity of the irreducible l in nonzero f.
inline unsigned poly_multiplicity(const Fq& fq, FqPoly f, const FqPoly& l) {
    unsigned count = 0;
    poly_trim(fq, f);
    for (;;) {
        if (f.size() < l.size()) return count;
        auto [q, r] = poly_divmod(fq, std::move(f), l);
        if (!r.empty()) return count;
        ++count;
        f = std::move(q);
    }
}

// Valuation of x at v; std::nullopt encodes +infinity (x = 0).
inline std::optional<long> valuation(const FuncField& F, const RationalFunction& x, const Place& v) {
    if (x.num.empty()) return std::nullopt;
    const Fq& fq = F.base_fq();
    if (v.infinite) return poly_deg<Fq>(x.den) - poly_deg<Fq>(x.num);
    long a = poly_multiplicity(fq, x.num, v.gen);
    long b = poly_multiplicity(fq, x.den, v.gen);
    return a - b;
}

// ---------------------------------------------------------------------------
// residue fields

// Residue field at a place, presented as F_q[T]/(l) for finite l and as the
// constant field (modulus z) at infinity. The reduction map is defined on
// v-integral rational functions and errors elsewhere.
struct ResidueField {
    PolyExt<Fq> field;
    Place place;

    PolyExt<Fq>::Elem reduce(const FuncField& F, const RationalFunction& x) const {
        const Fq& fq = F.base_fq();
        if (x.num.empty()) return field.zero();
        if (place.infinite) {
            long val = poly_deg<Fq>(x.den) - poly_deg<Fq>(x.num);
            if (val < 0) throw MathError("not v-integral");
            if (val > 0) return field.zero();
            return field.embed_base(fq.div(x.num.back(), x.den.back()));
        }
        FqPoly num = x.num, den = x.den;
        unsigned a = 0, b = 0;
        for (;;) {
            auto [q, r] = poly_divmod(fq, num, place.gen);
            if (!r.empty()) break;
            num = std::move(q);
            ++a;
        }
        for (;;) {
            auto [q, r] = poly_divmod(fq, den, place.gen);
            if (!r.empty()) break;
            den = std::move(q);
            ++b;
        }
        if (a < b) throw MathError("not v-integral");
        if (a > b) return field.zero();
        FqPoly unit = poly_mod(fq, poly_mul(fq, num, poly_inv_mod(fq, den, place.gen)), place.gen);
        unit.resize(place.degree(), fq.zero());
        return PolyExt<Fq>::Elem(unit.begin(), unit.end());
    }
};

inline ResidueField residue_field(const Fq& fq, const Place& v) {
    if (v.infinite) return {PolyExt<Fq>(fq, poly_x(fq), "T", false), v};
    return {PolyExt<Fq>(fq, v.gen, "T", false), v};
}

// ---------------------------------------------------------------------------
// factorization in A

// Factor a in A into monic irreducibles times a unit. Deterministic for a
// fixed seed; factors come back canonically sorted.
inline Factorization<Fq> factor(const Fq& fq, const FqPoly& a, std::uint64_t seed) {
    return poly_factor(fq, a, seed);
}

// ---------------------------------------------------------------------------
// text syntax

namespace detail {

struct Token {
    enum Kind { Int, Sym, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::uint64_t value = 0;  // Int
    std::string sym;          // Sym
};

class Lexer {
  public:
    explicit Lexer(std::string s) : s_(std::move(s)) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::End};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = v * 10 + (s_[pos_] - '0');
                if (v > (1ull << 62)) throw ParseError("integer literal too large");
                ++pos_;
            }
            tok_ = {Token::Int, v, ""};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string sym;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
                sym += s_[pos_++];
            tok_ = {Token::Sym, 0, sym};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': tok_ = {Token::Plus}; return;
            case '-': tok_ = {Token::Minus}; return;
            case '*': tok_ = {Token::Star}; return;
            case '/': tok_ = {Token::Slash}; return;
            case '^': tok_ = {Token::Caret}; return;
            case '(': tok_ = {Token::LParen}; return;
            case ')': tok_ = {Token::RParen}; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'");
        }
    }

    std::string s_;
    std::size_t pos_ = 0;
    Token tok_{Token::End};
};

// Recursive-descent evaluator over F = F_q(T); accepts T, g (extension
// generator), integers, + - * / ^ and parentheses.
class RationalParser {
  public:
    RationalParser(const FuncField& F, Lexer& lex) : F_(F), lex_(lex) {}

    RationalFunction parse_expr() {
        RationalFunction v = parse_term();
        for (;;) {
            if (lex_.peek().kind == Token::Plus) {
                lex_.take();
                v = F_.add(v, parse_term());
            } else if (lex_.peek().kind == Token::Minus) {
                lex_.take();
                v = F_.sub(v, parse_term());
            } else {
                return v;
            }
        }
    }

  private:
    RationalFunction parse_term() {
        RationalFunction v = parse_factor();
        for (;;) {
            if (lex_.peek().kind == Token::Star) {
                lex_.take();
                v = F_.mul(v, parse_factor());
            } else if (lex_.peek().kind == Token::Slash) {
                lex_.take();
                RationalFunction d = parse_factor();
                if (F_.is_zero(d)) throw ParseError("division by zero");
                v = F_.div(v, d);
            } else {
                return v;
            }
        }
    }

    RationalFunction parse_factor() {
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            return F_.neg(parse_factor());
        }
        RationalFunction base = parse_primary();
        if (lex_.peek().kind == Token::Caret) {
            lex_.take();
            Token e = lex_.take();
            if (e.kind != Token::Int) throw ParseError("expected integer exponent after '^'");
            if (e.value > 4096) throw ParseError("exponent too large: " + std::to_string(e.value));
            return F_.pow_u64(base, e.value);
        }
        return base;
    }

    RationalFunction parse_primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Int:
                return F_.from_poly(poly_const(F_.base_fq(), F_.base_fq().from_int(static_cast<std::int64_t>(t.value))));
            case Token::Sym:
                if (t.sym == "T") return F_.var_T();
                if (t.sym == "g") {
                    if (F_.base_fq().m() == 1)
                        throw ParseError("unknown symbol 'g' (prime field has no generator symbol)");
                    return F_.embed_fq(F_.base_fq().generator_g());
                }
                throw ParseError("unknown symbol '" + t.sym + "'");
            case Token::LParen: {
                RationalFunction v = parse_expr();
                if (lex_.take().kind != Token::RParen) throw ParseError("expected ')'");
                return v;
            }
            default: throw ParseError("unexpected token in polynomial expression");
        }
    }

    const FuncField& F_;
    Lexer& lex_;
};

}  // namespace detail

inline RationalFunction parse_rational(const Fq& fq, const std::string& text) {
    FuncField F(fq);
    detail::Lexer lex(text);
    detail::RationalParser parser(F, lex);
    RationalFunction v = parser.parse_expr();
    if (lex.peek().kind != detail::Token::End) throw ParseError("trailing input in expression");
    return v;
}

inline FqPoly parse_poly(const Fq& fq, const std::string& text) {
    RationalFunction v = parse_rational(fq, text);
    if (poly_deg<Fq>(v.den) != 0) throw ParseError("expected a polynomial, got a proper fraction");
    return v.num;
}

inline std::string print_coeff(const Fq& fq, const FqElem& c, bool* needs_parens) {
    std::string s = fq.to_string(c);
    if (needs_parens) *needs_parens = s.find('+') != std::string::npos;
    return s;
}

inline std::string print_poly(const Fq& fq, const FqPoly& a, const std::string& var = "T") {
    if (a.empty()) return "0";
    std::string out;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (fq.is_zero(a[i])) continue;
        if (!out.empty()) out += "+";
        bool parens = false;
        std::string c = print_coeff(fq, a[i], &parens);
        if (i == 0) {
            out += parens ? "(" + c + ")" : c;
        } else {
            if (!fq.eq(a[i], fq.one())) out += (parens ? "(" + c + ")" : c) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

inline std::string print_rational(const Fq& fq, const RationalFunction& x) {
    if (poly_deg<Fq>(x.den) == 0) return print_poly(fq, x.num);
    return "(" + print_poly(fq, x.num) + ")/(" + print_poly(fq, x.den) + ")";
}

inline std::string print_place(const Fq& fq, const Place& v) {
    return v.infinite ? "inf" : print_poly(fq, v.gen);
}

inline Place parse_place(const Fq& fq, const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "inf" || t == "infty" || t == "infinity" || t == "oo" || t == "∞")
        return place_infinity();
    return make_place(fq, parse_poly(fq, text));
}

}  // namespace drinfeld

#endif  // DRINFELD_BASE_FIELD_HPP
