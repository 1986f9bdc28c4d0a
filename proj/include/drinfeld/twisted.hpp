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

// The twisted polynomial ring K{t} with t*a = a^q*t, for any coefficient
// field object K. The map eta identifies K{t} with the F_q-linear
// polynomials sum a_i x^(q^i) under composition; SparsePoly provides the
// ordinary-polynomial side of that bridge with plain convolution products,
// so the two sides of the isomorphism are computed along genuinely
// different routes.

#ifndef DRINFELD_TWISTED_HPP
#define DRINFELD_TWISTED_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/base_field.hpp"
#include "drinfeld/errors.hpp"

namespace drinfeld {

// ---------------------------------------------------------------------------
// ordinary sparse polynomials

template <class K>
struct SparsePoly {
    K field;
    std::vector<std::pair<std::uint64_t, typename K::Elem>> terms;  // ascending exponents, nonzero
};

template <class K>
SparsePoly<K> sp_make(const K& k, std::map<std::uint64_t, typename K::Elem> collected) {
    SparsePoly<K> r{k, {}};
    for (auto& [e, c] : collected)
        if (!k.is_zero(c)) r.terms.emplace_back(e, c);
    return r;
}

template <class K>
bool sp_eq(const SparsePoly<K>& a, const SparsePoly<K>& b) {
    if (!(a.field == b.field) || a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].first != b.terms[i].first || !a.field.eq(a.terms[i].second, b.terms[i].second))
            return false;
    return true;
}

template <class K>
SparsePoly<K> sp_add(const SparsePoly<K>& a, const SparsePoly<K>& b) {
    const K& k = a.field;
    std::map<std::uint64_t, typename K::Elem> acc;
    for (auto& [e, c] : a.terms) acc.emplace(e, c);
    for (auto& [e, c] : b.terms) {
        auto [it, fresh] = acc.emplace(e, c);
        if (!fresh) it->second = k.add(it->second, c);
    }
    return sp_make(k, std::move(acc));
}

// Plain convolution; cancellations (including the characteristic-p collapse
// of binomial terms) emerge from the coefficient arithmetic itself.
template <class K>
SparsePoly<K> sp_mul(const SparsePoly<K>& a, const SparsePoly<K>& b) {
    const K& k = a.field;
    std::map<std::uint64_t, typename K::Elem> acc;
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            std::uint64_t e = ea + eb;
            typename K::Elem prod = k.mul(ca, cb);
            auto [it, fresh] = acc.emplace(e, prod);
            if (!fresh) it->second = k.add(it->second, prod);
        }
    return sp_make(k, std::move(acc));
}

// g^(q^i) chains by repeated small powers g -> g^p (p-1 honest products).
template <class K>
SparsePoly<K> sp_pow_q(const K& k, SparsePoly<K> g, unsigned q_steps) {
    const std::uint32_t p = k.p();
    unsigned m = 0;
    for (std::uint64_t t = k.q(); t > 1; t /= p) ++m;  // q = p^m
    for (unsigned s = 0; s < q_steps * m; ++s) {
        SparsePoly<K> acc = g;
        for (std::uint32_t i = 1; i < p; ++i) acc = sp_mul(acc, g);
        g = std::move(acc);
    }
    return g;
}

// f(g(x)) for f supported on q-power exponents.
template <class K>
SparsePoly<K> sp_compose_linearized(const SparsePoly<K>& f, const SparsePoly<K>& g) {
    const K& k = f.field;
    SparsePoly<K> result{k, {}};
    SparsePoly<K> gpow = g;  // g^(q^i), advanced lazily
    std::uint64_t cur_i = 0;
    for (auto& [e, c] : f.terms) {
        // e must be q^i
        std::uint64_t i = 0, v = e;
        while (v > 1 && v % k.q() == 0) {
            v /= k.q();
            ++i;
        }
        if (v != 1) throw MathError("composition source is not F_q-linear");
        while (cur_i < i) {
            gpow = sp_pow_q(k, std::move(gpow), 1);
            ++cur_i;
        }
        SparsePoly<K> scaled = gpow;
        for (auto& [se, sc] : scaled.terms) sc = k.mul(c, sc);
        std::map<std::uint64_t, typename K::Elem> acc;
        for (auto& [re, rc] : result.terms) acc.emplace(re, rc);
        for (auto& [se, sc] : scaled.terms) {
            auto [it, fresh] = acc.emplace(se, sc);
            if (!fresh) it->second = k.add(it->second, sc);
        }
        result = sp_make(k, std::move(acc));
    }
    return result;
}

template <class K>
typename K::Elem sp_eval(const SparsePoly<K>& f, const typename K::Elem& x) {
    const K& k = f.field;
    typename K::Elem r = k.zero();
    for (auto& [e, c] : f.terms) r = k.add(r, k.mul(c, k.pow_u64(x, e)));
    return r;
}

// ---------------------------------------------------------------------------
// twisted polynomials

template <class K>
struct TwistedPoly {
    K field;
    std::vector<typename K::Elem> c;  // tau-coefficients, no trailing zeros
};

template <class K>
TwistedPoly<K> tw_make(const K& k, std::vector<typename K::Elem> coeffs) {
    while (!coeffs.empty() && k.is_zero(coeffs.back())) coeffs.pop_back();
    return {k, std::move(coeffs)};
}

template <class K>
TwistedPoly<K> tw_zero(const K& k) {
    return {k, {}};
}

template <class K>
TwistedPoly<K> tw_one(const K& k) {
    return {k, {k.one()}};
}

template <class K>
TwistedPoly<K> tw_const(const K& k, const typename K::Elem& a) {
    return tw_make(k, {a});
}

template <class K>
bool tw_is_zero(const TwistedPoly<K>& f) {
    return f.c.empty();
}

template <class K>
bool tw_eq(const TwistedPoly<K>& a, const TwistedPoly<K>& b) {
    if (!(a.field == b.field) || a.c.size() != b.c.size()) return false;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (!a.field.eq(a.c[i], b.c[i])) return false;
    return true;
}

template <class K>
void tw_check_fields(const TwistedPoly<K>& a, const TwistedPoly<K>& b) {
    if (!(a.field == b.field)) throw MathError("mixed coefficient fields in twisted arithmetic");
}

template <class K>
TwistedPoly<K> tw_add(const TwistedPoly<K>& a, const TwistedPoly<K>& b) {
    tw_check_fields(a, b);
    const K& k = a.field;
    std::vector<typename K::Elem> r(std::max(a.c.size(), b.c.size()), k.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = k.add(r[i], b.c[i]);
    return tw_make(k, std::move(r));
}

template <class K>
TwistedPoly<K> tw_neg(const TwistedPoly<K>& a) {
    TwistedPoly<K> r = a;
    for (auto& x : r.c) x = r.field.neg(x);
    return r;
}

template <class K>
TwistedPoly<K> tw_sub(const TwistedPoly<K>& a, const TwistedPoly<K>& b) {
    return tw_add(a, tw_neg(b));
}

// Noncommutative product: (a_i tau^i)(b_j tau^j) = a_i b_j^(q^i) tau^(i+j).
template <class K>
TwistedPoly<K> tw_mul(const TwistedPoly<K>& a, const TwistedPoly<K>& b) {
    tw_check_fields(a, b);
    const K& k = a.field;
    if (a.c.empty() || b.c.empty()) return tw_zero(k);
    std::vector<typename K::Elem> r(a.c.size() + b.c.size() - 1, k.zero());
    // b twisted by successive Frobenius powers as i advances
    std::vector<typename K::Elem> btw = b.c;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (i > 0)
            for (auto& x : btw) x = k.frobenius_q(x);
        if (!k.is_zero(a.c[i]))
            for (std::size_t j = 0; j < btw.size(); ++j)
                if (!k.is_zero(btw[j])) r[i + j] = k.add(r[i + j], k.mul(a.c[i], btw[j]));
    }
    return tw_make(k, std::move(r));
}

template <class K>
TwistedPoly<K> tw_scale(const TwistedPoly<K>& a, const typename K::Elem& c) {
    return tw_mul(tw_const(a.field, c), a);
}

template <class K>
long tw_deg(const TwistedPoly<K>& f) {
    return static_cast<long>(f.c.size()) - 1;
}

// Height, degree, formal derivative and separability in one bundle.
template <class K>
struct TwistedInvariants {
    unsigned height;
    unsigned degree;
    typename K::Elem derivative;
    bool separable;
};

template <class K>
TwistedInvariants<K> tw_invariants(const TwistedPoly<K>& f) {
    const K& k = f.field;
    if (f.c.empty()) throw MathError("height and degree are undefined for the zero twisted polynomial");
    unsigned h = 0;
    while (k.is_zero(f.c[h])) ++h;
    return {h, static_cast<unsigned>(f.c.size() - 1), h == 0 ? f.c[0] : k.zero(), h == 0};
}

// The formal derivative of eta(f); defined for every f, zero included.
template <class K>
typename K::Elem tw_derivative(const TwistedPoly<K>& f) {
    return f.c.empty() ? f.field.zero() : f.c[0];
}

// eta: sum a_i tau^i -> sum a_i x^(q^i).
template <class K>
SparsePoly<K> eta(const TwistedPoly<K>& f) {
    const K& k = f.field;
    SparsePoly<K> r{k, {}};
    std::uint64_t e = 1;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (!k.is_zero(f.c[i])) r.terms.emplace_back(e, f.c[i]);
        if (e > (std::uint64_t(1) << 62) / k.q()) {
            if (i + 1 < f.c.size()) throw MathError("eta image exponent overflow");
        } else {
            e *= k.q();
        }
    }
    return r;
}

template <class K>
TwistedPoly<K> eta_inv(const K& k, const SparsePoly<K>& f) {
    std::vector<typename K::Elem> c;
    for (auto& [e, coeff] : f.terms) {
        std::uint64_t i = 0, v = e;
        while (v > 1 && v % k.q() == 0) {
            v /= k.q();
            ++i;
        }
        if (v != 1) throw MathError("not F_q-linear: exponent " + std::to_string(e) + " is not a power of q");
        if (c.size() <= i) c.resize(i + 1, k.zero());
        c[i] = coeff;
    }
    return tw_make(k, std::move(c));
}

// Value of eta(f) at x, by iterated q-power Frobenius.
template <class K>
typename K::Elem tw_evaluate(const TwistedPoly<K>& f, const typename K::Elem& x) {
    const K& k = f.field;
    typename K::Elem acc = k.zero(), xq = x;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (i > 0) xq = k.frobenius_q(xq);
        if (!k.is_zero(f.c[i])) acc = k.add(acc, k.mul(f.c[i], xq));
    }
    return acc;
}

// Same, with coefficients pushed through an embedding into a larger field E.
template <class K, class E, class Embed>
typename E::Elem tw_evaluate_in(const TwistedPoly<K>& f, const E& ext, Embed&& embed,
                                const typename E::Elem& x) {
    typename E::Elem acc = ext.zero(), xq = x;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (i > 0) xq = ext.frobenius_q(xq);
        if (!f.field.is_zero(f.c[i])) acc = ext.add(acc, ext.mul(embed(f.c[i]), xq));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// text form over F = F_q(T): sums of "<coeff>*t^<k>" with t denoting tau

inline std::string print_twisted(const FuncField& F, const TwistedPoly<FuncField>& f) {
    const Fq& fq = F.base_fq();
    if (f.c.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (F.is_zero(f.c[i])) continue;
        std::string c = print_rational(fq, f.c[i]);
        bool parens = c.find('+') != std::string::npos && c.front() != '(';
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += c;
        } else {
            out += (parens ? "(" + c + ")" : c) + "*t^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

inline TwistedPoly<FuncField> parse_twisted(const FuncField& F, const std::string& text) {
    // split into top-level terms, then peel an optional "*t^k" suffix
    std::vector<std::pair<char, std::string>> terms;  // sign, body
    {
        int depth = 0;
        char sign = '+';
        std::string cur;
        for (char ch : text) {
            if (ch == '(') ++depth;
            if (ch == ')') --depth;
            if (depth == 0 && (ch == '+' || ch == '-') && !cur.empty()) {
                terms.emplace_back(sign, cur);
                sign = ch;
                cur.clear();
            } else if (!(depth == 0 && (ch == '+' || ch == '-') && cur.empty())) {
                cur += ch;
            } else {
                // leading sign of the very first term
                sign = ch == '-' ? (sign == '-' ? '+' : '-') : sign;
            }
        }
        if (!cur.empty()) terms.emplace_back(sign, cur);
    }
    std::vector<RationalFunction> coeffs;
    const Fq& fq = F.base_fq();
    auto place_coeff = [&](std::size_t idx, const RationalFunction& v) {
        if (coeffs.size() <= idx) coeffs.resize(idx + 1, F.zero());
        coeffs[idx] = F.add(coeffs[idx], v);
    };
    for (auto& [sign, body] : terms) {
        // locate a trailing t^k / t at depth 0
        std::size_t tpos = std::string::npos;
        int depth = 0;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '(') ++depth;
            if (body[i] == ')') --depth;
            if (depth == 0 && body[i] == 't' &&
                (i + 1 == body.size() || body[i + 1] == '^' || std::isspace(static_cast<unsigned char>(body[i + 1])))) {
                tpos = i;
                break;
            }
        }
        std::size_t tau_exp = 0;
        std::string coeff_text;
        if (tpos == std::string::npos) {
            coeff_text = body;
        } else {
            std::string tail = body.substr(tpos + 1);
            std::size_t k = 1;
            std::string trimmed;
            for (char ch : tail)
                if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
            if (!trimmed.empty()) {
                if (trimmed[0] != '^') throw ParseError("malformed tau term near 't'");
                k = 0;
                for (std::size_t i = 1; i < trimmed.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(trimmed[i])))
                        throw ParseError("malformed tau exponent");
                    k = k * 10 + (trimmed[i] - '0');
                    if (k > 1024) throw ParseError("tau exponent too large");
                }
            }
            tau_exp = k;
            coeff_text = body.substr(0, tpos);
            // strip a trailing '*' and whitespace
            while (!coeff_text.empty() && std::isspace(static_cast<unsigned char>(coeff_text.back())))
                coeff_text.pop_back();
            if (!coeff_text.empty()) {
                if (coeff_text.back() != '*') throw ParseError("malformed tau term: expected '*t'");
                coeff_text.pop_back();
            }
        }
        RationalFunction c =
            coeff_text.empty() ? F.one() : parse_rational(fq, coeff_text);
        if (sign == '-') c = F.neg(c);
        place_coeff(tau_exp, c);
    }
    std::vector<RationalFunction> cc(coeffs.begin(), coeffs.end());
    return tw_make(F, std::move(cc));
}

}  // namespace drinfeld

#endif  // DRINFELD_TWISTED_HPP
