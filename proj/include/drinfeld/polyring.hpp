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

// Dense univariate polynomial arithmetic over an abstract coefficient field
// object K (anything exposing the add/mul/inv/frobenius_q interface of
// gf.hpp). Coefficient index equals degree, no trailing zeros. Everything
// here is plumbing: gcds, irreducibility tests, and seeded Cantor-Zassenhaus
// factorization used for places, residue towers and S-sets.

#ifndef DRINFELD_POLYRING_HPP
#define DRINFELD_POLYRING_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/gf.hpp"
#include "drinfeld/rng.hpp"

namespace drinfeld {

template <class K>
using PolyOf = std::vector<typename K::Elem>;

using FqPoly = PolyOf<Fq>;

// Random coefficient drawn through the F_q coordinate interface, so the same
// generator works for base and tower fields.
template <class K>
typename K::Elem random_elem(const K& k, Rng& rng) {
    std::vector<FqElem> coords(k.fq_dim());
    const Fq& base = k.base_fq();
    for (auto& c : coords) c = base.random(rng);
    return k.from_fq(coords);
}

template <class K>
void poly_trim(const K& k, PolyOf<K>& a) {
    while (!a.empty() && k.is_zero(a.back())) a.pop_back();
}

template <class K>
bool poly_is_zero(const PolyOf<K>& a) {
    return a.empty();
}

// Degree of the zero polynomial is -1 by convention here.
template <class K>
long poly_deg(const PolyOf<K>& a) {
    return static_cast<long>(a.size()) - 1;
}

template <class K>
PolyOf<K> poly_one(const K& k) {
    return {k.one()};
}

template <class K>
PolyOf<K> poly_x(const K& k) {
    return {k.zero(), k.one()};
}

template <class K>
PolyOf<K> poly_const(const K& k, const typename K::Elem& c) {
    PolyOf<K> r{c};
    poly_trim(k, r);
    return r;
}

template <class K>
bool poly_eq(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!k.eq(a[i], b[i])) return false;
    return true;
}

template <class K>
PolyOf<K> poly_add(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    PolyOf<K> r(std::max(a.size(), b.size()), k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = k.add(r[i], b[i]);
    poly_trim(k, r);
    return r;
}

template <class K>
PolyOf<K> poly_neg(const K& k, PolyOf<K> a) {
    for (auto& c : a) c = k.neg(c);
    return a;
}

template <class K>
PolyOf<K> poly_sub(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    return poly_add(k, a, poly_neg(k, b));
}

template <class K>
PolyOf<K> poly_scale(const K& k, const PolyOf<K>& a, const typename K::Elem& c) {
    if (k.is_zero(c)) return {};
    PolyOf<K> r = a;
    for (auto& x : r) x = k.mul(x, c);
    poly_trim(k, r);
    return r;
}

template <class K>
PolyOf<K> poly_shift(const K& k, const PolyOf<K>& a, std::size_t e) {
    if (a.empty()) return {};
    PolyOf<K> r(a.size() + e, k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i + e] = a[i];
    return r;
}

// Schoolbook product, iterating over nonzeros of the sparser factor. The
// pipeline routinely multiplies a long Frobenius-spread polynomial (few
// nonzero entries) by a short dense one, so this matters.
template <class K>
PolyOf<K> poly_mul(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t na = 0, nb = 0;
    for (const auto& c : a) na += !k.is_zero(c);
    for (const auto& c : b) nb += !k.is_zero(c);
    const PolyOf<K>& outer = na <= nb ? a : b;
    const PolyOf<K>& inner = na <= nb ? b : a;
    PolyOf<K> r(a.size() + b.size() - 1, k.zero());
    for (std::size_t i = 0; i < outer.size(); ++i) {
        if (k.is_zero(outer[i])) continue;
        for (std::size_t j = 0; j < inner.size(); ++j) {
            if (k.is_zero(inner[j])) continue;
            r[i + j] = k.add(r[i + j], k.mul(outer[i], inner[j]));
        }
    }
    poly_trim(k, r);
    return r;
}

template <class K>
typename K::Elem poly_eval(const K& k, const PolyOf<K>& a, const typename K::Elem& x) {
    typename K::Elem r = k.zero();
    for (std::size_t i = a.size(); i-- > 0;) r = k.add(k.mul(r, x), a[i]);
    return r;
}

template <class K>
PolyOf<K> poly_derivative(const K& k, const PolyOf<K>& a) {
    if (a.size() < 2) return {};
    PolyOf<K> r(a.size() - 1, k.zero());
    const std::uint32_t p = k.p();
    for (std::size_t i = 1; i < a.size(); ++i) {
        typename K::Elem n = k.zero();
        for (std::size_t t = 0; t < i % p; ++t) n = k.add(n, k.one());
        r[i - 1] = k.mul(a[i], n);
    }
    poly_trim(k, r);
    return r;
}

template <class K>
std::pair<PolyOf<K>, PolyOf<K>> poly_divmod(const K& k, PolyOf<K> a, const PolyOf<K>& b) {
    if (b.empty()) throw MathError("polynomial division by zero");
    poly_trim(k, a);
    if (a.size() < b.size()) return {{}, std::move(a)};
    const auto lc_inv = k.inv(b.back());
    PolyOf<K> q(a.size() - b.size() + 1, k.zero());
    while (a.size() >= b.size()) {
        typename K::Elem c = k.mul(a.back(), lc_inv);
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = k.sub(a[shift + i], k.mul(c, b[i]));
        poly_trim(k, a);
        if (a.empty()) break;
    }
    poly_trim(k, q);
    return {std::move(q), std::move(a)};
}

template <class K>
PolyOf<K> poly_mod(const K& k, PolyOf<K> a, const PolyOf<K>& b) {
    return poly_divmod(k, std::move(a), b).second;
}

template <class K>
PolyOf<K> poly_div_exact(const K& k, PolyOf<K> a, const PolyOf<K>& b) {
    auto [q, r] = poly_divmod(k, std::move(a), b);
    if (!r.empty()) throw MathError("inexact polynomial division");
    return q;
}

template <class K>
PolyOf<K> poly_make_monic(const K& k, PolyOf<K> a) {
    poly_trim(k, a);
    if (a.empty() || k.eq(a.back(), k.one())) return a;
    return poly_scale(k, a, k.inv(a.back()));
}

// Monic gcd.
template <class K>
PolyOf<K> poly_gcd(const K& k, PolyOf<K> a, PolyOf<K> b) {
    poly_trim(k, a);
    poly_trim(k, b);
    while (!b.empty()) {
        PolyOf<K> r = poly_mod(k, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(k, std::move(a));
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
template <class K>
std::tuple<PolyOf<K>, PolyOf<K>, PolyOf<K>> poly_ext_gcd(const K& k, PolyOf<K> a, PolyOf<K> b) {
    PolyOf<K> s0 = poly_one(k), s1 = {};
    PolyOf<K> t0 = {}, t1 = poly_one(k);
    poly_trim(k, a);
    poly_trim(k, b);
    while (!b.empty()) {
        auto [q, r] = poly_divmod(k, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
        PolyOf<K> s2 = poly_sub(k, s0, poly_mul(k, q, s1));
        PolyOf<K> t2 = poly_sub(k, t0, poly_mul(k, q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.empty()) return {a, s0, t0};
    auto lc_inv = k.inv(a.back());
    return {poly_scale(k, a, lc_inv), poly_scale(k, s0, lc_inv), poly_scale(k, t0, lc_inv)};
}

// Inverse of a modulo monic f; requires gcd(a, f) = 1.
template <class K>
PolyOf<K> poly_inv_mod(const K& k, const PolyOf<K>& a, const PolyOf<K>& f) {
    auto [g, s, t] = poly_ext_gcd(k, a, f);
    (void)t;
    if (poly_deg<K>(g) != 0) throw MathError("element not invertible modulo the given polynomial");
    return poly_mod(k, std::move(s), f);
}

template <class K>
PolyOf<K> poly_powmod_u64(const K& k, PolyOf<K> base, std::uint64_t e, const PolyOf<K>& f) {
    PolyOf<K> r = poly_one(k);
    base = poly_mod(k, std::move(base), f);
    while (e) {
        if (e & 1) r = poly_mod(k, poly_mul(k, r, base), f);
        base = poly_mod(k, poly_mul(k, base, base), f);
        e >>= 1;
    }
    return r;
}

// h(x)^q, using (sum c_i x^i)^q = sum c_i^q x^(iq) in characteristic p.
template <class K>
PolyOf<K> poly_q_power(const K& k, const PolyOf<K>& h) {
    if (h.empty()) return {};
    const std::uint64_t q = k.q();
    PolyOf<K> r((h.size() - 1) * q + 1, k.zero());
    for (std::size_t i = 0; i < h.size(); ++i)
        if (!k.is_zero(h[i])) r[i * q] = k.frobenius_q(h[i]);
    return r;
}

// h(x)^(q^steps) mod f by iterated q-power spreads.
template <class K>
PolyOf<K> poly_q_power_mod(const K& k, PolyOf<K> h, unsigned steps, const PolyOf<K>& f) {
    h = poly_mod(k, std::move(h), f);
    for (unsigned i = 0; i < steps; ++i) h = poly_mod(k, poly_q_power(k, h), f);
    return h;
}

// h(x)^|K| mod f where |K| = q^(fq_dim).
template <class K>
PolyOf<K> poly_card_power_mod(const K& k, PolyOf<K> h, const PolyOf<K>& f) {
    return poly_q_power_mod(k, std::move(h), k.fq_dim(), f);
}

template <class K>
bool poly_is_irreducible(const K& k, const PolyOf<K>& f0) {
    PolyOf<K> f = poly_make_monic(k, f0);
    long n = poly_deg<K>(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    const unsigned e = k.fq_dim();
    // x^(|K|^n) == x mod f, and gcd(x^(|K|^(n/r)) - x, f) = 1 for prime r | n
    PolyOf<K> x = poly_x(k);
    PolyOf<K> xn = poly_q_power_mod(k, x, e * static_cast<unsigned>(n), f);
    if (!poly_eq(k, xn, poly_mod(k, x, f))) return false;
    unsigned rest = static_cast<unsigned>(n);
    for (unsigned r = 2; r <= rest; ++r) {
        if (rest % r != 0) continue;
        while (rest % r == 0) rest /= r;
        PolyOf<K> xr = poly_q_power_mod(k, x, e * (static_cast<unsigned>(n) / r), f);
        PolyOf<K> d = poly_sub(k, xr, poly_mod(k, x, f));
        if (poly_deg<K>(poly_gcd(k, f, d)) != 0) return false;
    }
    return true;
}

template <class K>
PolyOf<K> poly_random_monic(const K& k, unsigned deg, Rng& rng) {
    PolyOf<K> f(deg + 1, k.zero());
    f[deg] = k.one();
    for (unsigned i = 0; i < deg; ++i) f[i] = random_elem(k, rng);
    return f;
}

// Deterministic search for a monic irreducible of given degree.
template <class K>
PolyOf<K> poly_random_irreducible(const K& k, unsigned deg, Rng& rng) {
    if (deg == 0) throw MathError("irreducible polynomial must have degree >= 1");
    for (int tries = 0; tries < 65536; ++tries) {
        PolyOf<K> f = poly_random_monic(k, deg, rng);
        if (poly_is_irreducible(k, f)) return f;
    }
    throw MathError("failed to find an irreducible polynomial (degree " + std::to_string(deg) + ")");
}

namespace detail {

// a^p by square-and-multiply; p is small.
template <class K>
typename K::Elem elem_p_power(const K& k, const typename K::Elem& a) {
    typename K::Elem r = k.one(), base = a;
    std::uint32_t e = k.p();
    while (e) {
        if (e & 1) r = k.mul(r, base);
        base = k.mul(base, base);
        e >>= 1;
    }
    return r;
}

// Inverse of x -> x^p on a field with p^s elements: x -> x^(p^(s-1)).
template <class K>
typename K::Elem elem_p_root(const K& k, const typename K::Elem& a) {
    typename K::Elem r = a;
    unsigned s = k.log_p_card();
    for (unsigned i = 0; i + 1 < s; ++i) r = elem_p_power(k, r);
    return r;
}

// f = g(x^p) -> g, with p-th roots of coefficients.
template <class K>
PolyOf<K> poly_p_root(const K& k, const PolyOf<K>& f) {
    const std::uint32_t p = k.p();
    PolyOf<K> g((f.size() - 1) / p + 1, k.zero());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (k.is_zero(f[i])) continue;
        if (i % p != 0) throw MathError("polynomial is not a p-th power");
        g[i / p] = elem_p_root(k, f[i]);
    }
    poly_trim(k, g);
    return g;
}

template <class K>
void squarefree_accumulate(const K& k, PolyOf<K> f, unsigned mult,
                           std::vector<std::pair<PolyOf<K>, unsigned>>& out) {
    f = poly_make_monic(k, std::move(f));
    if (poly_deg<K>(f) <= 0) return;
    PolyOf<K> fp = poly_derivative(k, f);
    if (fp.empty()) {
        squarefree_accumulate(k, poly_p_root(k, f), mult * k.p(), out);
        return;
    }
    PolyOf<K> c = poly_gcd(k, f, fp);
    PolyOf<K> w = poly_div_exact(k, f, c);
    unsigned i = 1;
    while (poly_deg<K>(w) > 0) {
        PolyOf<K> y = poly_gcd(k, w, c);
        PolyOf<K> piece = poly_div_exact(k, w, y);
        if (poly_deg<K>(piece) > 0) out.emplace_back(piece, mult * i);
        w = std::move(y);
        c = poly_div_exact(k, c, w);
        ++i;
    }
    if (poly_deg<K>(c) > 0) squarefree_accumulate(k, poly_p_root(k, c), mult * k.p(), out);
}

// Splits a monic squarefree product of degree-d irreducibles.
template <class K>
void edf(const K& k, const PolyOf<K>& f, unsigned d, Rng& rng, std::vector<PolyOf<K>>& out) {
    const long n = poly_deg<K>(f);
    if (n == static_cast<long>(d)) {
        out.push_back(f);
        return;
    }
    const unsigned e = k.fq_dim();
    std::uint64_t card = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (card > (std::uint64_t(1) << 62) / k.q()) throw MathError("field too large for equal-degree splitting");
        card *= k.q();
    }
    for (;;) {
        PolyOf<K> r(n, k.zero());
        for (long i = 0; i < n; ++i) r[i] = random_elem(k, rng);
        poly_trim(k, r);
        if (poly_deg<K>(r) < 1) continue;
        PolyOf<K> s;
        if (k.p() == 2) {
            // trace map over F_2
            unsigned steps = k.log_p_card() * d;
            PolyOf<K> t = poly_mod(k, r, f);
            s = t;
            for (unsigned i = 1; i < steps; ++i) {
                t = poly_mod(k, poly_mul(k, t, t), f);
                s = poly_add(k, s, t);
            }
        } else {
            // norm down to the degree-d subfield, then a ((card-1)/2)-power;
            // avoids ever forming the huge exponent (card^d - 1)/2
            PolyOf<K> t = poly_mod(k, r, f);
            s = t;
            for (unsigned i = 1; i < d; ++i) {
                t = poly_card_power_mod(k, t, f);
                s = poly_mod(k, poly_mul(k, s, t), f);
            }
            s = poly_powmod_u64(k, s, (card - 1) / 2, f);
            s = poly_sub(k, s, poly_one(k));
        }
        PolyOf<K> g = poly_gcd(k, f, s);
        long dg = poly_deg<K>(g);
        if (dg > 0 && dg < n) {
            edf(k, g, d, rng, out);
            edf(k, poly_div_exact(k, f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace detail

// Canonical order: by degree, then by flattened coefficients from the top.
template <class K>
bool poly_less(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;) {
        auto ca = k.to_fq(a[i]), cb = k.to_fq(b[i]);
        if (!(ca == cb)) {
            for (std::size_t j = 0; j < ca.size(); ++j)
                if (ca[j].rep != cb[j].rep) return ca[j].rep < cb[j].rep;
        }
    }
    return false;
}

template <class K>
struct Factorization {
    typename K::Elem unit{};
    std::vector<std::pair<PolyOf<K>, unsigned>> factors;  // monic irreducible, multiplicity
};

// Full factorization over a finite coefficient field: squarefree split,
// distinct-degree, then seeded equal-degree splitting. Deterministic for a
// fixed seed. Throws on zero input.
template <class K>
Factorization<K> poly_factor(const K& k, PolyOf<K> f, std::uint64_t seed) {
    poly_trim(k, f);
    if (f.empty()) throw MathError("zero polynomial has no factorization");
    Factorization<K> result;
    result.unit = f.back();
    if (poly_deg<K>(f) == 0) return result;
    std::vector<std::pair<PolyOf<K>, unsigned>> squarefree;
    detail::squarefree_accumulate(k, f, 1, squarefree);
    Rng rng(derive_seed(seed, "poly-factor"));
    for (auto& [piece, mult] : squarefree) {
        PolyOf<K> rest = piece;
        PolyOf<K> h = poly_mod(k, poly_x(k), rest);
        unsigned d = 0;
        while (poly_deg<K>(rest) > 0) {
            ++d;
            if (2 * d > static_cast<unsigned>(poly_deg<K>(rest))) {
                result.factors.emplace_back(rest, mult);  // remainder is irreducible
                break;
            }
            h = poly_card_power_mod(k, h, rest);
            PolyOf<K> g = poly_gcd(k, rest, poly_sub(k, h, poly_x(k)));
            if (poly_deg<K>(g) > 0) {
                std::vector<PolyOf<K>> irr;
                detail::edf(k, g, d, rng, irr);
                for (auto& pfac : irr) result.factors.emplace_back(std::move(pfac), mult);
                rest = poly_div_exact(k, rest, g);
                h = poly_mod(k, h, rest);
            }
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [&](const auto& a, const auto& b) { return poly_less(k, a.first, b.first); });
    return result;
}

// Number of monic irreducible factors of a squarefree polynomial, via
// distinct-degree factorization alone (no splitting needed).
template <class K>
unsigned poly_count_irreducible_factors(const K& k, PolyOf<K> f) {
    f = poly_make_monic(k, std::move(f));
    if (poly_deg<K>(f) <= 0) throw MathError("factor count requires positive degree");
    unsigned count = 0;
    PolyOf<K> rest = f;
    PolyOf<K> h = poly_mod(k, poly_x(k), rest);
    unsigned d = 0;
    while (poly_deg<K>(rest) > 0) {
        ++d;
        if (2 * d > static_cast<unsigned>(poly_deg<K>(rest))) {
            ++count;
            break;
        }
        h = poly_card_power_mod(k, h, rest);
        PolyOf<K> g = poly_gcd(k, rest, poly_sub(k, h, poly_x(k)));
        if (poly_deg<K>(g) > 0) {
            count += static_cast<unsigned>(poly_deg<K>(g)) / d;
            rest = poly_div_exact(k, rest, g);
            h = poly_mod(k, h, rest);
        }
    }
    return count;
}

}  // namespace drinfeld

#endif  // DRINFELD_POLYRING_HPP
