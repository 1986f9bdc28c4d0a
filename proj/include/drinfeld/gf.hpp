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

// The base coefficient field F_q, q = p^m. Elements are packed into a single
// word as base-p digit strings, so an element doubles as its own enumeration
// index in [0, q). Extension fields (m >= 2) need an explicit monic
// irreducible modulus over F_p; there is no built-in modulus table, the
// caller supplies one and it is validated here.
//
// Multiplication uses log/exp tables over a fixed generator when q is small
// enough, with a digit-polynomial fallback above the table limit. The q-power
// Frobenius on F_q itself is the identity and is exposed as such.

#ifndef DRINFELD_GF_HPP
#define DRINFELD_GF_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/rng.hpp"

namespace drinfeld {

struct FqElem {
    std::uint64_t rep = 0;  // sum c_i p^i with digits c_i < p
    friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomial helpers over the prime field F_p, used only to validate
// extension moduli and run table-free element arithmetic. Coefficient index
// equals degree; no trailing zeros.
using PPoly = std::vector<std::uint32_t>;

inline void ppoly_trim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly ppoly_mul(const PPoly& a, const PPoly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
    ppoly_trim(r);
    return r;
}

inline std::uint32_t pinv_u32(std::uint32_t a, std::uint32_t p) {
    // Fermat; p is prime and a != 0 mod p.
    std::uint64_t r = 1, b = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo monic f.
inline PPoly ppoly_mod(PPoly a, const PPoly& f, std::uint32_t p) {
    ppoly_trim(a);
    const std::size_t df = f.size() - 1;
    while (a.size() > df) {
        std::uint32_t c = a.back();
        std::size_t shift = a.size() - 1 - df;
        if (c != 0)
            for (std::size_t i = 0; i < f.size(); ++i) {
                std::uint64_t sub = static_cast<std::uint64_t>(c) * f[i] % p;
                std::uint32_t& slot = a[shift + i];
                slot = static_cast<std::uint32_t>((slot + p - sub) % p);
            }
        a.pop_back();
        ppoly_trim(a);
    }
    return a;
}

inline PPoly ppoly_gcd(PPoly a, PPoly b, std::uint32_t p) {
    ppoly_trim(a);
    ppoly_trim(b);
    while (!b.empty()) {
        // make b monic before reducing
        PPoly bm = b;
        std::uint32_t inv = pinv_u32(bm.back(), p);
        for (auto& c : bm) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * inv % p);
        PPoly r = ppoly_mod(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline PPoly ppoly_powmod(PPoly base, std::uint64_t e, const PPoly& f, std::uint32_t p) {
    PPoly r{1};
    base = ppoly_mod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = ppoly_mod(ppoly_mul(r, base, p), f, p);
        base = ppoly_mod(ppoly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

// x^(p^k) mod f by k successive p-th powers.
inline PPoly ppoly_frob_iter(const PPoly& start, unsigned k, const PPoly& f, std::uint32_t p) {
    PPoly x = start;
    for (unsigned i = 0; i < k; ++i) x = ppoly_powmod(std::move(x), p, f, p);
    return x;
}

inline bool ppoly_is_irreducible(const PPoly& f, std::uint32_t p) {
    if (f.size() < 2) return false;
    const unsigned m = static_cast<unsigned>(f.size() - 1);
    if (m == 1) return true;
    // x^(p^m) == x mod f, and gcd(x^(p^(m/r)) - x, f) = 1 for prime r | m.
    PPoly x{0, 1};
    PPoly xm = ppoly_frob_iter(x, m, f, p);
    PPoly diff = xm;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    ppoly_trim(diff);
    if (!diff.empty()) return false;
    unsigned rest = m;
    for (unsigned r = 2; r <= rest; ++r) {
        if (rest % r != 0) continue;
        while (rest % r == 0) rest /= r;
        PPoly xr = ppoly_frob_iter(x, m / r, f, p);
        PPoly d = xr;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        ppoly_trim(d);
        PPoly g = ppoly_gcd(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

class Fq {
  public:
    using Elem = FqElem;

    // Prime field F_p.
    explicit Fq(std::uint32_t p) : p_(p), m_(1), q_(p) {
        if (!detail::is_prime_u32(p)) throw MathError("field characteristic must be prime, got " + std::to_string(p));
        init_tables();
    }

    // F_p[g]/(modulus); modulus coefficients over F_p by ascending degree,
    // monic of degree m >= 2, irreducible.
    Fq(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
        if (!detail::is_prime_u32(p)) throw MathError("field characteristic must be prime, got " + std::to_string(p));
        detail::ppoly_trim(mod_);
        if (mod_.size() < 3) throw MathError("extension modulus must have degree >= 2");
        for (auto c : mod_)
            if (c >= p) throw MathError("modulus coefficient out of range for F_p");
        if (mod_.back() != 1) throw MathError("extension modulus must be monic");
        if (!detail::ppoly_is_irreducible(mod_, p)) throw MathError("extension modulus is reducible over F_p");
        m_ = static_cast<unsigned>(mod_.size() - 1);
        q_ = 1;
        for (unsigned i = 0; i < m_; ++i) {
            if (q_ > (std::uint64_t(1) << 62) / p_) throw MathError("field cardinality too large");
            q_ *= p_;
        }
        init_tables();
    }

    std::uint32_t p() const { return p_; }
    unsigned m() const { return m_; }
    std::uint64_t q() const { return q_; }
    unsigned log_p_card() const { return m_; }
    const Fq& base_fq() const { return *this; }
    const std::vector<std::uint32_t>& modulus() const { return mod_; }

    friend bool operator==(const Fq& a, const Fq& b) {
        return a.p_ == b.p_ && a.m_ == b.m_ && a.mod_ == b.mod_;
    }

    Elem zero() const { return {}; }
    Elem one() const { return {1}; }
    Elem generator_g() const { return m_ == 1 ? Elem{0} : Elem{p_}; }  // the class of g

    bool is_zero(const Elem& a) const { return a.rep == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a.rep == b.rep; }

    // Embedding of the prime subfield (handles negatives).
    Elem from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return Elem{static_cast<std::uint64_t>(r)};
    }

    // Every value in [0, q) is a valid packed element.
    Elem from_index(std::uint64_t idx) const { return Elem{idx % q_}; }

    // The F_q -> K embedding, trivial at the bottom of a tower.
    Elem embed_fq(const FqElem& c) const { return c; }

    Elem from_digits(const std::vector<std::uint32_t>& digits) const {
        std::uint64_t rep = 0, scale = 1;
        for (unsigned i = 0; i < m_; ++i) {
            std::uint32_t d = i < digits.size() ? digits[i] % p_ : 0;
            rep += d * scale;
            scale *= p_;
        }
        return Elem{rep};
    }

    std::vector<std::uint32_t> digits(const Elem& a) const {
        std::vector<std::uint32_t> d(m_);
        std::uint64_t r = a.rep;
        for (unsigned i = 0; i < m_; ++i) {
            d[i] = static_cast<std::uint32_t>(r % p_);
            r /= p_;
        }
        return d;
    }

    Elem add(const Elem& a, const Elem& b) const {
        if (m_ == 1) return Elem{(a.rep + b.rep) % p_};
        std::uint64_t rep = 0, scale = 1, x = a.rep, y = b.rep;
        for (unsigned i = 0; i < m_; ++i) {
            rep += ((x % p_ + y % p_) % p_) * scale;
            x /= p_;
            y /= p_;
            scale *= p_;
        }
        return Elem{rep};
    }

    Elem neg(const Elem& a) const {
        if (m_ == 1) return Elem{a.rep ? p_ - a.rep : 0};
        std::uint64_t rep = 0, scale = 1, x = a.rep;
        for (unsigned i = 0; i < m_; ++i) {
            std::uint64_t d = x % p_;
            rep += (d ? p_ - d : 0) * scale;
            x /= p_;
            scale *= p_;
        }
        return Elem{rep};
    }

    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

    Elem mul(const Elem& a, const Elem& b) const {
        if (a.rep == 0 || b.rep == 0) return {};
        if (m_ == 1) return Elem{a.rep * b.rep % p_};
        if (tables_) return Elem{exp_[(log_[a.rep] + log_[b.rep]) % (q_ - 1)]};
        return mul_raw(a, b);
    }

    Elem inv(const Elem& a) const {
        if (a.rep == 0) throw MathError("division by zero in F_q");
        if (m_ == 1) return Elem{detail::pinv_u32(static_cast<std::uint32_t>(a.rep), p_)};
        if (tables_) return Elem{exp_[(q_ - 1 - log_[a.rep]) % (q_ - 1)]};
        return pow_u64(a, q_ - 2);  // q-2 fits: no-table fields still have q in u64
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem pow_u64(const Elem& a, std::uint64_t e) const {
        Elem r = one(), base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // a^q. The q-power Frobenius fixes F_q pointwise.
    Elem frobenius_q(const Elem& a) const { return a; }

    // a^p, one Frobenius step of the prime field.
    Elem frobenius_p(const Elem& a) const { return m_ == 1 ? a : pow_u64(a, p_); }

    Elem random(Rng& rng) const { return Elem{rng.below(q_)}; }
    Elem random_nonzero(Rng& rng) const { return Elem{1 + rng.below(q_ - 1)}; }

    // F_q regarded as a vector space over itself; lets the same flattening
    // interface work at every level of an extension tower.
    unsigned fq_dim() const { return 1; }
    std::vector<FqElem> to_fq(const Elem& a) const { return {a}; }
    Elem from_fq(const std::vector<FqElem>& v) const { return v.empty() ? zero() : v[0]; }

    std::string to_string(const Elem& a) const {
        if (m_ == 1) return std::to_string(a.rep);
        auto d = digits(a);
        std::string s;
        for (unsigned i = m_; i-- > 0;) {
            if (d[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0) {
                s += std::to_string(d[i]);
            } else {
                if (d[i] != 1) s += std::to_string(d[i]) + "*";
                s += "g";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

  private:
    static constexpr std::uint64_t kTableLimit = 1u << 20;

    Elem mul_raw(const Elem& a, const Elem& b) const {
        detail::PPoly pa, pb;
        {
            std::uint64_t x = a.rep;
            for (unsigned i = 0; i < m_; ++i) {
                pa.push_back(static_cast<std::uint32_t>(x % p_));
                x /= p_;
            }
            x = b.rep;
            for (unsigned i = 0; i < m_; ++i) {
                pb.push_back(static_cast<std::uint32_t>(x % p_));
                x /= p_;
            }
        }
        detail::ppoly_trim(pa);
        detail::ppoly_trim(pb);
        detail::PPoly r = detail::ppoly_mod(detail::ppoly_mul(pa, pb, p_), mod_, p_);
        std::uint64_t rep = 0, scale = 1;
        for (std::size_t i = 0; i < r.size(); ++i) {
            rep += r[i] * scale;
            scale *= p_;
        }
        return Elem{rep};
    }

    void init_tables() {
        tables_ = false;
        if (m_ == 1 || q_ > kTableLimit) return;
        // find a generator of F_q^* by checking element order against the
        // prime factors of q-1
        std::vector<std::uint64_t> primes;
        std::uint64_t n = q_ - 1;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                primes.push_back(d);
                while (n % d == 0) n /= d;
            }
        if (n > 1) primes.push_back(n);
        Elem gen{};
        for (std::uint64_t cand = 2; cand < q_; ++cand) {
            Elem c{cand};
            bool ok = true;
            for (auto r : primes) {
                if (pow_raw_no_tables(c, (q_ - 1) / r).rep == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gen = c;
                break;
            }
        }
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        Elem cur = one();
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur.rep;
            log_[cur.rep] = i;
            cur = mul_raw(cur, gen);
        }
        tables_ = true;
    }

    Elem pow_raw_no_tables(const Elem& a, std::uint64_t e) const {
        Elem r = one(), base = a;
        while (e) {
            if (e & 1) r = mul_raw(r, base);
            base = mul_raw(base, base);
            e >>= 1;
        }
        return r;
    }

    std::uint32_t p_;
    unsigned m_ = 1;
    std::uint64_t q_;
    std::vector<std::uint32_t> mod_;  // empty for prime fields
    std::vector<std::uint64_t> exp_, log_;
    bool tables_ = false;
};

}  // namespace drinfeld

#endif  // DRINFELD_GF_HPP
