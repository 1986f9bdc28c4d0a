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

// Extension fields B[z]/(h) over an arbitrary finite base field object B.
// Nesting PolyExt<PolyExt<Fq>> gives the towers needed for residue fields
// and their constant extensions, with explicit embeddings and a flattening
// interface down to F_q coordinates for linear algebra.

#ifndef DRINFELD_EXTFIELD_HPP
#define DRINFELD_EXTFIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/gf.hpp"
#include "drinfeld/polyring.hpp"

namespace drinfeld {

template <class B>
class PolyExt {
  public:
    using Base = B;
    using Elem = std::vector<typename B::Elem>;  // coefficients, fixed size deg

    // modulus: monic irreducible over B, ascending coefficients. `validate`
    // can be disabled when the caller has already certified irreducibility
    // (residue fields constructed from a known place, for instance).
    PolyExt(B base, PolyOf<B> modulus, std::string var = "z", bool validate = true)
        : base_(std::move(base)), mod_(std::move(modulus)), var_(std::move(var)) {
        poly_trim(base_, mod_);
        if (poly_deg<B>(mod_) < 1) throw MathError("extension modulus must have degree >= 1");
        if (!base_.eq(mod_.back(), base_.one())) throw MathError("extension modulus must be monic");
        if (validate && !poly_is_irreducible(base_, mod_))
            throw MathError("extension modulus is reducible");
        deg_ = static_cast<unsigned>(poly_deg<B>(mod_));
    }

    const B& base() const { return base_; }
    const PolyOf<B>& modulus() const { return mod_; }
    unsigned degree() const { return deg_; }
    const std::string& var() const { return var_; }

    std::uint32_t p() const { return base_.p(); }
    std::uint64_t q() const { return base_.q(); }
    unsigned log_p_card() const { return base_.log_p_card() * deg_; }
    unsigned fq_dim() const { return base_.fq_dim() * deg_; }
    const Fq& base_fq() const { return base_.base_fq(); }

    friend bool operator==(const PolyExt& a, const PolyExt& b) {
        return a.base_ == b.base_ && poly_eq(a.base_, a.mod_, b.mod_);
    }

    Elem zero() const { return Elem(deg_, base_.zero()); }
    Elem one() const {
        Elem r = zero();
        r[0] = base_.one();
        return r;
    }
    Elem gen() const {
        Elem r = zero();
        if (deg_ == 1) {
            // z reduces to a base element: z = -mod_[0]
            r[0] = base_.neg(mod_[0]);
        } else {
            r[1] = base_.one();
        }
        return r;
    }

    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!base_.is_zero(c)) return false;
        return true;
    }
    bool eq(const Elem& a, const Elem& b) const {
        for (unsigned i = 0; i < deg_; ++i)
            if (!base_.eq(a[i], b[i])) return false;
        return true;
    }

    Elem embed_base(const typename B::Elem& c) const {
        Elem r = zero();
        r[0] = c;
        return r;
    }
    Elem embed_fq(const FqElem& c) const { return embed_base(base_.embed_fq(c)); }
    Elem from_int(std::int64_t v) const { return embed_fq(base_fq().from_int(v)); }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (unsigned i = 0; i < deg_; ++i) r[i] = base_.add(r[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r = a;
        for (auto& c : r) c = base_.neg(c);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

    Elem mul(const Elem& a, const Elem& b) const {
        PolyOf<B> pa(a.begin(), a.end()), pb(b.begin(), b.end());
        poly_trim(base_, pa);
        poly_trim(base_, pb);
        return pad(poly_mod(base_, poly_mul(base_, pa, pb), mod_));
    }

    Elem inv(const Elem& a) const {
        PolyOf<B> pa(a.begin(), a.end());
        poly_trim(base_, pa);
        if (pa.empty()) throw MathError("division by zero in extension field");
        return pad(poly_inv_mod(base_, pa, mod_));
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

    // a^q via the coefficient spread (sum c_i z^i)^q = sum c_i^q z^(iq).
    Elem frobenius_q(const Elem& a) const {
        const std::uint64_t q = base_.q();
        PolyOf<B> spread((deg_ - 1) * q + 1, base_.zero());
        bool any = false;
        for (unsigned i = 0; i < deg_; ++i)
            if (!base_.is_zero(a[i])) {
                spread[i * q] = base_.frobenius_q(a[i]);
                any = true;
            }
        if (!any) return zero();
        poly_trim(base_, spread);
        return pad(poly_mod(base_, std::move(spread), mod_));
    }

    std::vector<FqElem> to_fq(const Elem& a) const {
        std::vector<FqElem> r;
        r.reserve(fq_dim());
        for (const auto& c : a) {
            auto sub = base_.to_fq(c);
            r.insert(r.end(), sub.begin(), sub.end());
        }
        return r;
    }

    Elem from_fq(const std::vector<FqElem>& coords) const {
        const unsigned step = base_.fq_dim();
        Elem r = zero();
        for (unsigned i = 0; i < deg_; ++i) {
            std::vector<FqElem> sub(step, FqElem{});
            for (unsigned j = 0; j < step; ++j)
                if (i * step + j < coords.size()) sub[j] = coords[i * step + j];
            r[i] = base_.from_fq(sub);
        }
        return r;
    }

    std::string to_string(const Elem& a) const {
        std::string s;
        for (unsigned i = deg_; i-- > 0;) {
            if (base_.is_zero(a[i])) continue;
            if (!s.empty()) s += "+";
            std::string c = base_.to_string(a[i]);
            bool is_one = base_.eq(a[i], base_.one());
            if (i == 0) {
                s += c;
            } else {
                if (!is_one) s += (c.find('+') != std::string::npos ? "(" + c + ")" : c) + "*";
                s += var_;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

  private:
    Elem pad(PolyOf<B> v) const {
        v.resize(deg_, base_.zero());
        return Elem(v.begin(), v.end());
    }

    B base_;
    PolyOf<B> mod_;
    std::string var_;
    unsigned deg_;
};

}  // namespace drinfeld

#endif  // DRINFELD_EXTFIELD_HPP
