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

// Drinfeld modules phi: A -> K{tau}. The module is stored by the image of
// T; phi_a follows by Horner since phi is an F_q-algebra homomorphism.
// Alongside the generic core live the F_q(T)-specific pieces: isomorphism
// twisting, denominator clearing, the reduction classification at finite
// places by the normalizing-valuation criterion, heights of reductions, and
// torsion kernels over residue-field towers.

#ifndef DRINFELD_DRINFELD_MODULE_HPP
#define DRINFELD_DRINFELD_MODULE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/base_field.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/extfield.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/twisted.hpp"

namespace drinfeld {

template <class K>
struct DrinfeldModule {
    K field;
    typename K::Elem gamma_T;                // structure map on T
    std::vector<typename K::Elem> coeffs;    // a_1..a_r, a_r != 0

    unsigned rank() const { return static_cast<unsigned>(coeffs.size()); }
};

template <class K>
DrinfeldModule<K> make_module(const K& k, typename K::Elem gamma_T,
                              std::vector<typename K::Elem> coeffs) {
    if (coeffs.empty() || k.is_zero(coeffs.back()))
        throw MathError("a Drinfeld module needs a nonzero leading coefficient a_r");
    return {k, std::move(gamma_T), std::move(coeffs)};
}

template <class K>
TwistedPoly<K> phi_T(const DrinfeldModule<K>& mod) {
    std::vector<typename K::Elem> c;
    c.reserve(mod.coeffs.size() + 1);
    c.push_back(mod.gamma_T);
    for (const auto& a : mod.coeffs) c.push_back(a);
    return tw_make(mod.field, std::move(c));
}

// phi_a for a in A, by Horner: constants from F_q commute with phi_T.
template <class K>
TwistedPoly<K> phi_of(const DrinfeldModule<K>& mod, const FqPoly& a) {
    const K& k = mod.field;
    TwistedPoly<K> pt = phi_T(mod);
    TwistedPoly<K> acc = tw_zero(k);
    for (std::size_t j = a.size(); j-- > 0;) {
        acc = tw_mul(acc, pt);
        acc = tw_add(acc, tw_const(k, k.embed_fq(a[j])));
    }
    return acc;
}

// The isomorphism twist by c: coefficients become c^(q^i - 1) a_i.
template <class K>
DrinfeldModule<K> twist(const DrinfeldModule<K>& mod, const typename K::Elem& c) {
    const K& k = mod.field;
    if (k.is_zero(c)) throw MathError("cannot twist by zero");
    std::vector<typename K::Elem> out;
    out.reserve(mod.coeffs.size());
    // c^(q^(i+1)-1) = (c^(q^i-1))^q * c^(q-1)
    typename K::Elem step = k.div(k.frobenius_q(c), c);
    typename K::Elem scale = step;
    for (std::size_t i = 0; i < mod.coeffs.size(); ++i) {
        if (i > 0) scale = k.mul(k.frobenius_q(scale), step);
        out.push_back(k.mul(scale, mod.coeffs[i]));
    }
    return {k, mod.gamma_T, std::move(out)};
}

// ---------------------------------------------------------------------------
// modules over F = F_q(T), gamma = inclusion

using FModule = DrinfeldModule<FuncField>;

inline FModule make_f_module(const FuncField& F, std::vector<RationalFunction> coeffs) {
    return make_module(F, F.var_T(), std::move(coeffs));
}

// Twist by a polynomial scalar so that every coefficient lands in A. The
// scalar is returned with the twisted module; the original module is kept
// by the caller for anything isomorphism-sensitive.
struct IntegralModel {
    FModule mod;              // coefficients in A
    RationalFunction scalar;  // the c used, a polynomial
};

inline IntegralModel integral_model(const FModule& mod, std::uint64_t seed) {
    const FuncField& F = mod.field;
    const Fq& fq = F.base_fq();
    // places where some coefficient has a pole, with the pole orders
    std::vector<std::pair<FqPoly, unsigned>> poles;  // (l, required valuation of c)
    for (std::size_t i = 0; i < mod.coeffs.size(); ++i) {
        const auto& den = mod.coeffs[i].den;
        if (poly_deg<Fq>(den) <= 0) continue;
        for (auto& [l, e] : factor(fq, den, seed).factors) {
            // need (q^(i+1)-1) * v(c) - e >= 0
            std::uint64_t qpow = 1;
            bool big = false;
            for (std::size_t t = 0; t <= i && !big; ++t) {
                if (qpow > (std::uint64_t(1) << 62) / fq.q()) big = true;
                qpow *= fq.q();
            }
            unsigned need = big ? 1 : static_cast<unsigned>((e + (qpow - 1) - 1) / (qpow - 1));
            bool found = false;
            for (auto& entry : poles)
                if (poly_eq(fq, entry.first, l)) {
                    entry.second = std::max(entry.second, need);
                    found = true;
                }
            if (!found) poles.emplace_back(l, need);
        }
    }
    RationalFunction c = F.one();
    for (auto& [l, e] : poles)
        for (unsigned t = 0; t < e; ++t) c = F.mul(c, F.from_poly(l));
    FModule twisted_mod = twist(mod, c);
    for (auto& a : twisted_mod.coeffs)
        if (!F.is_poly(a)) throw MathError("internal: denominator clearing failed");
    return {std::move(twisted_mod), std::move(c)};
}

// ---------------------------------------------------------------------------
// reduction at finite places

enum class ReductionTag { Good, StableBad, Undetermined };

struct ReductionType {
    ReductionTag tag = ReductionTag::Undetermined;
    unsigned reduced_rank = 0;           // for Good this equals r
    long w = 0;                          // normalizing valuation v_l(c)
    std::vector<unsigned> unit_indices;  // indices attaining a unit coefficient
    bool tie = false;                    // several indices tied for the unit slot
};

namespace detail {

// Valuations v_l(a_i) of the integral model, one entry per i = 1..r
// (nullopt for a_i = 0).
inline std::vector<std::optional<long>> coeff_valuations(const FModule& integr, const Place& l) {
    const FuncField& F = integr.field;
    std::vector<std::optional<long>> v;
    for (const auto& a : integr.coeffs) v.push_back(valuation(F, a, l));
    return v;
}

}  // namespace detail

// Classification by the normalizing-valuation criterion: a twist by c with
// w = v_l(c) moves v_l(a_i) to (q^i - 1) w + v_l(a_i). The only candidate
// giving a unit somewhere is the smallest integral w keeping everything
// integral; which indices hit zero there decides the reduced rank.
inline ReductionType reduction_type(const FModule& mod, const Place& l, std::uint64_t seed) {
    if (l.infinite) throw MathError("reduction is defined at finite places only");
    const FuncField& F = mod.field;
    const Fq& fq = F.base_fq();
    FModule integr = integral_model(mod, seed).mod;
    auto vals = detail::coeff_valuations(integr, l);
    const unsigned r = integr.rank();
    // w* = max_i ceil(-v_i / (q^i - 1)) over nonzero a_i; all v_i >= 0 here
    long wstar = 0;
    std::vector<__int128> qim1(r + 1, 0);
    {
        __int128 qp = 1;
        const __int128 cap = static_cast<__int128>(1) << 100;
        for (unsigned i = 1; i <= r; ++i) {
            qp = qp > cap / static_cast<__int128>(fq.q()) ? cap : qp * static_cast<__int128>(fq.q());
            qim1[i] = qp - 1;
        }
    }
    bool first = true;
    for (unsigned i = 1; i <= r; ++i) {
        if (!vals[i - 1]) continue;
        long v = *vals[i - 1];
        // ceil(-v / (q^i-1)) = -floor(v / (q^i-1)) for v >= 0
        long c = -static_cast<long>(static_cast<__int128>(v) / qim1[i]);
        if (first || c > wstar) {
            wstar = c;
            first = false;
        }
    }
    ReductionType out;
    out.w = wstar;
    for (unsigned i = 1; i <= r; ++i) {
        if (!vals[i - 1]) continue;
        if (qim1[i] * wstar + *vals[i - 1] == 0) out.unit_indices.push_back(i);
    }
    if (out.unit_indices.empty()) {
        out.tag = ReductionTag::Undetermined;
        return out;
    }
    out.reduced_rank = out.unit_indices.back();
    out.tie = out.unit_indices.size() > 1;
    out.tag = out.reduced_rank == r ? ReductionTag::Good : ReductionTag::StableBad;
    return out;
}

// A module reduced at a finite place; the place is char_A of the residue
// field through gamma-bar.
struct ReducedModule {
    DrinfeldModule<PolyExt<Fq>> mod;
    Place place;
};

inline ReducedModule reduce(const FModule& mod, const Place& l, std::uint64_t seed) {
    ReductionType rt = reduction_type(mod, l, seed);
    if (rt.tag == ReductionTag::Undetermined)
        throw MathError("no stable model over the completion at this place");
    const FuncField& F = mod.field;
    const Fq& fq = F.base_fq();
    FModule integr = integral_model(mod, seed).mod;
    ResidueField rf = residue_field(fq, l);
    // twist by l^w*, then reduce coefficients 1..r'
    RationalFunction lpoly = F.from_poly(l.gen);
    std::vector<PolyExt<Fq>::Elem> reduced;
    RationalFunction scale_step = F.pow_u64(lpoly, static_cast<std::uint64_t>(rt.w < 0 ? -rt.w : rt.w));
    for (unsigned i = 1; i <= rt.reduced_rank; ++i) {
        // a_i * l^((q^i - 1) w)
        RationalFunction a = integr.coeffs[i - 1];
        if (!F.is_zero(a) && rt.w != 0) {
            std::uint64_t e = 1;
            bool big = false;
            for (unsigned t = 0; t < i && !big; ++t) {
                if (e > (std::uint64_t(1) << 62) / fq.q()) big = true;
                e *= fq.q();
            }
            if (big) {
                // a satisfied the integrality constraint, so its valuation
                // must have been astronomically large; not reachable for
                // desk-scale inputs
                throw MathError("internal: uniformizer shift overflow in reduction");
            } else {
                RationalFunction shift = F.pow_u64(scale_step, e - 1);
                a = rt.w < 0 ? F.div(a, shift) : F.mul(a, shift);
            }
        }
        reduced.push_back(rf.reduce(F, a));
    }
    auto gamma_bar = rf.reduce(F, F.var_T());
    return {make_module(rf.field, std::move(gamma_bar), std::move(reduced)), l};
}

// Height of the reduction at a good place: ht_tau(phibar_l) / deg l.
inline unsigned height_of_reduction(const FModule& mod, const Place& l, std::uint64_t seed) {
    ReductionType rt = reduction_type(mod, l, seed);
    if (rt.tag != ReductionTag::Good) throw MathError("height defined for good reduction only");
    ReducedModule red = reduce(mod, l, seed);
    auto inv = tw_invariants(phi_of(red.mod, l.gen));
    unsigned d = l.degree();
    if (inv.height == 0 || inv.height % d != 0)
        throw MathError("internal: reduction height is not divisible by the place degree");
    unsigned H = inv.height / d;
    if (H > mod.rank()) throw MathError("internal: reduction height exceeds the rank");
    return H;
}

// ---------------------------------------------------------------------------
// torsion over finite A-fields

using TowerField = PolyExt<PolyExt<Fq>>;

struct TorsionKernel {
    TowerField ext;                        // degree-e extension of the residue field
    unsigned dim_fq = 0;                   // F_q-dimension of ker phibar_a on ext
    std::vector<TowerField::Elem> basis;   // kernel basis as extension elements
};

inline TowerField make_extension(const ReducedModule& red, unsigned e, std::uint64_t seed) {
    const auto& k = red.mod.field;
    if (e == 0) throw MathError("extension degree must be >= 1");
    std::uint64_t s = derive_seed(seed, "residue-extension");
    for (const auto& c : red.place.infinite ? FqPoly{} : red.place.gen)
        s = derive_seed(s, c.rep);
    s = derive_seed(s, static_cast<std::uint64_t>(e));
    Rng rng(s);
    PolyOf<PolyExt<Fq>> modulus = poly_random_irreducible(k, e, rng);
    return TowerField(k, std::move(modulus), "z", false);
}

inline bool char_divides(const Fq& fq, const Place& l, const FqPoly& a) {
    return poly_mod(fq, a, l.gen).empty();
}

// Kernel of phibar_a on the degree-e extension of the residue field, as an
// F_q-subspace. Requires char_A coprime to a.
inline TorsionKernel torsion_kernel(const ReducedModule& red, const FqPoly& a, unsigned e,
                                    std::uint64_t seed) {
    const auto& k = red.mod.field;
    const Fq& fq = k.base_fq();
    FqPoly aa = a;
    poly_trim(fq, aa);
    if (aa.empty()) throw MathError("torsion of the zero isogeny is everything");
    if (char_divides(fq, red.place, aa)) throw MathError("inseparable torsion requested");
    TowerField E = make_extension(red, e, seed);
    TwistedPoly<PolyExt<Fq>> phia = phi_of(red.mod, aa);
    const unsigned n = E.fq_dim();
    auto embed = [&](const PolyExt<Fq>::Elem& c) { return E.embed_base(c); };
    // columns are images of the F_q basis vectors
    Matrix<Fq> mat(n, std::vector<FqElem>(n, fq.zero()));
    for (unsigned j = 0; j < n; ++j) {
        std::vector<FqElem> coords(n, fq.zero());
        coords[j] = fq.one();
        auto img = tw_evaluate_in(phia, E, embed, E.from_fq(coords));
        auto img_coords = E.to_fq(img);
        for (unsigned i = 0; i < n; ++i) mat[i][j] = img_coords[i];
    }
    auto kb = kernel_basis(fq, std::move(mat));
    TorsionKernel out{std::move(E), static_cast<unsigned>(kb.size()), {}};
    for (auto& v : kb) out.basis.push_back(out.ext.from_fq(v));
    return out;
}

// Elementary-divisor profile of the a-torsion rational over the residue
// field itself, recovered from kernel dimensions of phibar for prime-power
// divisors of a.
struct TorsionStructure {
    struct Part {
        FqPoly prime;
        unsigned exponent;
        unsigned count;
    };
    std::vector<Part> elementary;         // sorted by prime then exponent
    std::vector<FqPoly> invariant_chain;  // b_1 | b_2 | ... (ascending)
};

inline TorsionStructure torsion_module_structure(const ReducedModule& red, const FqPoly& a,
                                                 unsigned e, std::uint64_t seed) {
    const Fq& fq = red.mod.field.base_fq();
    FqPoly aa = a;
    poly_trim(fq, aa);
    if (aa.empty()) throw MathError("torsion of the zero isogeny is everything");
    if (char_divides(fq, red.place, aa)) throw MathError("inseparable torsion requested");
    TorsionStructure out;
    std::vector<std::vector<unsigned>> exponents_per_prime;  // descending exponent lists
    for (auto& [l, n] : factor(fq, aa, seed).factors) {
        const unsigned dl = static_cast<unsigned>(poly_deg<Fq>(l));
        std::vector<unsigned> summands_ge;  // delta_j = #summands with exponent >= j
        unsigned prev = 0;
        FqPoly lp = poly_one(fq);
        for (unsigned j = 1; j <= n; ++j) {
            lp = poly_mul(fq, lp, l);
            unsigned dj = torsion_kernel(red, lp, e, seed).dim_fq;
            if ((dj - prev) % dl != 0)
                throw MathError("internal: kernel growth not divisible by the prime degree");
            summands_ge.push_back((dj - prev) / dl);
            prev = dj;
        }
        std::vector<unsigned> exps;
        for (unsigned j = 1; j <= n; ++j) {
            unsigned here = summands_ge[j - 1] - (j < n ? summands_ge[j] : 0);
            if (here > 0) out.elementary.push_back({l, j, here});
            for (unsigned t = 0; t < here; ++t) exps.push_back(j);
        }
        std::sort(exps.rbegin(), exps.rend());
        exponents_per_prime.push_back(std::move(exps));
        // submodule of (A/a)^r: the summand count per prime may not exceed r
        if (!summands_ge.empty() && summands_ge[0] > red.mod.rank())
            throw MathError("internal: torsion has more cyclic summands than the rank allows");
    }
    std::size_t chains = 0;
    for (auto& exps : exponents_per_prime) chains = std::max(chains, exps.size());
    std::vector<FqPoly> chain;
    for (std::size_t t = 0; t < chains; ++t) {
        FqPoly b = poly_one(fq);
        std::size_t pi = 0;
        for (auto& [l, n] : factor(fq, aa, seed).factors) {
            (void)n;
            const auto& exps = exponents_per_prime[pi++];
            if (t < exps.size())
                for (unsigned u = 0; u < exps[t]; ++u) b = poly_mul(fq, b, l);
        }
        chain.push_back(std::move(b));
    }
    std::reverse(chain.begin(), chain.end());  // ascending divisibility
    out.invariant_chain = std::move(chain);
    return out;
}

}  // namespace drinfeld

#endif  // DRINFELD_DRINFELD_MODULE_HPP
