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

// The Iwasawa algebra O[[T]] for O the completion of A at a finite place,
// at explicit finite precision: O is represented as A/(p^N) (no choice of
// coefficient-field section needed), series are truncated at T-degree D.
// Provides distinguished-polynomial tests, Weierstrass preparation, the
// characteristic element of an elementary module, mu/lambda invariants and
// the finiteness predicates used on elementary torsion modules.
//
// The series variable T here is the Galois-group variable gamma - 1 of the
// constant tower; it is unrelated to the T of A = F_q[T] that lives inside
// the coefficients.

#ifndef DRINFELD_IWASAWA_HPP
#define DRINFELD_IWASAWA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/base_field.hpp"
#include "drinfeld/errors.hpp"

namespace drinfeld {

// O = A_p truncated: residues in A/(p^N), pi = the monic generator of p.
class ORing {
  public:
    using Elem = FqPoly;  // reduced representative modulo p^N

    ORing(Fq fq, Place p, unsigned prec)
        : fq_(std::move(fq)), place_(std::move(p)), prec_(prec) {
        if (place_.infinite) throw MathError("the coefficient ring completes at a finite place");
        if (prec_ < 1) throw MathError("pi-adic precision must be >= 1");
        pN_ = poly_one(fq_);
        for (unsigned i = 0; i < prec_; ++i) pN_ = poly_mul(fq_, pN_, place_.gen);
        // pi = T itself: reduction mod pi^N is truncation, valuation is the
        // index of the first nonzero coefficient
        monomial_ = place_.degree() == 1 && fq_.is_zero(place_.gen[0]);
    }

    const Fq& base_fq() const { return fq_; }
    const Place& place() const { return place_; }
    unsigned prec() const { return prec_; }
    unsigned residue_degree() const { return place_.degree(); }

    friend bool operator==(const ORing& a, const ORing& b) {
        return a.fq_ == b.fq_ && place_eq(a.fq_, a.place_, b.place_) && a.prec_ == b.prec_;
    }

    Elem zero() const { return {}; }
    Elem one() const { return poly_one(fq_); }
    Elem pi() const { return place_.gen; }
    Elem from_poly(FqPoly a) const {
        if (monomial_) {
            if (a.size() > prec_) a.resize(prec_);
            poly_trim(fq_, a);
            return a;
        }
        return poly_mod(fq_, std::move(a), pN_);
    }
    Elem from_int(std::int64_t v) const { return from_poly(poly_const(fq_, fq_.from_int(v))); }

    bool is_zero(const Elem& a) const { return a.empty(); }
    bool eq(const Elem& a, const Elem& b) const { return poly_eq(fq_, a, b); }

    Elem add(const Elem& a, const Elem& b) const { return from_poly(poly_add(fq_, a, b)); }
    Elem neg(const Elem& a) const { return poly_neg(fq_, a); }
    Elem sub(const Elem& a, const Elem& b) const { return from_poly(poly_sub(fq_, a, b)); }
    Elem mul(const Elem& a, const Elem& b) const {
        if (monomial_) {
            // truncated convolution, never materializing degrees >= prec
            if (a.empty() || b.empty()) return {};
            std::size_t len = std::min<std::size_t>(a.size() + b.size() - 1, prec_);
            Elem r(len, fq_.zero());
            for (std::size_t i = 0; i < a.size() && i < len; ++i) {
                if (fq_.is_zero(a[i])) continue;
                for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
                    r[i + j] = fq_.add(r[i + j], fq_.mul(a[i], b[j]));
            }
            poly_trim(fq_, r);
            return r;
        }
        return from_poly(poly_mul(fq_, a, b));
    }

    // pi-adic valuation of the representative; nullopt means zero mod p^N
    // (valuation at least the precision).
    std::optional<unsigned> valuation(const Elem& a) const {
        if (a.empty()) return std::nullopt;
        if (monomial_) {
            unsigned v = 0;
            while (v < a.size() && fq_.is_zero(a[v])) ++v;
            return v;
        }
        return poly_multiplicity(fq_, a, place_.gen);
    }

    bool is_unit(const Elem& a) const {
        auto v = valuation(a);
        return v && *v == 0;
    }

    Elem inv(const Elem& a) const {
        if (!is_unit(a)) throw MathError("inverting a non-unit in the coefficient ring");
        return poly_inv_mod(fq_, a, pN_);
    }

    Elem div_pi(const Elem& a, unsigned k) const {
        Elem r = a;
        for (unsigned i = 0; i < k; ++i) r = poly_div_exact(fq_, std::move(r), place_.gen);
        return r;
    }

    Elem mul_pi(const Elem& a, unsigned k) const {
        Elem r = a;
        for (unsigned i = 0; i < k; ++i) r = from_poly(poly_mul(fq_, r, place_.gen));
        return r;
    }

    // reduction to the residue field O/pi
    PolyExt<Fq>::Elem residue(const Elem& a) const {
        FqPoly r = poly_mod(fq_, a, place_.gen);
        r.resize(place_.degree(), fq_.zero());
        return PolyExt<Fq>::Elem(r.begin(), r.end());
    }

    std::string to_string(const Elem& a) const { return print_poly(fq_, a); }

  private:
    Fq fq_;
    Place place_;
    unsigned prec_;
    FqPoly pN_;
    bool monomial_ = false;
};

// Truncated element of O[[T]]: coefficients for T^0 .. T^(D-1).
struct IwasawaSeries {
    std::vector<ORing::Elem> c;
    bool is_polynomial = false;  // exactly known, higher coefficients exactly zero

    unsigned prec_T() const { return static_cast<unsigned>(c.size()); }
};

inline IwasawaSeries series_make(const ORing& O, std::vector<ORing::Elem> coeffs, unsigned prec_T,
                                 bool polynomial) {
    if (coeffs.size() > prec_T)
        throw PrecisionError("series has more coefficients than the T-adic precision holds");
    IwasawaSeries s;
    s.c.reserve(prec_T);
    for (auto& x : coeffs) s.c.push_back(O.from_poly(std::move(x)));
    s.c.resize(prec_T, O.zero());
    s.is_polynomial = polynomial;
    return s;
}

inline IwasawaSeries series_zero(const ORing& O, unsigned prec_T) {
    return series_make(O, {}, prec_T, true);
}

inline IwasawaSeries series_one(const ORing& O, unsigned prec_T) {
    return series_make(O, {O.one()}, prec_T, true);
}

// T^k as a polynomial.
inline IwasawaSeries series_T_pow(const ORing& O, unsigned k, unsigned prec_T) {
    if (k >= prec_T) throw PrecisionError("T power beyond the T-adic precision");
    std::vector<ORing::Elem> c(k + 1, O.zero());
    c[k] = O.one();
    return series_make(O, std::move(c), prec_T, true);
}

inline bool series_eq(const ORing& O, const IwasawaSeries& a, const IwasawaSeries& b) {
    unsigned d = std::min(a.prec_T(), b.prec_T());
    for (unsigned i = 0; i < d; ++i)
        if (!O.eq(a.c[i], b.c[i])) return false;
    return true;
}

inline bool series_is_zero(const ORing& O, const IwasawaSeries& a) {
    for (auto& x : a.c)
        if (!O.is_zero(x)) return false;
    (void)O;
    return true;
}

inline IwasawaSeries series_add(const ORing& O, const IwasawaSeries& a, const IwasawaSeries& b) {
    unsigned d = std::min(a.prec_T(), b.prec_T());
    IwasawaSeries r;
    r.c.resize(d, O.zero());
    for (unsigned i = 0; i < d; ++i) r.c[i] = O.add(a.c[i], b.c[i]);
    r.is_polynomial = a.is_polynomial && b.is_polynomial;
    return r;
}

inline IwasawaSeries series_neg(const ORing& O, IwasawaSeries a) {
    for (auto& x : a.c) x = O.neg(x);
    return a;
}

inline IwasawaSeries series_sub(const ORing& O, const IwasawaSeries& a, const IwasawaSeries& b) {
    return series_add(O, a, series_neg(O, b));
}

inline long series_poly_degree(const ORing& O, const IwasawaSeries& a) {
    for (unsigned i = a.prec_T(); i-- > 0;)
        if (!O.is_zero(a.c[i])) return static_cast<long>(i);
    return -1;
}

inline IwasawaSeries series_mul(const ORing& O, const IwasawaSeries& a, const IwasawaSeries& b) {
    unsigned d = std::min(a.prec_T(), b.prec_T());
    IwasawaSeries r;
    r.c.resize(d, O.zero());
    for (unsigned i = 0; i < d; ++i) {
        if (O.is_zero(a.c[i])) continue;
        for (unsigned j = 0; i + j < d; ++j) {
            if (O.is_zero(b.c[j])) continue;
            r.c[i + j] = O.add(r.c[i + j], O.mul(a.c[i], b.c[j]));
        }
    }
    // the product of polynomials stays exact only if no truncation occurred
    long da = series_poly_degree(O, a), db = series_poly_degree(O, b);
    r.is_polynomial = a.is_polynomial && b.is_polynomial && (da < 0 || db < 0 || da + db < static_cast<long>(d));
    return r;
}

inline IwasawaSeries series_scale_pi(const ORing& O, IwasawaSeries a, unsigned k) {
    for (auto& x : a.c) x = O.mul_pi(x, k);
    return a;
}

// Inverse of a series with unit constant term, to the same precision.
inline IwasawaSeries series_inv(const ORing& O, const IwasawaSeries& a) {
    if (a.c.empty() || !O.is_unit(a.c[0]))
        throw MathError("series inverse needs a unit constant term");
    unsigned d = a.prec_T();
    IwasawaSeries r;
    r.c.resize(d, O.zero());
    ORing::Elem c0inv = O.inv(a.c[0]);
    r.c[0] = c0inv;
    for (unsigned t = 1; t < d; ++t) {
        ORing::Elem s = O.zero();
        for (unsigned j = 1; j <= t; ++j) s = O.add(s, O.mul(a.c[j], r.c[t - j]));
        r.c[t] = O.neg(O.mul(c0inv, s));
    }
    r.is_polynomial = false;
    return r;
}

// ---------------------------------------------------------------------------
// distinguished polynomials and Weierstrass preparation

inline bool is_distinguished(const ORing& O, const IwasawaSeries& g) {
    if (!g.is_polynomial) throw MathError("distinguished test requires a polynomial");
    long deg = series_poly_degree(O, g);
    if (deg < 0) return false;
    if (!O.eq(g.c[static_cast<std::size_t>(deg)], O.one())) return false;
    for (long i = 0; i < deg; ++i) {
        auto v = O.valuation(g.c[static_cast<std::size_t>(i)]);
        if (v && *v == 0) return false;
    }
    return true;
}

struct WeierstrassParts {
    unsigned mu = 0;
    unsigned lambda = 0;
    IwasawaSeries distinguished;  // monic of degree lambda, polynomial
    IwasawaSeries unit;           // unit series
    unsigned prec_pi_effective = 0;  // pi-precision of the factors after dividing pi^mu out
};

// f = pi^mu * u * g with u a unit and g distinguished of degree lambda,
// computed by Weierstrass division of T^lambda by f/pi^mu.
inline WeierstrassParts weierstrass_prep(const ORing& O, const IwasawaSeries& f) {
    const unsigned D = f.prec_T();
    // mu = min pi-valuation of the coefficients
    std::optional<unsigned> mu;
    for (auto& x : f.c) {
        auto v = O.valuation(x);
        if (v && (!mu || *v < *mu)) mu = *v;
    }
    if (!mu)
        throw PrecisionError("insufficient pi-adic precision: series vanishes mod pi^" +
                             std::to_string(O.prec()));
    IwasawaSeries f1 = f;
    for (auto& x : f1.c) x = O.div_pi(x, *mu);
    const unsigned Neff = O.prec() - *mu;
    if (Neff == 0) throw PrecisionError("insufficient pi-adic precision after removing pi powers");
    // factors are only trustworthy mod pi^Neff; work in that quotient
    ORing Oeff(O.base_fq(), O.place(), Neff);
    for (auto& x : f1.c) x = Oeff.from_poly(std::move(x));
    // lambda = least unit coefficient index
    unsigned lambda = 0;
    while (lambda < D && !Oeff.is_unit(f1.c[lambda])) ++lambda;
    if (lambda >= D)
        throw PrecisionError("insufficient T-adic precision: no unit coefficient below degree " +
                             std::to_string(D));
    // Weierstrass division: T^lambda = quot * f1 + rem with deg rem < lambda.
    // The quotient is unique only modulo a (pi, T)-precision ideal supported
    // near the top of the T window; padding the working window by Neff pushes
    // that ambiguity past D, so the reported factors are canonical.
    const unsigned Dw = D + Neff;
    f1.c.resize(Dw, Oeff.zero());
    auto tail = [&](const IwasawaSeries& s) {
        IwasawaSeries t;
        t.c.assign(s.c.begin() + lambda, s.c.end());
        t.c.resize(Dw, Oeff.zero());
        return t;
    };
    IwasawaSeries unit_part = tail(f1);  // unit series
    IwasawaSeries unit_inv = series_inv(Oeff, unit_part);
    IwasawaSeries quot = series_zero(Oeff, Dw);
    IwasawaSeries s = series_T_pow(Oeff, lambda, Dw);
    for (unsigned pass = 0; pass <= Neff; ++pass) {
        IwasawaSeries ts = tail(s);
        if (series_is_zero(Oeff, ts)) break;
        IwasawaSeries qk = series_mul(Oeff, unit_inv, ts);
        quot = series_add(Oeff, quot, qk);
        // s -= qk * f1
        s = series_sub(Oeff, s, series_mul(Oeff, qk, f1));
    }
    if (!series_is_zero(Oeff, tail(s)))
        throw PrecisionError("Weierstrass division did not converge at this precision");
    // g = T^lambda - rem, distinguished
    IwasawaSeries g = series_T_pow(Oeff, lambda, D);
    for (unsigned i = 0; i < lambda; ++i) g.c[i] = Oeff.neg(s.c[i]);
    g.is_polynomial = true;
    IwasawaSeries u = series_inv(Oeff, quot);
    u.c.resize(D, Oeff.zero());
    WeierstrassParts out;
    out.mu = *mu;
    out.lambda = lambda;
    out.distinguished = std::move(g);
    out.unit = std::move(u);
    out.prec_pi_effective = Neff;
    if (!is_distinguished(Oeff, out.distinguished))
        throw MathError("internal: Weierstrass factor is not distinguished");
    return out;
}

inline std::pair<unsigned, unsigned> mu_lambda(const ORing& O, const IwasawaSeries& f) {
    auto parts = weierstrass_prep(O, f);
    return {parts.mu, parts.lambda};
}

// ---------------------------------------------------------------------------
// elementary modules

// Lambda^rho + sum Lambda/(pi^mu_i) + sum Lambda/(f_j) with distinguished f_j.
struct ElementaryModule {
    unsigned free_rank = 0;
    std::vector<unsigned> mu_parts;        // each >= 1
    std::vector<IwasawaSeries> poly_parts; // distinguished polynomials
};

inline ElementaryModule make_elementary(const ORing& O, unsigned free_rank,
                                        std::vector<unsigned> mu_parts,
                                        std::vector<IwasawaSeries> poly_parts) {
    for (unsigned m : mu_parts)
        if (m == 0) throw MathError("pi-power parts need exponent >= 1");
    for (auto& g : poly_parts)
        if (!is_distinguished(O, g)) throw MathError("cyclic parts must be distinguished polynomials");
    return {free_rank, std::move(mu_parts), std::move(poly_parts)};
}

inline IwasawaSeries char_element(const ORing& O, const ElementaryModule& M, unsigned prec_T) {
    if (M.free_rank > 0) throw MathError("module not torsion");
    IwasawaSeries f = series_one(O, prec_T);
    unsigned mu_total = 0;
    for (unsigned m : M.mu_parts) mu_total += m;
    f = series_scale_pi(O, std::move(f), mu_total);
    for (const auto& g : M.poly_parts) f = series_mul(O, f, g);
    return f;
}

inline std::pair<unsigned, unsigned> mu_lambda(const ORing& O, const ElementaryModule& M) {
    if (M.free_rank > 0) throw MathError("module not torsion");
    unsigned mu = 0, lambda = 0;
    for (unsigned m : M.mu_parts) mu += m;
    for (const auto& g : M.poly_parts) lambda += static_cast<unsigned>(series_poly_degree(O, g));
    return {mu, lambda};
}

struct FinitenessReport {
    bool cofg_cotorsion_mu0 = false;       // torsion with all mu parts zero
    std::optional<unsigned> dim_residual;  // dim over O/pi of N/(pi)N; nullopt = infinite
    bool lambda_bound_check = false;       // lambda <= dim_residual
};

// For an elementary module N: N is dual to a p-primary module that is
// cofinitely generated cotorsion with mu = 0 exactly when N is torsion with
// no pi-power parts; then N/(pi)N has dimension sum deg f_j = lambda over
// the residue field, and the lambda bound holds with equality.
inline FinitenessReport finiteness_predicates(const ORing& O, const ElementaryModule& M) {
    FinitenessReport out;
    out.cofg_cotorsion_mu0 = M.free_rank == 0 && M.mu_parts.empty();
    if (!out.cofg_cotorsion_mu0) {
        out.dim_residual = std::nullopt;  // Lambda/pi (or Lambda itself) mod pi is infinite
        out.lambda_bound_check = false;
        return out;
    }
    unsigned dim = 0;
    for (const auto& g : M.poly_parts) dim += static_cast<unsigned>(series_poly_degree(O, g));
    out.dim_residual = dim;
    out.lambda_bound_check = mu_lambda(O, M).second <= dim;
    return out;
}

}  // namespace drinfeld

#endif  // DRINFELD_IWASAWA_HPP
