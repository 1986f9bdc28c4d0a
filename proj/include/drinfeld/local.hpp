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

// Local invariants at places of F and along the constant Z_p-extension:
//
//   * splitting counts of places in the tower (p^(v_p(deg v)) many),
//   * truncated uniformizer-series arithmetic ("LocalApprox") with digit
//     precision tracking, including the coefficient-field section needed to
//     expand F inside a completion at a place of degree > 1,
//   * Newton polygons of F_q-linear polynomials and local root counts via
//     residual polynomials and Hensel lifting,
//   * the Eisenstein vanishing certificate at p,
//   * Frobenius fixed-space dimensions H^0 at good unramified places and
//     the assembled tensor term dim(H^0(F_w, phi[p^inf]) (x) F_p).
//
// Dimensions of p-power torsion H^0 spaces are reported as lengths over the
// residue field of p (log base |F_p| of the cardinality), matching the
// units of the lambda-invariant bound they feed into.

#ifndef DRINFELD_LOCAL_HPP
#define DRINFELD_LOCAL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/config.hpp"
#include "drinfeld/drinfeld_module.hpp"

namespace drinfeld {

// ---------------------------------------------------------------------------
// splitting in the constant tower

struct SplittingInfo {
    unsigned count = 1;            // number of places above v, = p^(v_p(deg v))
    unsigned place_degree = 1;
    std::vector<std::uint64_t> layer_degrees;  // residue degree over F_q at layers 0,1,...
};

inline SplittingInfo splitting_count(const Fq& fq, const Place& v) {
    SplittingInfo out;
    out.place_degree = v.degree();
    const std::uint64_t p = fq.p();
    unsigned d = out.place_degree;
    unsigned vp = 0;
    while (d % p == 0) {
        d = static_cast<unsigned>(d / p);
        ++vp;
    }
    out.count = 1;
    for (unsigned i = 0; i < vp; ++i) out.count *= static_cast<unsigned>(p);
    // residue field degree at layer m is lcm(deg v, p^m)
    std::uint64_t pm = 1;
    for (unsigned m = 0; m <= vp + 2; ++m) {
        std::uint64_t g = std::__gcd<std::uint64_t>(out.place_degree, pm);
        out.layer_degrees.push_back(out.place_degree / g * pm);
        pm *= p;
    }
    return out;
}

// ---------------------------------------------------------------------------
// truncated local-field elements (uniformizer digit series)

// Digit series over the residue field of a place, with explicit precision:
// digits are valid for exponents below `prec`. The digit field embeds as a
// coefficient field of the completion (constants at degree-1 places and at
// infinity; a Frobenius-fixed-point section otherwise), so arithmetic is
// carry-free.
template <class K>
class LaurentField {
  public:
    struct Elem {
        bool exact_zero = true;
        long val = 0;                          // exponent of digits[0]
        std::vector<typename K::Elem> digits;  // empty + !exact_zero: O(u^val)
        long prec = 0;                         // digits valid below this exponent
    };

    LaurentField(K residue, std::string uniformizer)
        : k_(std::move(residue)), uname_(std::move(uniformizer)) {}

    const K& residue() const { return k_; }
    const std::string& uniformizer() const { return uname_; }

    std::uint32_t p() const { return k_.p(); }
    std::uint64_t q() const { return k_.q(); }

    friend bool operator==(const LaurentField& a, const LaurentField& b) {
        return a.k_ == b.k_ && a.uname_ == b.uname_;
    }

    Elem zero() const { return {}; }
    Elem one(long prec) const { return from_residue(k_.one(), prec); }

    Elem from_residue(const typename K::Elem& c, long prec) const {
        if (k_.is_zero(c)) return approx_zero(prec);
        Elem e;
        e.exact_zero = false;
        e.val = 0;
        e.prec = prec;
        e.digits.assign(static_cast<std::size_t>(std::max<long>(prec, 1)), k_.zero());
        e.digits[0] = c;
        normalize(e);
        return e;
    }

    Elem approx_zero(long prec) const { return {false, prec, {}, prec}; }

    Elem uniformizer_pow(long e, long prec) const {
        Elem r;
        r.exact_zero = false;
        r.val = e;
        r.prec = e + prec;
        r.digits.assign(static_cast<std::size_t>(prec), k_.zero());
        if (!r.digits.empty()) r.digits[0] = k_.one();
        normalize(r);
        return r;
    }

    bool is_exact_zero(const Elem& a) const { return a.exact_zero; }

    // Valuation; +infinity (exact zero) encodes as nullopt, and an element
    // that is zero to its precision has no usable valuation.
    std::optional<long> valuation(const Elem& a) const {
        if (a.exact_zero) return std::nullopt;
        if (a.digits.empty())
            throw PrecisionError("insufficient precision: element is zero to O(u^" +
                                 std::to_string(a.prec) + ")");
        return a.val;
    }

    typename K::Elem digit(const Elem& a, long e) const {
        if (a.exact_zero) return k_.zero();
        if (e >= a.prec)
            throw PrecisionError("insufficient precision: digit " + std::to_string(e) +
                                 " beyond O(u^" + std::to_string(a.prec) + ")");
        if (e < a.val) return k_.zero();
        return a.digits[static_cast<std::size_t>(e - a.val)];
    }

    bool eq_to_precision(const Elem& a, const Elem& b) const {
        long pr = std::min(effective_prec(a), effective_prec(b));
        long lo = std::min(a.exact_zero ? pr : a.val, b.exact_zero ? pr : b.val);
        for (long e = lo; e < pr; ++e)
            if (!k_.eq(digit(a, e), digit(b, e))) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        if (a.exact_zero) return b;
        if (b.exact_zero) return a;
        long prec = std::min(a.prec, b.prec);
        long lo = std::min(a.val, b.val);
        Elem r;
        r.exact_zero = false;
        r.val = lo;
        r.prec = prec;
        r.digits.assign(static_cast<std::size_t>(std::max<long>(prec - lo, 0)), k_.zero());
        for (long e = lo; e < prec; ++e) {
            typename K::Elem s = k_.zero();
            if (e >= a.val && e < a.val + static_cast<long>(a.digits.size()))
                s = k_.add(s, a.digits[static_cast<std::size_t>(e - a.val)]);
            if (e >= b.val && e < b.val + static_cast<long>(b.digits.size()))
                s = k_.add(s, b.digits[static_cast<std::size_t>(e - b.val)]);
            r.digits[static_cast<std::size_t>(e - lo)] = s;
        }
        normalize(r);
        return r;
    }

    Elem neg(const Elem& a) const {
        Elem r = a;
        for (auto& d : r.digits) d = k_.neg(d);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

    Elem mul(const Elem& a, const Elem& b) const {
        if (a.exact_zero || b.exact_zero) return zero();
        // known-digit window of the product
        long prec = std::min(a.val + b.prec, b.val + a.prec);
        long lo = a.val + b.val;
        Elem r;
        r.exact_zero = false;
        r.val = lo;
        r.prec = prec;
        r.digits.assign(static_cast<std::size_t>(std::max<long>(prec - lo, 0)), k_.zero());
        for (std::size_t i = 0; i < a.digits.size(); ++i) {
            if (k_.is_zero(a.digits[i])) continue;
            for (std::size_t j = 0; j < b.digits.size(); ++j) {
                long e = a.val + static_cast<long>(i) + b.val + static_cast<long>(j);
                if (e >= prec) break;
                std::size_t slot = static_cast<std::size_t>(e - lo);
                r.digits[slot] = k_.add(r.digits[slot], k_.mul(a.digits[i], b.digits[j]));
            }
        }
        normalize(r);
        return r;
    }

    Elem inv(const Elem& a) const {
        if (a.exact_zero) throw MathError("division by zero in the local field");
        if (a.digits.empty())
            throw PrecisionError("insufficient precision: cannot invert an element that is zero to precision");
        const long n = a.prec - a.val;  // relative precision
        std::vector<typename K::Elem> c(static_cast<std::size_t>(n), k_.zero());
        typename K::Elem d0inv = k_.inv(a.digits[0]);
        c[0] = d0inv;
        for (long t = 1; t < n; ++t) {
            typename K::Elem s = k_.zero();
            for (long j = 1; j <= t; ++j) {
                if (j >= static_cast<long>(a.digits.size())) break;
                s = k_.add(s, k_.mul(a.digits[static_cast<std::size_t>(j)],
                                     c[static_cast<std::size_t>(t - j)]));
            }
            c[static_cast<std::size_t>(t)] = k_.neg(k_.mul(d0inv, s));
        }
        Elem r;
        r.exact_zero = false;
        r.val = -a.val;
        r.prec = -a.val + n;
        r.digits = std::move(c);
        normalize(r);
        return r;
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    // x^q: digits spread to exponents q*e with q-powered digits; the gaps
    // are exact zeros, and relative precision scales by q.
    Elem frobenius_q(const Elem& a) const {
        if (a.exact_zero) return zero();
        const long q = static_cast<long>(k_.q());
        Elem r;
        r.exact_zero = false;
        r.val = a.val * q;
        r.prec = a.prec * q;
        r.digits.assign(static_cast<std::size_t>(r.prec - r.val), k_.zero());
        for (std::size_t i = 0; i < a.digits.size(); ++i)
            if (!k_.is_zero(a.digits[i]))
                r.digits[static_cast<std::size_t>(i) * q] = k_.frobenius_q(a.digits[i]);
        normalize(r);
        return r;
    }

    bool is_zero(const Elem& a) const { return a.exact_zero; }
    bool eq(const Elem& a, const Elem& b) const { return eq_to_precision(a, b); }

    Elem pow_u64(const Elem& a, std::uint64_t e) const {
        if (e == 0) return one(a.exact_zero ? 8 : a.prec - a.val);
        Elem base = a, r;
        bool have = false;
        while (e) {
            if (e & 1) {
                r = have ? mul(r, base) : base;
                have = true;
            }
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return r;
    }

  private:
    long effective_prec(const Elem& a) const { return a.exact_zero ? (1L << 30) : a.prec; }

    void normalize(Elem& e) const {
        std::size_t lead = 0;
        while (lead < e.digits.size() && k_.is_zero(e.digits[lead])) ++lead;
        if (lead > 0) {
            e.digits.erase(e.digits.begin(), e.digits.begin() + static_cast<long>(lead));
            e.val += static_cast<long>(lead);
        }
        if (e.digits.empty()) e.val = e.prec;
    }

    K k_;
    std::string uname_;
};

using LocalApprox = LaurentField<PolyExt<Fq>>;

// The completion of F at v, with its digit field and embedding machinery.
class LocalContext {
  public:
    LocalContext(const Fq& fq, const Place& v, unsigned prec)
        : fq_(fq),
          place_(v),
          rf_(residue_field(fq, v)),
          field_(rf_.field, v.infinite ? "1/T" : print_poly(fq, v.gen)),
          prec_(prec) {}

    const LocalApprox& field() const { return field_; }
    const ResidueField& residue() const { return rf_; }
    const Place& place() const { return place_; }
    unsigned prec() const { return prec_; }

    // Expansion of x in uniformizer digits, to `digits` known digits past
    // the valuation.
    LocalApprox::Elem embed(const FuncField& F, const RationalFunction& x) const {
        if (F.is_zero(x)) return field_.zero();
        if (place_.infinite) return embed_infinity(x);
        return embed_finite(x);
    }

  private:
    LocalApprox::Elem embed_infinity(const RationalFunction& x) const {
        const Fq& fq = fq_;
        long v = poly_deg<Fq>(x.den) - poly_deg<Fq>(x.num);
        // reverse both polynomials into power series in u = 1/T
        auto reversed = [&](const FqPoly& p) {
            FqPoly r(p.rbegin(), p.rend());
            return r;
        };
        FqPoly nr = reversed(x.num), dr = reversed(x.den);
        // series division nr/dr to prec_ digits
        std::vector<FqElem> digs(prec_, fq.zero());
        std::vector<FqElem> rem(nr.begin(), nr.end());
        rem.resize(std::max<std::size_t>(nr.size(), prec_ + dr.size()), fq.zero());
        FqElem lead_inv = fq.inv(dr[0]);
        for (unsigned t = 0; t < prec_; ++t) {
            FqElem c = fq.mul(rem[t], lead_inv);
            digs[t] = c;
            if (!fq.is_zero(c))
                for (std::size_t j = 0; j < dr.size(); ++j)
                    rem[t + j] = fq.sub(rem[t + j], fq.mul(c, dr[j]));
        }
        LocalApprox::Elem e;
        e.exact_zero = false;
        e.val = v;
        e.prec = v + static_cast<long>(prec_);
        for (auto& d : digs) e.digits.push_back(rf_.field.embed_base(d));
        return strip(e);
    }

    LocalApprox::Elem embed_finite(const RationalFunction& x) const {
        const Fq& fq = fq_;
        const FqPoly& l = place_.gen;
        long v = static_cast<long>(poly_multiplicity(fq, x.num, l)) -
                 static_cast<long>(poly_multiplicity(fq, x.den, l));
        // strip the uniformizer part, leaving a v-unit num/den
        FqPoly num = x.num, den = x.den;
        for (long t = 0; t < std::abs(v); ++t) {
            if (v > 0)
                num = poly_div_exact(fq, std::move(num), l);
            else
                den = poly_div_exact(fq, std::move(den), l);
        }
        // unit as a residue mod l^prec
        FqPoly lN = poly_one(fq);
        for (unsigned t = 0; t < prec_; ++t) lN = poly_mul(fq, lN, l);
        FqPoly unit = poly_mod(fq, poly_mul(fq, num, poly_inv_mod(fq, den, lN)), lN);
        // digit extraction against the coefficient-field section
        LocalApprox::Elem e;
        e.exact_zero = false;
        e.val = v;
        e.prec = v + static_cast<long>(prec_);
        std::map<std::vector<FqElem>, FqPoly> section_cache;
        FqPoly cur = std::move(unit);
        unsigned remaining = prec_;
        for (unsigned i = 0; i < prec_; ++i) {
            FqPoly digit_poly = poly_mod(fq, cur, l);
            digit_poly.resize(place_.degree(), fq.zero());
            PolyExt<Fq>::Elem alpha(digit_poly.begin(), digit_poly.end());
            e.digits.push_back(alpha);
            if (i + 1 == prec_) break;
            FqPoly lift = section_lift(alpha, remaining, section_cache);
            cur = poly_div_exact(fq, poly_sub(fq, cur, lift), l);
            cur = poly_mod(fq, cur, power_of(l, remaining - 1));
            --remaining;
        }
        return strip(e);
    }

    FqPoly power_of(const FqPoly& l, unsigned e) const {
        FqPoly r = poly_one(fq_);
        for (unsigned t = 0; t < e; ++t) r = poly_mul(fq_, r, l);
        return r;
    }

    // Coefficient-field section: the unique lift fixed by x -> x^(q^d)
    // modulo l^n, found by iterating that map from any lift. Constant for
    // degree-1 places.
    FqPoly section_lift(const PolyExt<Fq>::Elem& alpha, unsigned n,
                        std::map<std::vector<FqElem>, FqPoly>& cache) const {
        auto key = rf_.field.to_fq(alpha);
        auto it = cache.find(key);
        if (it != cache.end()) return poly_mod(fq_, it->second, power_of(place_.gen, n));
        const unsigned d = place_.degree();
        FqPoly lN = power_of(place_.gen, prec_);
        FqPoly z(alpha.begin(), alpha.end());
        poly_trim(fq_, z);
        for (unsigned iter = 0; iter < prec_; ++iter) {
            FqPoly next = poly_q_power_mod(fq_, z, d, lN);
            if (poly_eq(fq_, next, z)) break;
            z = std::move(next);
        }
        cache.emplace(std::move(key), z);
        return poly_mod(fq_, z, power_of(place_.gen, n));
    }

    LocalApprox::Elem strip(LocalApprox::Elem e) const {
        // drop leading zero digits
        std::size_t lead = 0;
        while (lead < e.digits.size() && rf_.field.is_zero(e.digits[lead])) ++lead;
        e.digits.erase(e.digits.begin(), e.digits.begin() + static_cast<long>(lead));
        e.val += static_cast<long>(lead);
        if (e.digits.empty()) e.val = e.prec;
        return e;
    }

    Fq fq_;
    Place place_;
    ResidueField rf_;
    LocalApprox field_;
    unsigned prec_;
};

// ---------------------------------------------------------------------------
// Newton polygons

struct NewtonPolygon {
    struct Segment {
        long slope_num = 0;  // slope = slope_num / slope_den, den > 0, reduced
        long slope_den = 1;
        std::uint64_t length = 0;  // horizontal extent
    };
    std::vector<Segment> segments;
    std::uint64_t x_min = 0, x_max = 0;
};

namespace detail {

inline long gcd_long(long a, long b) {
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

inline NewtonPolygon lower_hull(std::vector<std::pair<std::uint64_t, long>> pts) {
    if (pts.empty()) throw MathError("Newton polygon of the zero polynomial");
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<std::uint64_t, long>> hull;
    for (auto& pnt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            __int128 cross = static_cast<__int128>(b.first - a.first) * (pnt.second - a.second) -
                             static_cast<__int128>(b.second - a.second) * (pnt.first - a.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pnt);
    }
    NewtonPolygon np;
    np.x_min = hull.front().first;
    np.x_max = hull.back().first;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        long dy = hull[i].second - hull[i - 1].second;
        std::uint64_t dx = hull[i].first - hull[i - 1].first;
        long g = gcd_long(dy, static_cast<long>(dx));
        if (g == 0) g = 1;
        np.segments.push_back({dy / g, static_cast<long>(dx) / g, dx});
    }
    return np;
}

}  // namespace detail

// Hull of (q^i, v(a_i)) over the nonzero tau-coefficients of f at the place v.
inline NewtonPolygon newton_polygon(const TwistedPoly<FuncField>& f, const Place& v) {
    const FuncField& F = f.field;
    std::vector<std::pair<std::uint64_t, long>> pts;
    std::uint64_t x = 1;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (!F.is_zero(f.c[i])) pts.emplace_back(x, *valuation(F, f.c[i], v));
        if (i + 1 < f.c.size()) {
            if (x > (std::uint64_t(1) << 62) / F.q()) throw MathError("tau degree too large for a Newton polygon");
            x *= F.q();
        }
    }
    return detail::lower_hull(std::move(pts));
}

// Same hull for coefficients already living in a completion.
template <class K>
NewtonPolygon newton_polygon(const TwistedPoly<LaurentField<K>>& f) {
    const auto& L = f.field;
    std::vector<std::pair<std::uint64_t, long>> pts;
    std::uint64_t x = 1;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (!L.is_exact_zero(f.c[i])) {
            auto val = L.valuation(f.c[i]);  // throws PrecisionError on unknown zeros
            pts.emplace_back(x, *val);
        }
        if (i + 1 < f.c.size()) {
            if (x > (std::uint64_t(1) << 62) / L.q()) throw MathError("tau degree too large for a Newton polygon");
            x *= L.q();
        }
    }
    return detail::lower_hull(std::move(pts));
}

// Number of roots of eta(f) in the completion F_v, as the F_q-dimension k
// of the root subspace (the count is q^k). nullopt when a ramified residual
// is inseparable and still has roots, which Hensel cannot settle.
inline std::optional<unsigned> count_roots_local(const TwistedPoly<FuncField>& f, const Place& v) {
    const FuncField& F = f.field;
    const Fq& fq = F.base_fq();
    if (tw_is_zero(f)) throw MathError("root counting needs a nonzero polynomial");
    if (tw_invariants(f).height != 0)
        throw MathError("root counting needs a separable polynomial (height 0)");
    ResidueField rf = residue_field(fq, v);
    const auto& kres = rf.field;
    NewtonPolygon np = newton_polygon(f, v);

    // valuations and q-powers of the support
    std::vector<std::pair<std::uint64_t, long>> support;  // (q^i, v(c_i)) indexed by i
    std::vector<std::size_t> support_index;
    {
        std::uint64_t x = 1;
        for (std::size_t i = 0; i < f.c.size(); ++i) {
            if (!F.is_zero(f.c[i])) {
                support.emplace_back(x, *valuation(F, f.c[i], v));
                support_index.push_back(i);
            }
            if (i + 1 < f.c.size()) x *= F.q();
        }
    }

    std::uint64_t count = 1;  // the zero root
    for (const auto& seg : np.segments) {
        if (seg.slope_den != 1) continue;  // non-integral slope: no roots at that valuation
        const long s = -seg.slope_num;     // roots on this segment have valuation s
        // mu = min_i v(c_i) + s q^i
        __int128 mu = 0;
        bool first = true;
        for (auto& [x, val] : support) {
            __int128 t = static_cast<__int128>(val) + static_cast<__int128>(s) * x;
            if (first || t < mu) {
                mu = t;
                first = false;
            }
        }
        // residual rho_i = red(c_i u^(s q^i - mu))
        std::vector<PolyExt<Fq>::Elem> rho(f.c.size(), kres.zero());
        for (std::size_t t = 0; t < support.size(); ++t) {
            __int128 shift = static_cast<__int128>(s) * support[t].first - mu;
            if (shift > (1 << 30) || shift < -(1 << 30)) {
                // valuation astronomically positive -> reduces to zero
                if (shift < 0) throw MathError("internal: negative uniformizer shift in residual");
                continue;
            }
            long sh = static_cast<long>(shift);
            RationalFunction c = f.c[support_index[t]];
            RationalFunction pi = v.infinite ? F.inv(F.var_T()) : F.from_poly(v.gen);
            RationalFunction shifted =
                sh >= 0 ? F.mul(c, F.pow_u64(pi, static_cast<std::uint64_t>(sh)))
                        : F.div(c, F.pow_u64(pi, static_cast<std::uint64_t>(-sh)));
            rho[support_index[t]] = rf.reduce(F, shifted);
        }
        TwistedPoly<PolyExt<Fq>> rho_tw = tw_make(kres, std::move(rho));
        if (tw_is_zero(rho_tw)) throw MathError("internal: zero residual polynomial");
        // kernel of the residual as an F_q-linear map on the residue field
        const unsigned n = kres.fq_dim();
        Matrix<Fq> mat(n, std::vector<FqElem>(n, fq.zero()));
        for (unsigned j = 0; j < n; ++j) {
            std::vector<FqElem> coords(n, fq.zero());
            coords[j] = fq.one();
            auto img = tw_evaluate(rho_tw, kres.from_fq(coords));
            auto img_coords = kres.to_fq(img);
            for (unsigned i = 0; i < n; ++i) mat[i][j] = img_coords[i];
        }
        unsigned kappa = static_cast<unsigned>(kernel_basis(fq, std::move(mat)).size());
        if (kappa == 0) continue;  // no residual roots, hence none at this valuation
        if (tw_invariants(rho_tw).height != 0) return std::nullopt;  // inseparable residual with roots
        std::uint64_t roots = 1;
        for (unsigned t = 0; t < kappa; ++t) roots *= fq.q();
        count += roots - 1;
    }
    // the root set is an F_q-subspace, so the count must be a q-power
    unsigned k = 0;
    std::uint64_t check = 1;
    while (check < count) {
        check *= fq.q();
        ++k;
    }
    if (check != count) throw MathError("internal: local root count is not a power of q");
    return k;
}

// ---------------------------------------------------------------------------
// Eisenstein certificate

// True when phi_p(x)/x is Eisenstein at v (unit leading coefficient,
// positive-valuation middle coefficients, constant coefficient of valuation
// exactly one) and of degree >= 2, which rules out roots of phi_p(x)/x in
// F_v and hence kills H^0(F_w, phi[p^inf]) above v.
inline bool eisenstein_vanishing(const FModule& mod, const Place& p, const Place& v) {
    if (p.infinite) throw MathError("the distinguished prime must be finite");
    const FuncField& F = mod.field;
    auto phip = phi_of(mod, p.gen);
    const std::size_t D = phip.c.size() - 1;
    // degree of phi_p(x)/x is q^D - 1; the criterion needs at least 2
    if (D == 0) return false;
    if (F.q() == 2 && D == 1) return false;
    auto v0 = valuation(F, phip.c[0], v);
    if (!v0 || *v0 != 1) return false;
    auto vD = valuation(F, phip.c[D], v);
    if (!vD || *vD != 0) return false;
    for (std::size_t i = 1; i < D; ++i) {
        if (F.is_zero(phip.c[i])) continue;
        if (*valuation(F, phip.c[i], v) < 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// H^0 along the tower

// Length over the residue field of p of the Frobenius^(p^m)-fixed points of
// phibar[p^n]: torsion of the reduction rational over the degree-p^m
// constant extension of the residue field at v.
inline unsigned h0_layer(const FModule& mod, const Place& p, unsigned n, const Place& v,
                         unsigned m, std::uint64_t seed) {
    if (p.infinite) throw MathError("the distinguished prime must be finite");
    if (v.infinite || place_eq(mod.field.base_fq(), v, p))
        throw MathError("unramified method inapplicable");
    auto rt = reduction_type(mod, v, seed);
    if (rt.tag != ReductionTag::Good) throw MathError("unramified method inapplicable");
    if (n == 0) return 0;
    const Fq& fq = mod.field.base_fq();
    std::uint64_t ext_deg = 1;
    for (unsigned t = 0; t < m; ++t) ext_deg *= fq.p();
    if (ext_deg * v.degree() > 512) throw MathError("tower layer too large for linear algebra");
    FqPoly a = poly_one(fq);
    for (unsigned t = 0; t < n; ++t) a = poly_mul(fq, a, p.gen);
    ReducedModule red = reduce(mod, v, seed);
    unsigned dim_fq = torsion_kernel(red, a, static_cast<unsigned>(ext_deg), seed).dim_fq;
    if (dim_fq % p.degree() != 0)
        throw MathError("internal: fixed space dimension not divisible by deg p");
    unsigned len = dim_fq / p.degree();
    if (len > mod.rank() * n) throw MathError("internal: H^0 exceeds the torsion length");
    return len;
}

// Stabilized-over-m value of h0_layer; certified when the value stops
// changing for two consecutive layers or the full torsion length is hit.
inline std::optional<unsigned> h0_layer_stable(const FModule& mod, const Place& p, unsigned n,
                                               const Place& v, const Config& cfg) {
    const unsigned full = mod.rank() * n;
    std::optional<unsigned> prev, prev2;
    for (unsigned m = 0; m <= cfg.max_m; ++m) {
        unsigned h;
        try {
            h = h0_layer(mod, p, n, v, m, cfg.seed);
        } catch (const MathError&) {
            return std::nullopt;  // layer too large to certify
        }
        if (h == full) return h;
        if (prev && prev2 && *prev == h && *prev2 == h) return h;
        prev2 = prev;
        prev = h;
    }
    return std::nullopt;
}

enum class LocalMethod { Unramified, Eisenstein, NewtonHensel, WorstCase };

inline const char* to_string(LocalMethod m) {
    switch (m) {
        case LocalMethod::Unramified: return "Unramified";
        case LocalMethod::Eisenstein: return "Eisenstein";
        case LocalMethod::NewtonHensel: return "NewtonHensel";
        case LocalMethod::WorstCase: return "WorstCase";
    }
    return "?";
}

struct LocalH0 {
    std::optional<unsigned> dim;  // length over the residue field of p; nullopt = Unknown
    LocalMethod method = LocalMethod::WorstCase;
    std::vector<unsigned> layers;  // stabilized h_n values, when the unramified route ran
};

// dim(H^0(F_w, phi[p^inf]) (x) F_p) for any w above v. Good unramified
// places go through the h_n corank detection; p itself and ramified places
// go through the Eisenstein and Newton-Hensel certificates; anything else
// is Unknown and the caller substitutes the rank.
inline LocalH0 h0_tensor_term(const FModule& mod, const Place& p, const Place& v,
                              const Config& cfg) {
    const Fq& fq = mod.field.base_fq();
    bool unramified_applicable = !v.infinite && !place_eq(fq, v, p);
    if (unramified_applicable) {
        try {
            unramified_applicable = reduction_type(mod, v, cfg.seed).tag == ReductionTag::Good;
        } catch (const MathError&) {
            unramified_applicable = false;
        }
    }
    if (unramified_applicable) {
        LocalH0 out;
        out.method = LocalMethod::Unramified;
        std::vector<unsigned> h;
        bool all_known = true;
        for (unsigned n = 1; n <= cfg.max_n && all_known; ++n) {
            auto hn = h0_layer_stable(mod, p, n, v, cfg);
            if (!hn) {
                all_known = false;
                break;
            }
            h.push_back(*hn);
            if (n == 1 && *hn == 0) {
                out.dim = 0;  // phi[p] has no invariants, so no p-power torsion at all
                out.layers = h;
                return out;
            }
        }
        if (all_known && h.size() >= 3) {
            // corank = the stabilized increment h_{n+1} - h_n
            for (std::size_t i = 0; i + 2 < h.size(); ++i) {
                unsigned d1 = h[i + 1] - h[i];
                unsigned d2 = h[i + 2] - h[i + 1];
                if (d1 == d2) {
                    out.dim = h[0] - d1;
                    out.layers = h;
                    return out;
                }
            }
        }
        // no certificate: fall through to Unknown
        LocalH0 unknown;
        unknown.method = LocalMethod::WorstCase;
        unknown.layers = h;
        return unknown;
    }
    if (eisenstein_vanishing(mod, p, v)) return {0, LocalMethod::Eisenstein, {}};
    // Newton-Hensel at the bottom layer: a certified 0 for phi[p] over F_v
    // propagates to all of phi[p^inf] above v
    auto roots = count_roots_local(phi_of(mod, p.gen), v);
    if (roots && *roots == 0) return {0, LocalMethod::NewtonHensel, {}};
    return {std::nullopt, LocalMethod::WorstCase, {}};
}

}  // namespace drinfeld

#endif  // DRINFELD_LOCAL_HPP
