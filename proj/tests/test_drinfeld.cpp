#include "doctest.h"

#include "drinfeld/drinfeld_module.hpp"

using namespace drinfeld;

namespace {
const std::uint64_t kSeed = 0x5eed0d21ULL;

FModule module_from(const FuncField& F, std::initializer_list<const char*> coeffs) {
    std::vector<RationalFunction> c;
    for (auto* s : coeffs) c.push_back(parse_rational(F.base_fq(), s));
    return make_f_module(F, std::move(c));
}

FModule carlitz(const FuncField& F) { return module_from(F, {"1"}); }

// Independent classification oracle: brute search of normalizing valuations
// w in a window, checking the inequality system directly.
ReductionType reduction_oracle(const FModule& mod, const Place& l, std::uint64_t seed) {
    const FuncField& F = mod.field;
    FModule integr = integral_model(mod, seed).mod;
    const unsigned r = integr.rank();
    long window = 1;
    for (unsigned i = 1; i <= r; ++i) {
        auto v = valuation(F, integr.coeffs[i - 1], l);
        if (v) window = std::max(window, std::abs(*v) + 1);
    }
    ReductionType best;
    best.tag = ReductionTag::Undetermined;
    for (long w = -window; w <= window; ++w) {
        bool integral = true;
        std::vector<unsigned> units;
        for (unsigned i = 1; i <= r; ++i) {
            auto v = valuation(F, integr.coeffs[i - 1], l);
            if (!v) continue;
            long qi = 1;
            for (unsigned t = 0; t < i; ++t) qi *= static_cast<long>(F.base_fq().q());
            long shifted = (qi - 1) * w + *v;
            if (shifted < 0) integral = false;
            if (shifted == 0) units.push_back(i);
        }
        if (integral && !units.empty()) {
            best.tag = units.back() == r ? ReductionTag::Good : ReductionTag::StableBad;
            best.reduced_rank = units.back();
            best.w = w;
            best.unit_indices = units;
            return best;  // only one w can work; take it
        }
    }
    return best;
}
}  // namespace

TEST_CASE("phi_of worked examples") {
    Fq fq(3);
    FuncField F(fq);
    FModule c = carlitz(F);
    SUBCASE("Carlitz phi_{T^2}") {
        auto f = phi_of(c, parse_poly(fq, "T^2"));
        auto expect = tw_make(F, std::vector<RationalFunction>{
                                     parse_rational(fq, "T^2"), parse_rational(fq, "T+T^3"), F.one()});
        CHECK(tw_eq(f, expect));
    }
    SUBCASE("constants embed as themselves") {
        auto f = phi_of(c, parse_poly(fq, "2"));
        CHECK(tw_deg(f) == 0);
        CHECK(F.eq(f.c[0], F.from_int(2)));
    }
    SUBCASE("rank 2, deg 3 gives tau-degree 6") {
        FModule m = module_from(F, {"1", "T"});
        auto f = phi_of(m, parse_poly(fq, "T^3+T+1"));
        CHECK(tw_deg(f) == 6);
    }
}

TEST_CASE("homomorphism laws and derivative (sampled)") {
    Fq fq(3);
    FuncField F(fq);
    Rng rng(derive_seed(kSeed, "dm-hom"));
    std::vector<FModule> mods = {carlitz(F), module_from(F, {"T", "1"}),
                                 module_from(F, {"1", "T+1", "2"})};
    for (const auto& m : mods) {
        for (int trial = 0; trial < 12; ++trial) {
            FqPoly a = poly_random_monic(fq, rng.below(3), rng);
            FqPoly b = poly_random_monic(fq, rng.below(3), rng);
            auto pa = phi_of(m, a), pb = phi_of(m, b);
            CHECK(tw_eq(phi_of(m, poly_mul(fq, a, b)), tw_mul(pa, pb)));
            CHECK(tw_eq(phi_of(m, poly_add(fq, a, b)), tw_add(pa, pb)));
            CHECK(tw_deg(pa) == static_cast<long>(m.rank()) * poly_deg<Fq>(a));
            // derivative recovers gamma(a) = a, and phi_a is separable
            CHECK(F.eq(tw_derivative(pa), F.from_poly(a)));
            CHECK(tw_invariants(pa).separable);
        }
    }
}

TEST_CASE("twisting") {
    Fq fq(3);
    FuncField F(fq);
    SUBCASE("c = 1 leaves the module unchanged") {
        FModule m = module_from(F, {"T+1", "T"});
        auto tw1 = twist(m, F.one());
        for (unsigned i = 0; i < m.rank(); ++i) CHECK(F.eq(tw1.coeffs[i], m.coeffs[i]));
    }
    SUBCASE("Carlitz twisted by c = T gets u = T^(q-1)") {
        auto psi = twist(carlitz(F), F.var_T());
        REQUIRE(psi.rank() == 1);
        CHECK(F.eq(psi.coeffs[0], parse_rational(fq, "T^2")));
        CHECK(F.eq(psi.gamma_T, F.var_T()));
    }
    SUBCASE("twist by c then 1/c is the identity") {
        Rng rng(derive_seed(kSeed, "dm-twist"));
        FModule m = module_from(F, {"T", "T+2", "1"});
        for (int trial = 0; trial < 10; ++trial) {
            FqPoly p = poly_random_monic(fq, 1 + rng.below(2), rng);
            RationalFunction c = F.from_poly(p);
            auto round = twist(twist(m, c), F.inv(c));
            for (unsigned i = 0; i < m.rank(); ++i) CHECK(F.eq(round.coeffs[i], m.coeffs[i]));
        }
    }
    SUBCASE("twisting by zero is rejected") {
        CHECK_THROWS_AS(twist(carlitz(F), F.zero()), MathError);
    }
}

TEST_CASE("integral model clears denominators") {
    Fq fq(3);
    FuncField F(fq);
    FModule m = module_from(F, {"1/T", "(T+1)/(T^2)"});
    auto im = integral_model(m, kSeed);
    for (const auto& a : im.mod.coeffs) CHECK(F.is_poly(a));
    CHECK(im.mod.rank() == m.rank());
}

TEST_CASE("reduction classification") {
    Fq fq(3);
    FuncField F(fq);
    SUBCASE("Carlitz has good reduction everywhere") {
        for (const char* pl : {"T", "T+1", "T+2", "T^2+1"}) {
            auto rt = reduction_type(carlitz(F), parse_place(fq, pl), kSeed);
            CHECK(rt.tag == ReductionTag::Good);
        }
    }
    SUBCASE("T + tau + (T+1) tau^2 is StableBad(1) at (T+1)") {
        FModule m = module_from(F, {"1", "T+1"});
        auto rt = reduction_type(m, parse_place(fq, "T+1"), kSeed);
        CHECK(rt.tag == ReductionTag::StableBad);
        CHECK(rt.reduced_rank == 1);
        CHECK(rt.w == 0);
    }
    SUBCASE("integral coefficients with unit a_r reduce well") {
        FModule m = module_from(F, {"T^2", "1"});
        CHECK(reduction_type(m, parse_place(fq, "T"), kSeed).tag == ReductionTag::Good);
    }
    SUBCASE("rank 1 with odd pole order is undetermined") {
        FModule m = module_from(F, {"T"});
        auto rt = reduction_type(m, parse_place(fq, "T"), kSeed);
        CHECK(rt.tag == ReductionTag::Undetermined);
    }
    SUBCASE("agreement with the valuation-window oracle on random modules") {
        Rng rng(derive_seed(kSeed, "dm-red-oracle"));
        for (int trial = 0; trial < 40; ++trial) {
            unsigned r = 1 + rng.below(3);
            std::vector<RationalFunction> cs;
            for (unsigned i = 0; i < r; ++i) {
                FqPoly num(1 + rng.below(4), fq.zero());
                for (auto& x : num) x = fq.random(rng);
                FqPoly den = poly_random_monic(fq, rng.below(3), rng);
                cs.push_back(F.make(num, den));
            }
            if (F.is_zero(cs.back())) cs.back() = F.one();
            FModule m = make_f_module(F, std::move(cs));
            for (const char* pl : {"T", "T+1"}) {
                Place l = parse_place(fq, pl);
                auto fast = reduction_type(m, l, kSeed);
                auto slow = reduction_oracle(m, l, kSeed);
                CHECK(fast.tag == slow.tag);
                if (fast.tag != ReductionTag::Undetermined) {
                    CHECK(fast.reduced_rank == slow.reduced_rank);
                    CHECK(fast.w == slow.w);
                }
            }
        }
    }
    SUBCASE("classification is twist-invariant") {
        Rng rng(derive_seed(kSeed, "dm-red-twist"));
        FModule m = module_from(F, {"1", "T+1"});
        for (int trial = 0; trial < 10; ++trial) {
            FqPoly p = poly_random_monic(fq, 1 + rng.below(2), rng);
            auto tw_m = twist(m, F.from_poly(p));
            for (const char* pl : {"T", "T+1", "T+2"}) {
                Place l = parse_place(fq, pl);
                CHECK(reduction_type(tw_m, l, kSeed).tag == reduction_type(m, l, kSeed).tag);
            }
        }
    }
}

TEST_CASE("height of reduction") {
    Fq fq(3);
    FuncField F(fq);
    SUBCASE("Carlitz at (T): phibar_T = tau, H = 1") {
        CHECK(height_of_reduction(carlitz(F), parse_place(fq, "T"), kSeed) == 1);
    }
    SUBCASE("rank 1 good reduction forces H = 1") {
        CHECK(height_of_reduction(carlitz(F), parse_place(fq, "T^2+1"), kSeed) == 1);
    }
    SUBCASE("T + tau^2 at (T) is supersingular-like: H = 2") {
        FModule m = module_from(F, {"0", "1"});
        CHECK(height_of_reduction(m, parse_place(fq, "T"), kSeed) == 2);
    }
    SUBCASE("height requires good reduction") {
        FModule m = module_from(F, {"1", "T+1"});
        CHECK_THROWS_WITH_AS(height_of_reduction(m, parse_place(fq, "T+1"), kSeed),
                             "height defined for good reduction only", MathError);
    }
}

TEST_CASE("torsion kernels") {
    Fq fq(3);
    FuncField F(fq);
    SUBCASE("Carlitz at (T+1), a = T, e = 1: all of phi[T] is rational") {
        auto red = reduce(carlitz(F), parse_place(fq, "T+1"), kSeed);
        auto tk = torsion_kernel(red, parse_poly(fq, "T"), 1, kSeed);
        CHECK(tk.dim_fq == 1);  // 3 = q^1 points
    }
    SUBCASE("a = 1: trivial kernel") {
        auto red = reduce(carlitz(F), parse_place(fq, "T+1"), kSeed);
        CHECK(torsion_kernel(red, poly_one(fq), 1, kSeed).dim_fq == 0);
    }
    SUBCASE("characteristic torsion is rejected") {
        auto red = reduce(carlitz(F), parse_place(fq, "T+1"), kSeed);
        CHECK_THROWS_WITH_AS(torsion_kernel(red, parse_poly(fq, "T+1"), 1, kSeed),
                             "inseparable torsion requested", MathError);
        CHECK_THROWS_WITH_AS(torsion_kernel(red, parse_poly(fq, "T^2+T"), 1, kSeed),
                             "inseparable torsion requested", MathError);
    }
    SUBCASE("kernel dimension grows along nested extensions and caps at r deg a") {
        FModule m = module_from(F, {"1", "1"});  // rank 2
        auto red = reduce(m, parse_place(fq, "T"), kSeed);
        FqPoly a = parse_poly(fq, "T+1");
        for (unsigned e = 1; e <= 6; ++e) CHECK(torsion_kernel(red, a, e, kSeed).dim_fq <= 2);
        CHECK(torsion_kernel(red, a, 2, kSeed).dim_fq >= torsion_kernel(red, a, 1, kSeed).dim_fq);
        CHECK(torsion_kernel(red, a, 4, kSeed).dim_fq >= torsion_kernel(red, a, 2, kSeed).dim_fq);
    }
    SUBCASE("kernel basis elements really are roots") {
        auto red = reduce(carlitz(F), parse_place(fq, "T+1"), kSeed);
        auto tk = torsion_kernel(red, parse_poly(fq, "T"), 1, kSeed);
        auto phia = phi_of(red.mod, parse_poly(fq, "T"));
        auto embed = [&](const PolyExt<Fq>::Elem& c) { return tk.ext.embed_base(c); };
        for (auto& b : tk.basis)
            CHECK(tk.ext.is_zero(tw_evaluate_in(phia, tk.ext, embed, b)));
    }
    SUBCASE("nesting: ker phi_a inside ker phi_ab, phi_a maps ker phi_ab into ker phi_b") {
        FModule m = module_from(F, {"T", "1"});
        auto red = reduce(m, parse_place(fq, "T+2"), kSeed);
        FqPoly a = parse_poly(fq, "T");
        FqPoly b = parse_poly(fq, "T+1");
        FqPoly ab = poly_mul(fq, a, b);
        unsigned e = 4;
        auto tk_ab = torsion_kernel(red, ab, e, kSeed);
        auto phia = phi_of(red.mod, a);
        auto phib = phi_of(red.mod, b);
        auto embed = [&](const PolyExt<Fq>::Elem& c) { return tk_ab.ext.embed_base(c); };
        for (auto& x : tk_ab.basis) {
            auto y = tw_evaluate_in(phia, tk_ab.ext, embed, x);
            CHECK(tk_ab.ext.is_zero(tw_evaluate_in(phib, tk_ab.ext, embed, y)));
        }
        auto tk_a = torsion_kernel(red, a, e, kSeed);
        CHECK(tk_a.dim_fq <= tk_ab.dim_fq);
        auto phiab = phi_of(red.mod, ab);
        auto embed_a = [&](const PolyExt<Fq>::Elem& c) { return tk_a.ext.embed_base(c); };
        for (auto& x : tk_a.basis)
            CHECK(tk_a.ext.is_zero(tw_evaluate_in(phiab, tk_a.ext, embed_a, x)));
    }
}

TEST_CASE("torsion module structure") {
    Fq fq(3);
    FuncField F(fq);
    SUBCASE("Carlitz at (T+1), a = T: a single A/(T)") {
        auto red = reduce(carlitz(F), parse_place(fq, "T+1"), kSeed);
        auto st = torsion_module_structure(red, parse_poly(fq, "T"), 1, kSeed);
        REQUIRE(st.elementary.size() == 1);
        CHECK(print_poly(fq, st.elementary[0].prime) == "T");
        CHECK(st.elementary[0].exponent == 1);
        CHECK(st.elementary[0].count == 1);
        REQUIRE(st.invariant_chain.size() == 1);
        CHECK(print_poly(fq, st.invariant_chain[0]) == "T");
    }
    SUBCASE("trivial kernel gives the zero module") {
        // x^2 = 2 has no root in F_3, so phi[T] of T + 2 tau is invisible
        FModule m = module_from(F, {"2"});
        auto red = reduce(m, parse_place(fq, "T+1"), kSeed);
        REQUIRE(torsion_kernel(red, parse_poly(fq, "T"), 1, kSeed).dim_fq == 0);
        auto st = torsion_module_structure(red, parse_poly(fq, "T"), 1, kSeed);
        CHECK(st.elementary.empty());
        CHECK(st.invariant_chain.empty());
    }
    SUBCASE("profile cardinality matches the kernel dimension") {
        FModule m = module_from(F, {"T", "1"});
        auto red = reduce(m, parse_place(fq, "T+2"), kSeed);
        FqPoly a = parse_poly(fq, "T^2+T");  // (T)(T+1)
        for (unsigned e : {1u, 2u, 4u}) {
            auto tk = torsion_kernel(red, a, e, kSeed);
            auto st = torsion_module_structure(red, a, e, kSeed);
            unsigned total = 0;
            for (auto& part : st.elementary)
                total += part.count * part.exponent * static_cast<unsigned>(poly_deg<Fq>(part.prime));
            CHECK(total == tk.dim_fq);
        }
    }
    SUBCASE("over a splitting extension the profile is r copies of A/a") {
        auto red = reduce(carlitz(F), parse_place(fq, "T+1"), kSeed);
        FqPoly a = parse_poly(fq, "T^2");
        for (unsigned e = 1; e <= 9; ++e) {
            auto tk = torsion_kernel(red, a, e, kSeed);
            if (tk.dim_fq == 2) {  // q^(r deg a) = 9 points: fully split
                auto st = torsion_module_structure(red, a, e, kSeed);
                REQUIRE(st.invariant_chain.size() == 1);
                CHECK(poly_eq(fq, st.invariant_chain[0], a));
                return;
            }
        }
        FAIL("phi[T^2] did not split within extension degree 9");
    }
}
