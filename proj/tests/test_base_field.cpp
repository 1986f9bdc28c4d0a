#include "doctest.h"

#include <map>
#include <set>

#include "drinfeld/base_field.hpp"

using namespace drinfeld;

namespace {
const std::uint64_t kSeed = 0x5eed0d21ULL;

RationalFunction rat(const Fq& fq, const std::string& s) { return parse_rational(fq, s); }
}  // namespace

TEST_CASE("field params validation") {
    CHECK_THROWS_AS(Fq(4), MathError);   // not prime
    CHECK_THROWS_AS(Fq(1), MathError);
    Fq f3(3);
    CHECK(f3.q() == 3);
    // F_9 = F_3[g]/(g^2+1)
    Fq f9(3, {1, 0, 1});
    CHECK(f9.q() == 9);
    FqElem g = f9.generator_g();
    CHECK(f9.eq(f9.mul(g, g), f9.from_int(-1)));
    // reducible modulus rejected: g^2-1 = (g-1)(g+1)
    CHECK_THROWS_AS(Fq(3, {2, 0, 1}), MathError);
    // non-monic rejected
    CHECK_THROWS_AS(Fq(3, {1, 0, 2}), MathError);
}

TEST_CASE("F_q arithmetic basics") {
    Fq f9(3, {1, 0, 1});
    Rng rng(kSeed);
    for (int i = 0; i < 200; ++i) {
        FqElem a = f9.random(rng), b = f9.random_nonzero(rng);
        CHECK(f9.eq(f9.mul(f9.div(a, b), b), a));
        CHECK(f9.eq(f9.frobenius_q(a), a));  // x^q fixes F_q
        CHECK(f9.eq(f9.pow_u64(a, 9), a));
    }
}

TEST_CASE("polynomial text syntax") {
    Fq fq(3);
    FqPoly p = parse_poly(fq, "T^3+2*T+1");
    CHECK(poly_deg<Fq>(p) == 3);
    CHECK(print_poly(fq, p) == "T^3+2*T+1");
    CHECK(poly_eq(fq, parse_poly(fq, print_poly(fq, p)), p));

    CHECK_THROWS_AS(parse_poly(fq, "T^2+x"), ParseError);
    CHECK_THROWS_AS(parse_poly(fq, "g*T"), ParseError);  // no generator over a prime field
    CHECK_THROWS_AS(parse_poly(fq, "1/(T+1)"), ParseError);

    Fq f9(3, {1, 0, 1});
    FqPoly pg = parse_poly(f9, "(g+1)*T^2+g*T+2");
    CHECK(print_poly(f9, pg) == "(g+1)*T^2+g*T+2");
    CHECK(poly_eq(f9, parse_poly(f9, print_poly(f9, pg)), pg));
}

TEST_CASE("factor worked examples") {
    Fq fq(3);
    SUBCASE("T^2-1 splits into linear factors") {
        auto fac = factor(fq, parse_poly(fq, "T^2-1"), kSeed);
        REQUIRE(fac.factors.size() == 2);
        std::set<std::string> got;
        for (auto& [f, e] : fac.factors) {
            CHECK(e == 1);
            got.insert(print_poly(fq, f));
        }
        CHECK(got == std::set<std::string>{"T+1", "T+2"});
    }
    SUBCASE("T^2+1 stays irreducible") {
        // independent check: no residue is a root
        FqPoly f = parse_poly(fq, "T^2+1");
        for (std::uint64_t a = 0; a < 3; ++a)
            CHECK(!fq.is_zero(poly_eval(fq, f, FqElem{a})));
        auto fac = factor(fq, f, kSeed);
        REQUIRE(fac.factors.size() == 1);
        CHECK(fac.factors[0].second == 1);
        CHECK(print_poly(fq, fac.factors[0].first) == "T^2+1");
    }
    SUBCASE("T^q - T = prod (T - a)") {
        auto fac = factor(fq, parse_poly(fq, "T^3-T"), kSeed);
        REQUIRE(fac.factors.size() == 3);
        std::set<std::string> got;
        for (auto& [f, e] : fac.factors) got.insert(print_poly(fq, f));
        CHECK(got == std::set<std::string>{"T", "T+1", "T+2"});
    }
    SUBCASE("zero input") {
        CHECK_THROWS_WITH_AS(factor(fq, {}, kSeed), "zero polynomial has no factorization", MathError);
    }
    SUBCASE("multiplicities and unit") {
        auto fac = factor(fq, parse_poly(fq, "2*T^2+4*T+2"), kSeed);  // 2*(T+1)^2
        REQUIRE(fac.factors.size() == 1);
        CHECK(fac.factors[0].second == 2);
        CHECK(fq.eq(fac.unit, fq.from_int(2)));
    }
}

TEST_CASE("factor is multiplicative on random pairs") {
    Fq fq(3);
    Rng rng(derive_seed(kSeed, "factor-mult"));
    for (int trial = 0; trial < 25; ++trial) {
        FqPoly a = poly_random_monic(fq, 1 + rng.below(4), rng);
        FqPoly b = poly_random_monic(fq, 1 + rng.below(4), rng);
        auto fa = factor(fq, a, kSeed), fb = factor(fq, b, kSeed);
        auto fab = factor(fq, poly_mul(fq, a, b), kSeed);
        std::multiset<std::pair<std::string, unsigned>> lhs, rhs;
        for (auto& [f, e] : fab.factors) lhs.insert({print_poly(fq, f), e});
        std::map<std::string, unsigned> merged;
        for (auto& [f, e] : fa.factors) merged[print_poly(fq, f)] += e;
        for (auto& [f, e] : fb.factors) merged[print_poly(fq, f)] += e;
        for (auto& [s, e] : merged) rhs.insert({s, e});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("factorization is deterministic under the seed") {
    Fq fq(5);
    FqPoly f = parse_poly(fq, "T^6+2*T^4+T^2+3");
    auto f1 = factor(fq, f, 42), f2 = factor(fq, f, 42);
    REQUIRE(f1.factors.size() == f2.factors.size());
    for (std::size_t i = 0; i < f1.factors.size(); ++i) {
        CHECK(poly_eq(fq, f1.factors[i].first, f2.factors[i].first));
        CHECK(f1.factors[i].second == f2.factors[i].second);
    }
    // and the product reconstructs the input
    FqPoly prod = poly_const(fq, f1.unit);
    for (auto& [g, e] : f1.factors)
        for (unsigned i = 0; i < e; ++i) prod = poly_mul(fq, prod, g);
    CHECK(poly_eq(fq, prod, f));
}

TEST_CASE("valuations") {
    Fq fq(3);
    FuncField F(fq);
    Place inf = place_infinity();
    Place t = make_place(fq, parse_poly(fq, "T"));
    Place t1 = make_place(fq, parse_poly(fq, "T+1"));

    CHECK(valuation(F, F.var_T(), inf) == -1);
    CHECK(valuation(F, F.one(), inf) == 0);
    CHECK(valuation(F, F.one(), t) == 0);
    CHECK(valuation(F, rat(fq, "(T+1)^2*T"), t1) == 2);
    CHECK(valuation(F, rat(fq, "(T+1)^2*T"), t) == 1);
    CHECK(valuation(F, rat(fq, "(T+1)^2*T"), inf) == -3);
    CHECK(!valuation(F, F.zero(), t).has_value());  // +infinity
}

TEST_CASE("product formula over sampled rational functions") {
    Fq fq(3);
    FuncField F(fq);
    Rng rng(derive_seed(kSeed, "product-formula"));
    for (int trial = 0; trial < 20; ++trial) {
        FqPoly num = poly_random_monic(fq, 1 + rng.below(4), rng);
        FqPoly den = poly_random_monic(fq, 1 + rng.below(4), rng);
        RationalFunction x = F.make(num, den);
        if (F.is_zero(x)) continue;
        // deg(inf) = 1; x is normalized so num and den share no factors
        long total = valuation(F, x, place_infinity()).value();
        auto collect = [&](const FqPoly& f) {
            for (auto& [l, e] : factor(fq, f, kSeed).factors) {
                Place v{false, l};
                total += static_cast<long>(v.degree()) * valuation(F, x, v).value();
            }
        };
        collect(x.num);
        collect(x.den);
        CHECK(total == 0);
    }
}

TEST_CASE("residue fields and reduction maps") {
    Fq fq(3);
    FuncField F(fq);
    SUBCASE("at (T): T maps to 0") {
        ResidueField rf = residue_field(fq, make_place(fq, parse_poly(fq, "T")));
        CHECK(rf.field.fq_dim() == 1);
        CHECK(rf.field.is_zero(rf.reduce(F, F.var_T())));
        CHECK(rf.field.eq(rf.reduce(F, rat(fq, "T+2")), rf.field.from_int(2)));
        CHECK_THROWS_WITH_AS(rf.reduce(F, rat(fq, "1/T")), "not v-integral", MathError);
    }
    SUBCASE("at (T^2+1): field of size 9") {
        ResidueField rf = residue_field(fq, make_place(fq, parse_poly(fq, "T^2+1")));
        CHECK(rf.field.fq_dim() == 2);  // 3^2 = 9 elements
        auto tbar = rf.reduce(F, F.var_T());
        // T^2 = -1 in the residue field
        CHECK(rf.field.eq(rf.field.mul(tbar, tbar), rf.field.from_int(-1)));
    }
    SUBCASE("at infinity: reduce by 1/T -> 0") {
        ResidueField rf = residue_field(fq, place_infinity());
        CHECK(rf.field.fq_dim() == 1);
        CHECK(rf.field.is_zero(rf.reduce(F, rat(fq, "1/T"))));
        CHECK(rf.field.eq(rf.reduce(F, rat(fq, "(2*T^2+1)/(T^2+T)")), rf.field.from_int(2)));
        CHECK_THROWS_WITH_AS(rf.reduce(F, F.var_T()), "not v-integral", MathError);
    }
    SUBCASE("reduction is a ring homomorphism") {
        ResidueField rf = residue_field(fq, make_place(fq, parse_poly(fq, "T^2+1")));
        Rng rng(derive_seed(kSeed, "residue-hom"));
        for (int trial = 0; trial < 30; ++trial) {
            FqPoly a = poly_random_monic(fq, rng.below(4), rng);
            FqPoly b = poly_random_monic(fq, rng.below(4), rng);
            RationalFunction x = F.from_poly(a), y = F.from_poly(b);
            CHECK(rf.field.eq(rf.reduce(F, F.add(x, y)), rf.field.add(rf.reduce(F, x), rf.reduce(F, y))));
            CHECK(rf.field.eq(rf.reduce(F, F.mul(x, y)), rf.field.mul(rf.reduce(F, x), rf.reduce(F, y))));
        }
    }
}

TEST_CASE("places parse and order canonically") {
    Fq fq(3);
    CHECK(parse_place(fq, "inf").infinite);
    Place t1 = parse_place(fq, "T+1");
    CHECK(t1.degree() == 1);
    CHECK(print_place(fq, t1) == "T+1");
    CHECK_THROWS_AS(parse_place(fq, "T^2-1"), MathError);  // reducible
    CHECK(place_less(fq, parse_place(fq, "T"), parse_place(fq, "T+1")));
    CHECK(place_less(fq, parse_place(fq, "T+1"), parse_place(fq, "inf")));
    CHECK(place_less(fq, parse_place(fq, "inf"), parse_place(fq, "T^2+1")));
}
