#include "doctest.h"

#include "drinfeld/iwasawa.hpp"

using namespace drinfeld;

namespace {
const std::uint64_t kSeed = 0x5eed0d21ULL;

ORing make_O(unsigned prec = 8) {
    Fq fq(3);
    return ORing(fq, parse_place(fq, "T"), prec);
}

// series from coefficient strings (A-polynomials), lowest T-degree first
IwasawaSeries ser(const ORing& O, std::initializer_list<const char*> coeffs, unsigned prec_T,
                  bool poly = true) {
    std::vector<ORing::Elem> c;
    for (auto* s : coeffs) c.push_back(O.from_poly(parse_poly(O.base_fq(), s)));
    return series_make(O, std::move(c), prec_T, poly);
}

IwasawaSeries random_unit_series(const ORing& O, unsigned prec_T, Rng& rng) {
    const Fq& fq = O.base_fq();
    std::vector<ORing::Elem> c;
    for (unsigned i = 0; i < prec_T; ++i) {
        FqPoly p(O.prec() * O.residue_degree(), fq.zero());
        for (auto& x : p) x = fq.random(rng);
        c.push_back(O.from_poly(std::move(p)));
    }
    // force a unit constant term
    while (!O.is_unit(c[0])) c[0] = O.add(c[0], O.one());
    return series_make(O, std::move(c), prec_T, false);
}

IwasawaSeries random_distinguished(const ORing& O, unsigned lambda, unsigned prec_T, Rng& rng) {
    const Fq& fq = O.base_fq();
    std::vector<ORing::Elem> c(lambda + 1, O.zero());
    c[lambda] = O.one();
    for (unsigned i = 0; i < lambda; ++i) {
        FqPoly p((O.prec() - 1) * O.residue_degree(), fq.zero());
        for (auto& x : p) x = fq.random(rng);
        c[i] = O.mul_pi(O.from_poly(std::move(p)), 1);
    }
    return series_make(O, std::move(c), prec_T, true);
}
}  // namespace

TEST_CASE("coefficient ring O = A_p at finite precision") {
    ORing O = make_O(4);
    SUBCASE("valuation and units") {
        CHECK(*O.valuation(O.one()) == 0);
        CHECK(*O.valuation(O.pi()) == 1);
        CHECK(!O.valuation(O.zero()).has_value());
        CHECK(O.is_unit(O.from_poly(parse_poly(O.base_fq(), "T+1"))));
        CHECK(!O.is_unit(O.pi()));
        // T^4 = pi^4 == 0 at precision 4
        CHECK(O.is_zero(O.from_poly(parse_poly(O.base_fq(), "T^4"))));
    }
    SUBCASE("inversion") {
        auto a = O.from_poly(parse_poly(O.base_fq(), "T^2+T+1"));
        CHECK(O.eq(O.mul(a, O.inv(a)), O.one()));
        CHECK_THROWS_AS(O.inv(O.pi()), MathError);
    }
    SUBCASE("residue map") {
        auto r = O.residue(O.from_poly(parse_poly(O.base_fq(), "T+2")));
        // mod (T): the class of 2
        Fq fq(3);
        ResidueField rf = residue_field(fq, parse_place(fq, "T"));
        CHECK(rf.field.eq(r, rf.field.from_int(2)));
    }
    SUBCASE("degree-2 coefficient place") {
        Fq fq(3);
        ORing O2(fq, parse_place(fq, "T^2+1"), 3);
        auto a = O2.from_poly(parse_poly(fq, "T^2+1"));
        CHECK(*O2.valuation(a) == 1);
        CHECK(O2.is_unit(O2.from_poly(parse_poly(fq, "T"))));
    }
}

TEST_CASE("distinguished polynomial test") {
    ORing O = make_O();
    // series variable written by position: {c_0, c_1, ...}
    CHECK(is_distinguished(O, ser(O, {"T", "0", "1"}, 8)));        // T_ser^2 + pi
    CHECK(!is_distinguished(O, ser(O, {"1", "1"}, 8)));            // T_ser + 1
    CHECK(!is_distinguished(O, ser(O, {"0", "1", "T"}, 8)));       // pi T_ser^2 + T_ser
    CHECK_THROWS_AS(is_distinguished(O, ser(O, {"1"}, 8, false)), MathError);
}

TEST_CASE("weierstrass preparation worked examples") {
    ORing O = make_O();
    const unsigned D = 12;
    SUBCASE("pi^3: mu = 3, lambda = 0") {
        auto parts = weierstrass_prep(O, ser(O, {"T^3"}, D));
        CHECK(parts.mu == 3);
        CHECK(parts.lambda == 0);
        CHECK(series_poly_degree(O, parts.distinguished) == 0);
    }
    SUBCASE("T_ser^2 + pi is already distinguished") {
        auto parts = weierstrass_prep(O, ser(O, {"T", "0", "1"}, D));
        CHECK(parts.mu == 0);
        CHECK(parts.lambda == 2);
        ORing Oe(O.base_fq(), O.place(), parts.prec_pi_effective);
        CHECK(series_eq(Oe, parts.distinguished, ser(Oe, {"T", "0", "1"}, D)));
        CHECK(series_eq(Oe, parts.unit, series_one(Oe, D)));
    }
    SUBCASE("(1 + T_ser)(T_ser + pi): unit recovered exactly") {
        // f = pi + (1+pi) T_ser + T_ser^2
        auto parts = weierstrass_prep(O, ser(O, {"T", "T+1", "1"}, D));
        CHECK(parts.mu == 0);
        CHECK(parts.lambda == 1);
        ORing Oe(O.base_fq(), O.place(), parts.prec_pi_effective);
        CHECK(series_eq(Oe, parts.distinguished, ser(Oe, {"T", "1"}, D)));
        CHECK(series_eq(Oe, parts.unit, ser(Oe, {"1", "1"}, D)));
    }
    SUBCASE("vanishing to pi-precision is an error") {
        ORing O2 = make_O(2);
        CHECK_THROWS_AS(weierstrass_prep(O2, ser(O2, {"T^2", "T^3"}, 6, false)), PrecisionError);
    }
    SUBCASE("T power beyond the window is an error") {
        CHECK_THROWS_AS(series_T_pow(O, 8, 8), PrecisionError);
    }
}

TEST_CASE("weierstrass preparation reconstructs random products") {
    Fq fq(3);
    ORing O(fq, parse_place(fq, "T"), 16);
    const unsigned D = 24;
    Rng rng(derive_seed(kSeed, "wprep"));
    for (int trial = 0; trial < 30; ++trial) {
        unsigned mu = rng.below(4);
        unsigned lambda = rng.below(6);
        auto u = random_unit_series(O, D, rng);
        auto g = random_distinguished(O, lambda, D, rng);
        auto f = series_scale_pi(O, series_mul(O, u, g), mu);
        auto parts = weierstrass_prep(O, f);
        CHECK(parts.mu == mu);
        CHECK(parts.lambda == lambda);
        // reconstruction: pi^mu * u * g == f to the effective precision
        ORing Oe(fq, O.place(), parts.prec_pi_effective);
        auto rebuilt = series_scale_pi(Oe, series_mul(Oe, parts.unit, parts.distinguished), 0);
        IwasawaSeries fmod = f;
        for (auto& x : fmod.c) x = Oe.from_poly(O.div_pi(x, mu));
        CHECK(series_eq(Oe, rebuilt, fmod));
        // idempotence: preparing pi^mu * u * g again gives identical parts
        auto again = weierstrass_prep(O, f);
        CHECK(series_eq(Oe, again.distinguished, parts.distinguished));
        CHECK(series_eq(Oe, again.unit, parts.unit));
    }
}

TEST_CASE("mu/lambda additivity on random products") {
    Fq fq(3);
    ORing O(fq, parse_place(fq, "T"), 16);
    const unsigned D = 24;
    Rng rng(derive_seed(kSeed, "mult"));
    for (int trial = 0; trial < 25; ++trial) {
        auto f = series_scale_pi(O, series_mul(O, random_unit_series(O, D, rng),
                                               random_distinguished(O, rng.below(4), D, rng)),
                                 rng.below(3));
        auto g = series_scale_pi(O, series_mul(O, random_unit_series(O, D, rng),
                                               random_distinguished(O, rng.below(4), D, rng)),
                                 rng.below(3));
        auto mf = mu_lambda(O, f), mg = mu_lambda(O, g);
        auto mfg = mu_lambda(O, series_mul(O, f, g));
        CHECK(mfg.first == mf.first + mg.first);
        CHECK(mfg.second == mf.second + mg.second);
    }
}

TEST_CASE("characteristic elements of elementary modules") {
    ORing O = make_O();
    const unsigned D = 12;
    SUBCASE("Lambda/(pi^2) + Lambda/(T^3 + pi T + pi): mu 2, lambda 3") {
        auto g = ser(O, {"T", "T", "0", "1"}, D);
        auto M = make_elementary(O, 0, {2}, {g});
        auto ml = mu_lambda(O, M);
        CHECK(ml.first == 2);
        CHECK(ml.second == 3);
        auto f = char_element(O, M, D);
        auto viaprep = mu_lambda(O, f);
        CHECK(viaprep.first == 2);
        CHECK(viaprep.second == 3);
    }
    SUBCASE("zero module") {
        auto M = make_elementary(O, 0, {}, {});
        auto ml = mu_lambda(O, M);
        CHECK(ml.first == 0);
        CHECK(ml.second == 0);
        CHECK(series_eq(O, char_element(O, M, D), series_one(O, D)));
    }
    SUBCASE("pi (T^2 + pi T + pi)(T + pi): mu 1, lambda 3 by multiplication") {
        auto f = series_scale_pi(
            O, series_mul(O, ser(O, {"T", "T", "1"}, D), ser(O, {"T", "1"}, D)), 1);
        auto ml = mu_lambda(O, f);
        CHECK(ml.first == 1);
        CHECK(ml.second == 3);
    }
    SUBCASE("free modules have no characteristic element") {
        auto M = make_elementary(O, 1, {}, {});
        CHECK_THROWS_WITH_AS(char_element(O, M, D), "module not torsion", MathError);
        CHECK_THROWS_AS(mu_lambda(O, M), MathError);
    }
    SUBCASE("non-distinguished cyclic parts are rejected") {
        CHECK_THROWS_AS(make_elementary(O, 0, {}, {ser(O, {"1", "1"}, D)}), MathError);
    }
}

TEST_CASE("finiteness predicates on elementary modules") {
    ORing O = make_O();
    const unsigned D = 12;
    SUBCASE("N = Lambda/(T + pi): finite residual, lambda matches") {
        auto M = make_elementary(O, 0, {}, {ser(O, {"T", "1"}, D)});
        auto rep = finiteness_predicates(O, M);
        CHECK(rep.cofg_cotorsion_mu0);
        REQUIRE(rep.dim_residual.has_value());
        CHECK(*rep.dim_residual == 1);
        CHECK(rep.lambda_bound_check);
    }
    SUBCASE("N = Lambda/(pi): mu > 0 fails the predicate") {
        auto M = make_elementary(O, 0, {1}, {});
        auto rep = finiteness_predicates(O, M);
        CHECK(!rep.cofg_cotorsion_mu0);
        CHECK(!rep.dim_residual.has_value());
        CHECK(!rep.lambda_bound_check);
    }
    SUBCASE("N = Lambda: not torsion") {
        auto M = make_elementary(O, 1, {}, {});
        CHECK(!finiteness_predicates(O, M).cofg_cotorsion_mu0);
    }
    SUBCASE("random mu = 0 elementary modules: dim N/piN equals lambda") {
        Rng rng(derive_seed(kSeed, "fin"));
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<IwasawaSeries> parts;
            unsigned nparts = 1 + rng.below(3);
            for (unsigned i = 0; i < nparts; ++i)
                parts.push_back(random_distinguished(O, rng.below(4), D, rng));
            auto M = make_elementary(O, 0, {}, parts);
            auto rep = finiteness_predicates(O, M);
            REQUIRE(rep.dim_residual.has_value());
            CHECK(*rep.dim_residual == mu_lambda(O, M).second);
            CHECK(rep.lambda_bound_check);
        }
    }
}
