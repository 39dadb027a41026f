#include "doctest.h"
#include "ztower/ramgen.hpp"

using namespace ztower;

namespace {
PadicExponent K(int p, int mod_exp, long long value) { return PadicExponent{p, mod_exp, value}; }

GeneratorWord word64() {  // unit-root tower: [T] u_{-1} at p = 3
    GeneratorWord w;
    w.p = 3;
    w.has_teich = true;
    w.c = 1;
    w.d = 1;
    w.u[-1] = K(3, 8, 1);
    return w;
}

GeneratorWord word65(long long d) {  // degenerate tower: u_{-d} only
    GeneratorWord w;
    w.p = 3;
    w.u[-d] = K(3, 8, 1);
    return w;
}

Rational rp(int p, int e) {
    Rational r = 1;
    for (int k = 0; k < e; ++k) r *= p;
    return r;
}
}  // namespace

TEST_CASE("level-0 ramification of the tame layer") {
    CHECK(kummer_ramification(3, 1, 1) == std::pair<int, int>{2, 1});
    CHECK(kummer_ramification(5, 1, 2) == std::pair<int, int>{2, 1});
    CHECK(kummer_ramification(3, 1, 2) == std::pair<int, int>{1, 1});
    CHECK(kummer_ramification(5, 2, 4) == std::pair<int, int>{1, 4});
    CHECK_THROWS_AS(kummer_ramification(3, 1, 0), DegenerateInput);
}

TEST_CASE("tame different") {
    CHECK(kummer_different(3, 1, -1) == 1);
    CHECK(kummer_different(5, 2, -1) == 3);
    CHECK(kummer_different(5, 1, -4) == 0);
}

TEST_CASE("solution valuations") {
    CHECK(y_valuation(3, -1, 1, 0) == -1);
    CHECK(y_valuation(3, -1, 2, 0) == -7);
    CHECK(y_valuation(5, -2, 2, 1) == -2);  // n = nu + 1: empty sum
    CHECK_THROWS_AS(y_valuation(3, -3, 1, 0), BadIndex);
}

TEST_CASE("different of a single wild index") {
    CHECK(different_single_u(3, -1, K(3, 3, 1), 1) == 4);
    CHECK(different_single_u(3, -1, K(3, 3, 1), 2) == 28);
    CHECK(different_single_u(3, -1, K(3, 3, 3), 1) == 0);  // exponent dead at level 1
    CHECK_THROWS_AS(different_single_u(3, -3, K(3, 3, 1), 1), BadIndex);
}

TEST_CASE("combined different") {
    CHECK(different_combined(word64(), 1) == 7);
    CHECK(different_combined(word65(1), 1) == 4);
    GeneratorWord two = word65(1);
    two.u[-2] = K(3, 8, 1);
    // max dominance: the i = -2 term wins.
    CHECK(different_combined(two, 1) ==
          Rational(3) + Rational(2, 4) * 9 + Rational(-2, 4) - 1);
    // no wild part: fall back to the tame different.
    GeneratorWord tame;
    tame.p = 3;
    tame.has_teich = true;
    tame.c = 1;
    tame.d = 1;
    CHECK(different_combined(tame, 2) == 1);
    CHECK(different_combined(word65(1), 0) == 0);
}

TEST_CASE("unit-root tower genus sequence") {
    PlaceSpec place{true, 0, word64()};
    GenusReport rep = genus_sequence({place}, 6, GenusMode::Both);
    REQUIRE(rep.paper_literal.size() == 7);
    for (int n = 0; n <= 6; ++n) {
        Rational expect = Rational(1, 4) * rp(3, 2 * n) - 2 * rp(3, n) - Rational(5, 4);
        CHECK(rep.paper_literal[n].two_g_minus_2 == expect);
        CHECK(rep.paper_literal[n].integrality_flag);  // always an odd integer here
    }
    CHECK(rep.full_rh[0].genus == 0);
    CHECK(rep.full_rh[1].genus == 1);
    CHECK_FALSE(rep.full_rh[0].integrality_flag);
    CHECK_FALSE(rep.full_rh[1].integrality_flag);
}

TEST_CASE("degenerate tower genus sequence") {
    for (long long d : {1LL, 2LL}) {
        GenusReport rep =
            genus_sequence({PlaceSpec{true, 0, word65(d)}}, 5, GenusMode::PaperLiteral);
        for (int n = 1; n <= 5; ++n) {
            Rational expect =
                Rational(d, 4) * rp(3, 2 * n) - rp(3, n) - Rational(d, 4) - 1;
            CHECK(rep.paper_literal[n].two_g_minus_2 == expect);
        }
    }
}

TEST_CASE("p = 2 genus is out of scope") {
    GeneratorWord w;
    w.p = 2;
    w.u[-1] = K(2, 4, 1);
    CHECK_THROWS_AS(genus_sequence({PlaceSpec{true, 0, w}}, 2, GenusMode::Both),
                    UnsupportedPrime);
}

TEST_CASE("stability detection") {
    GenusReport rep =
        genus_sequence({PlaceSpec{true, 0, word64()}}, 6, GenusMode::PaperLiteral);
    GeneratorWord w = word64();
    auto res = stability_check(rep, 2, &w);
    REQUIRE(res.has_value());
    CHECK(res->a == Rational(1, 8));
    CHECK(res->b == -1);
    CHECK(res->c == Rational(3, 8));
    REQUIRE(res->has_smt);
    CHECK(res->s == 2);
    CHECK(res->m == 0);
    CHECK(res->t == 0);
    CHECK(res->smt_consistent);

    // Drifting exponents: the dominant pole index switches between levels, so
    // no quadratic fits the whole sequence from level 1 on.
    GeneratorWord drift;
    drift.p = 3;
    drift.u[-1] = K(3, 8, 1);
    drift.u[-10] = K(3, 8, 3);
    GenusReport drep =
        genus_sequence({PlaceSpec{true, 0, drift}}, 6, GenusMode::PaperLiteral);
    CHECK_FALSE(stability_check(drep, 1, &drift).has_value());

    // Constant genus sequence: trivial quadratic.
    std::vector<Rational> constant(5, Rational(4));
    auto cres = stability_check(constant, 3, 0, nullptr);
    REQUIRE(cres.has_value());
    CHECK(cres->a == 0);
    CHECK(cres->b == 0);
    CHECK(cres->c == 4);

    CHECK_THROWS_AS(stability_check(std::vector<Rational>{1, 2, 3}, 3, 0, nullptr),
                    InsufficientData);
}
