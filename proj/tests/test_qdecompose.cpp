#include "doctest.h"
#include "ztower/oracle.hpp"
#include "ztower/qdecompose.hpp"

using namespace ztower;

namespace {
const long long N = 48;

WittVector W(int p, const char* text) { return parse_witt(p, text, N); }

WittVector u_unit(int p, long long i, int len = 2) {
    return one_plus_v(1, LaurentSeries::monomial(p, 1, i, N), len);
}
}  // namespace

TEST_CASE("q_solve on one-units") {
    auto y = q_solve(u_unit(3, 1), N);
    REQUIRE(y.has_value());
    CHECK(y->comp[0].is_one());
    CHECK(series_sub(frobenius(y->comp[1]), y->comp[1]).equal(
        LaurentSeries::monomial(3, 1, 1, N)));
    CHECK_FALSE(q_solve(u_unit(3, 0), N).has_value());
    CHECK_FALSE(q_solve(u_unit(3, -1), N).has_value());
    CHECK(q_solve_obstruction_level(u_unit(3, -1), N) == 1);
    CHECK(q_solve_obstruction_level(u_unit(3, 2), N) == -1);
    CHECK_THROWS_AS(q_solve(witt_zero(3, 2, N), N), NotAUnit);
}

TEST_CASE("q_solve matches the level-1 equation at length 2") {
    for (long long i : {-4, -2, 2, 3, 6}) {
        bool some = q_solve(u_unit(3, i), N).has_value();
        bool as = solve_artin_schreier(LaurentSeries::monomial(3, 1, i, N), N).has_value();
        CHECK(some == as);
    }
}

TEST_CASE("exact factorization") {
    ExactFactorization f1 = decompose_exact(teichmuller(parse_series(3, "T", N), 2), N);
    CHECK(f1.c == 1);
    CHECK(f1.d == 1);
    CHECK(f1.teich1units.empty());
    CHECK(f1.deep_units.empty());

    ExactFactorization f2 = decompose_exact(W(3, "(1; T^-1 + T)"), N);
    REQUIRE(f2.deep_units.size() == 2);
    CHECK(f2.deep_units[0] == std::tuple<long long, int, int>{-1, 2, 1});
    CHECK(f2.deep_units[1] == std::tuple<long long, int, int>{1, 2, 1});

    ExactFactorization f3 = decompose_exact(W(3, "(2T; T)"), N);
    CHECK(f3.c == 2);
    CHECK(f3.d == 1);
    // Correction series T/(2T)^3 = 2 T^-2.
    REQUIRE(f3.deep_units.size() == 1);
    CHECK(f3.deep_units[0] == std::tuple<long long, int, int>{-2, 2, 2});

    for (const char* text : {"(2T; T)", "(1; T^-1 + T)", "(T^-1; 2 + T^2; 1)"}) {
        int len = std::string(text).find(';', std::string(text).find(';') + 1) ==
                          std::string::npos
                      ? 2
                      : 3;
        WittVector x = W(3, text);
        CHECK(expand_factorization(decompose_exact(x, N), len, N).equal(x));
    }
}

TEST_CASE("canonical words") {
    GeneratorWord w1 = reduce_mod_q(u_unit(3, -3));
    CHECK_FALSE(w1.has_teich);
    REQUIRE(w1.u.count(-1) == 1);
    CHECK(w1.u.at(-1).value == 1);
    CHECK(w1.v.empty());

    GeneratorWord w2 = reduce_mod_q(teichmuller(parse_series(3, "2*T^4", N), 2));
    CHECK(w2.has_teich);
    CHECK(w2.c == 2);
    CHECK(w2.d == 2);
    CHECK(w2.u.empty());

    CHECK(reduce_mod_q(u_unit(3, 2)).u.empty());
    CHECK_FALSE(reduce_mod_q(u_unit(3, 2)).has_teich);

    GeneratorWord w3 = reduce_mod_q(W(3, "(T; 0)"));
    CHECK(w3.has_teich);
    CHECK(w3.c == 1);
    CHECK(w3.d == 1);
}

TEST_CASE("canonical words for p = 2") {
    WittVector x = W(2, "(1; T^-1; T^-1)");
    GeneratorWord w = reduce_mod_q(x);
    CHECK(w.p == 2);
    CHECK_FALSE(w.has_teich);
    CHECK(reduce_mod_q(reconstruct(w, 3, N)).equal(w));
}

TEST_CASE("round trip on seeded random units") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 10; ++t) {
        WittVector x = oracle::random_unit(3, 3, N, rng);
        GeneratorWord w = reduce_mod_q(x);
        WittVector back = reconstruct(w, 3, N);
        CHECK(oracle::brute_force_class_equal(x, back, N));
        CHECK(reduce_mod_q(back).equal(w));
    }
}

TEST_CASE("class orders") {
    auto [s1, m1] = class_order(W(3, "(T; 0; 0)"));
    CHECK(s1 == 0);
    CHECK(m1);
    auto [s2, m2] = class_order(W(3, "(1; T; 0)"));
    CHECK(s2 == 2);
    CHECK_FALSE(m2);
    auto [s3, m3] = class_order(W(5, "(T^2; 0)"));
    CHECK(s3 == 0);
    CHECK_FALSE(m3);
}

TEST_CASE("galois predicates") {
    CHECK(galois_group_check(W(3, "(T; T^-1; 0)")));
    CHECK_FALSE(galois_group_check(W(3, "(T; 0; T^-1)")));
    CHECK_FALSE(galois_group_check(W(3, "(T^2; T^-1)")));
    CHECK_THROWS_AS(galois_group_check(W(2, "(1; T; T)")), WrongPrime);

    CHECK(galois_group_check_p2(W(2, "(1; T; T; 0)"), W(2, "(1; 0; T; 0)")));
    CHECK(galois_group_check_p2(W(2, "(1; 0; T; 0)"), W(2, "(1; T; T; 0)")));
    CHECK_FALSE(galois_group_check_p2(W(2, "(1; 0; T; 0)"), W(2, "(1; 0; T^2; 0)")));
    CHECK_FALSE(galois_group_check_p2(W(2, "(1; T; 0; 0)"), W(2, "(1; 0; T; 0)")));
    CHECK_THROWS_AS(galois_group_check_p2(W(3, "(1; 0; 0)"), W(3, "(1; 0; 0)")), WrongPrime);
}
