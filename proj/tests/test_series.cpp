#include "doctest.h"
#include "ztower/laurent.hpp"

using namespace ztower;

namespace {
LaurentSeries S(int p, const char* text, long long prec = LaurentSeries::kPrecCap) {
    return parse_series(p, text, prec);
}
}  // namespace

TEST_CASE("parsing and printing") {
    CHECK(S(3, "2*T^-1 + 1 + T^3").coeff(-1) == 2);
    CHECK(S(3, "2*T^-1 + 1 + T^3").coeff(0) == 1);
    CHECK(S(3, "2T - T").equal(S(3, "T")));
    CHECK(S(3, "0").is_zero());
    CHECK(S(5, "7").coeff(0) == 2);
    CHECK_THROWS_AS(parse_series(3, "T^", 10), ParseError);
    CHECK(S(3, "1 - T").coeff(1) == 2);
}

TEST_CASE("ring arithmetic") {
    LaurentSeries a = S(3, "1 + T");
    LaurentSeries b = S(3, "1 - T");
    CHECK(series_mul(a, b).equal(S(3, "1 + 2*T^2")));
    CHECK(series_add(a, b).equal(S(3, "2")));
    CHECK(series_sub(a, a).is_zero());
    CHECK(S(3, "T^-2").valuation() == -2);

    LaurentSeries inv = series_inv(b.with_precision(6));
    // 1/(1-T) = 1 + T + T^2 + ...
    for (int e = 0; e < 6; ++e) CHECK(inv.coeff(e) == 1);
    CHECK(series_mul(b, inv).equal(LaurentSeries::one(3)));
    CHECK_THROWS_AS(series_inv(LaurentSeries::zero(3)), InversionOfZero);

    CHECK(series_pow(a, 3).equal(S(3, "1 + T^3")));
    CHECK(series_pow(S(3, "T"), -2).equal(S(3, "T^-2")));
}

TEST_CASE("frobenius scales exponents and precision") {
    LaurentSeries f = S(3, "T^-1 + 2*T^2", 10);
    LaurentSeries g = frobenius(f);
    CHECK(g.coeff(-3) == 1);
    CHECK(g.coeff(6) == 2);
    CHECK(g.precision() == 30);
}

TEST_CASE("artin-schreier polar reduction") {
    // T^-9 + T^-3 = P(T^-3 + 2 T^-1) + 2 T^-1 over F_3.
    auto [red, wit] = artin_schreier_reduce(S(3, "T^-9 + T^-3"));
    CHECK(red.equal(S(3, "2*T^-1")));
    LaurentSeries back = series_add(series_sub(frobenius(wit), wit), red);
    CHECK(back.equal(S(3, "T^-9 + T^-3")));
}

TEST_CASE("artin-schreier solving") {
    // y^3 - y = T has the T-adically convergent solution -(T + T^3 + T^9 + ...).
    auto y = solve_artin_schreier(S(3, "T"), 30);
    REQUIRE(y.has_value());
    CHECK(y->coeff(0) == 0);
    CHECK(y->coeff(1) == 2);
    CHECK(y->coeff(3) == 2);
    CHECK(y->coeff(9) == 2);
    CHECK(series_sub(frobenius(*y), *y).equal(S(3, "T", 30)));

    CHECK_FALSE(solve_artin_schreier(S(3, "T^-1"), 30).has_value());
    CHECK_FALSE(solve_artin_schreier(S(3, "1"), 30).has_value());
    CHECK_FALSE(solve_artin_schreier(S(3, "T^-3"), 30).has_value());
    // But P(T^-1) itself is solvable.
    CHECK(solve_artin_schreier(S(3, "T^-3 + 2*T^-1"), 30).has_value());
}

TEST_CASE("coprime roots") {
    auto r = nth_root(S(3, "1 + 2*T + T^2"), 2);
    REQUIRE(r.has_value());
    CHECK(series_mul(*r, *r).equal(S(3, "1 + 2*T + T^2")));
    CHECK_FALSE(nth_root(S(3, "T^3"), 2).has_value());
    CHECK_FALSE(nth_root(S(5, "2"), 4).has_value());  // 2 generates F_5^x
    auto t = nth_root(S(3, "T^4"), 2);
    REQUIRE(t.has_value());
    CHECK(series_mul(*t, *t).equal(S(3, "T^4")));
}

TEST_CASE("unit factorization") {
    // 2T * (1 - T) * (1 - T^2)^3 = 2T (1 - T)(1 - T^6) over F_3.
    LaurentSeries f =
        series_mul(series_mul(S(3, "2T", 32), S(3, "1 - T")), S(3, "1 - T^6"));
    UnitFactors uf = unit_decompose(f);
    CHECK(uf.c == 2);
    CHECK(uf.d == 1);
    REQUIRE(uf.factors.size() == 2);
    CHECK(uf.factors[0] == std::tuple<long long, int, int>{1, 0, 1});
    CHECK(uf.factors[1] == std::tuple<long long, int, int>{2, 1, 1});
}
