#include "doctest.h"
#include "ztower/oracle.hpp"
#include "ztower/witt.hpp"

using namespace ztower;
using namespace ztower::wpoly;

namespace {
WittVector W(int p, const char* text, long long prec = 48) {
    return parse_witt(p, text, prec);
}
}  // namespace

TEST_CASE("universal polynomials match the closed forms at length 2") {
    UniversalPolys up = gen_universal_polys(3, 2);
    // S_1 = X1 + Y1 - X0^2 Y0 - X0 Y0^2.
    const auto& s1 = up.sum_polys[1];
    CHECK(s1.at(make_var(x_slot(1))) == 1);
    CHECK(s1.at(make_var(y_slot(1))) == 1);
    CHECK(s1.at(mul_keys(make_var(x_slot(0), 2), make_var(y_slot(0)))) == -1);
    CHECK(s1.at(mul_keys(make_var(x_slot(0)), make_var(y_slot(0), 2))) == -1);
    CHECK(s1.size() == 4);
    // P_1 = X0^3 Y1 + X1 Y0^3 + 3 X1 Y1.
    const auto& p1 = up.prod_polys[1];
    CHECK(p1.at(mul_keys(make_var(x_slot(0), 3), make_var(y_slot(1)))) == 1);
    CHECK(p1.at(mul_keys(make_var(x_slot(1)), make_var(y_slot(0), 3))) == 1);
    CHECK(p1.at(mul_keys(make_var(x_slot(1)), make_var(y_slot(1)))) == 3);
    CHECK(p1.size() == 3);
}

TEST_CASE("ghost compatibility of generated polynomials") {
    CHECK(check_ghost_identity(gen_universal_polys(2, 3)));
    CHECK(check_ghost_identity(gen_universal_polys(3, 3)));
    CHECK(check_ghost_identity(gen_universal_polys(5, 2)));
    CHECK(check_ghost_identity(gen_universal_polys(7, 2)));
    CHECK_THROWS_AS(gen_universal_polys(3, 6), LengthCapExceeded);
}

TEST_CASE("basic ring operations") {
    CHECK(witt_add(W(3, "(1; 0)"), W(3, "(1; 0)")).equal(W(3, "(2; 1)")));
    CHECK(witt_mul(W(3, "(1; T)"), W(3, "(1; 2T)")).equal(W(3, "(1; 0)")));
    CHECK(witt_inv(W(3, "(1; T)")).equal(W(3, "(1; 2T)")));
    CHECK(witt_neg(witt_neg(W(3, "(T; 1; T^-1)"))).equal(W(3, "(T; 1; T^-1)")));
    CHECK(witt_sub(W(3, "(T; 1)"), W(3, "(T; 1)")).equal(witt_zero(3, 2)));
    CHECK_THROWS_AS(witt_inv(W(3, "(0; 1)")), NotAUnit);

    WittVector x = W(3, "(T; 1 + T^-1; 2)");
    CHECK(witt_mul(x, witt_inv(x)).equal(witt_one(3, 3)));
    CHECK(witt_pow(x, 4).equal(witt_mul(witt_mul(x, x), witt_mul(x, x))));
    CHECK(witt_pow(x, -1).equal(witt_inv(x)));
}

TEST_CASE("ring axioms on fixed vectors") {
    WittVector a = W(3, "(T; 2; 0)"), b = W(3, "(1; T^-1; T)"), c = W(3, "(2T; 0; 1)");
    CHECK(witt_add(a, b).equal(witt_add(b, a)));
    CHECK(witt_mul(a, b).equal(witt_mul(b, a)));
    CHECK(witt_add(witt_add(a, b), c).equal(witt_add(a, witt_add(b, c))));
    CHECK(witt_mul(witt_mul(a, b), c).equal(witt_mul(a, witt_mul(b, c))));
    CHECK(witt_mul(a, witt_add(b, c)).equal(witt_add(witt_mul(a, b), witt_mul(a, c))));
}

TEST_CASE("frobenius, verschiebung and multiplication by p") {
    WittVector x = W(3, "(T; 1; 2)");
    WittVector px = witt_add(witt_add(x, x), x);
    CHECK(px.equal(verschiebung(frobenius_witt(x))));
    CHECK(frobenius_witt(verschiebung(x)).equal(px));
}

TEST_CASE("q-map behavior") {
    // q([T]) = [T^(p-1)].
    WittVector t = teichmuller(LaurentSeries::monomial(3, 1, 1), 2);
    WittVector qt = q_map(t);
    CHECK(qt.comp[0].equal(LaurentSeries::monomial(3, 1, 2)));
    CHECK(qt.comp[1].is_zero());
    // q(1 + V[f]) = 1 + V[f^p - f] at length 2.
    LaurentSeries f = parse_series(3, "T^-1 + T", 24);
    WittVector u = one_plus_v(1, f, 2);
    WittVector qu = q_map(u);
    CHECK(qu.comp[0].is_one());
    CHECK(qu.comp[1].equal(series_sub(frobenius(f), f)));
    // Multiplicative, and trivial on constant vectors.
    WittVector a = W(3, "(T; 2)"), b = W(3, "(1 + T; T^-1)");
    CHECK(q_map(witt_mul(a, b)).equal(witt_mul(q_map(a), q_map(b))));
    CHECK(q_map(W(3, "(2; 1)")).equal(witt_one(3, 2)));
}

TEST_CASE("integer-lift cross-check of the tables") {
    // (1,0) + (1,0) lifts to (2,-2) over Z, whose ghost vector is (2,2).
    auto z = oracle::witt_add_z(3, {1, 0}, {1, 0});
    CHECK(z[0] == 2);
    CHECK(z[1] == -2);
    auto g = oracle::ghost_vector(3, z);
    CHECK(g[0] == 2);
    CHECK(g[1] == 2);
}
