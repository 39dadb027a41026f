#include "doctest.h"
#include "ztower/oracle.hpp"

using namespace ztower;
using namespace ztower::oracle;

TEST_CASE("ghost map and integral lifts") {
    CHECK(ghost_vector(3, {1, 0}) == std::vector<BigInt>{1, 1});
    CHECK(ghost_vector(3, {2, -2}) == std::vector<BigInt>{2, 2});
    auto z = witt_mul_z(5, {2, 3, -1}, {1, 4, 2});
    CHECK(ghost_vector(5, z)[2] ==
          ghost_vector(5, {2, 3, -1})[2] * ghost_vector(5, {1, 4, 2})[2]);
    CHECK(from_ghost(3, ghost_vector(3, {7, -4, 11})) == IntegerWittVector{7, -4, 11});
    CHECK_THROWS_AS(from_ghost(3, {0, 1}), InexactDivision);
}

TEST_CASE("seeded ghost-ring trials") {
    CHECK(verify_universal_polys(2, 4, 50, 11));
    CHECK(verify_universal_polys(3, 3, 50, 12));
    CHECK(verify_universal_polys(5, 2, 50, 13));
    CHECK(verify_universal_polys(7, 2, 25, 14));
}

TEST_CASE("artin-schreier conductor from the ramification filtration") {
    CHECK(as_conductor_oracle(3, -1) == 4);
    CHECK(as_conductor_oracle(3, -2) == 6);
    CHECK(as_conductor_oracle(5, -1) == 8);
    CHECK(as_conductor_oracle(7, -5) == 36);
    CHECK_THROWS_AS(as_conductor_oracle(3, -3), BadIndex);
    CHECK_THROWS_AS(as_conductor_oracle(3, 1), BadIndex);
}

TEST_CASE("tame monomial covers have genus zero") {
    CHECK(kummer_genus_oracle(3, 1, 1) == 0);
    CHECK(kummer_genus_oracle(5, 1, 1) == 0);
    CHECK(kummer_genus_oracle(5, 1, 0) == 0);
    CHECK(kummer_genus_oracle(7, 3, 2) == 0);
}

TEST_CASE("level-1 genus of the unit-root tower") {
    CHECK(as_kummer_genus_oracle(3, 1, 1, -1) == 1);
}

TEST_CASE("newton-polygon recurrence valuations") {
    CHECK(recurrence_valuation_oracle(3, -1, 1) == -1);
    CHECK(recurrence_valuation_oracle(3, -1, 2) == -7);
    CHECK(recurrence_valuation_oracle(5, -2, 2) == -42);
    CHECK_THROWS_AS(recurrence_valuation_oracle(3, -1, 4), DepthCapExceeded);
    for (int p : {3, 5})
        for (long long i : {-1LL, -2LL})
            for (int n = 1; n <= 3; ++n)
                CHECK(recurrence_valuation_oracle(p, i, n) == y_valuation(p, i, n, 0));
}

TEST_CASE("brute-force class equality") {
    const long long N = 40;
    WittVector u1 = one_plus_v(1, LaurentSeries::monomial(3, 1, -1, N), 2);
    WittVector u3 = one_plus_v(1, LaurentSeries::monomial(3, 1, -3, N), 2);
    CHECK(brute_force_class_equal(u1, u1, N));
    CHECK(brute_force_class_equal(u3, u1, N));
    CHECK_FALSE(brute_force_class_equal(u1, witt_one(3, 2, N), N));

    // Equivalence relation on a small seeded sample.
    std::mt19937_64 rng(99);
    std::vector<WittVector> sample;
    for (int s = 0; s < 5; ++s) sample.push_back(random_unit(3, 2, N, rng));
    for (const auto& x : sample) CHECK(brute_force_class_equal(x, x, N));
    for (const auto& x : sample)
        for (const auto& y : sample) {
            bool xy = brute_force_class_equal(x, y, N);
            CHECK(xy == brute_force_class_equal(y, x, N));
            if (!xy) continue;
            for (const auto& z : sample)
                if (brute_force_class_equal(y, z, N))
                    CHECK(brute_force_class_equal(x, z, N));
        }
}

TEST_CASE("divergence reports are JSON lines") {
    Divergence d{"example claim", "1", "2"};
    CHECK(divergence_json(d) == "{\"claim\":\"example claim\",\"expected\":\"1\",\"got\":\"2\"}");
}
