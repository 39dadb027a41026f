#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ztower/qdecompose.hpp"
#include "ztower/ramgen.hpp"

// Independent brute-force checks for the formulas the main modules implement.
// Everything here recomputes its answer from first principles (ghost map,
// higher-ramification filtrations, Newton polygons, Riemann-Hurwitz) without
// reusing the code paths under test.

namespace ztower::oracle {

// Witt vector with arbitrary-precision integer components (characteristic 0).
using IntegerWittVector = std::vector<BigInt>;

// Ghost components w^(n) = sum_{i<=n} p^i a_i^(p^(n-i)), exactly.
std::vector<BigInt> ghost_vector(int p, const IntegerWittVector& a);

// Invert the ghost map over Z by the triangular solve with exact division by
// p^n (InexactDivision signals a non-integral preimage).
IntegerWittVector from_ghost(int p, const std::vector<BigInt>& w);

// Integer-level sum/product: the unique integral vectors whose ghost
// components are the pointwise sum/product.
IntegerWittVector witt_add_z(int p, const IntegerWittVector& x,
                             const IntegerWittVector& y);
IntegerWittVector witt_mul_z(int p, const IntegerWittVector& x,
                             const IntegerWittVector& y);

// Seeded random trials: integral sum/product vectors exist (exact divisions),
// their ghosts are the pointwise sum/product, and their mod-p images agree
// with the runtime arithmetic tables componentwise.
bool verify_universal_polys(int p, int length, int trials, std::uint64_t seed);

// x and y generate the same class iff x/y has a q-preimage.
bool brute_force_class_equal(const WittVector& x, const WittVector& y, long long N);

// Different exponent of y^p - y = T^i (i < 0 coprime to p) over F_p((T)),
// computed from the higher-ramification filtration: sum over sigma != id of
// v_L(sigma(pi) - pi) for a uniformizer pi = y^a T^b built from Bezout data.
long long as_conductor_oracle(int p, long long i);

// Genus of the monomial Kummer cover y^(p-1) = c x^d of the projective line,
// via Riemann-Hurwitz with tame ramification at the zero/pole of x^d.
long long kummer_genus_oracle(int p, int c, long long d);

// Genus of the level-1 layer of the tower [c T^d] u_i at infinity: tame
// Kummer base cover plus one wild layer whose different comes from
// as_conductor_oracle with the pole order scaled by the tame ramification
// index. Requires a residue-trivial Kummer part (f = 1).
Rational as_kummer_genus_oracle(int p, int c, long long d, long long i);

// v(y_n) in the level-n layer of the u_i tower, computed by Newton-polygon
// bookkeeping on the layer-by-layer recurrence (depth capped at 3).
long long recurrence_valuation_oracle(int p, long long i, int n);

// Seeded random unit of W_l(K) with a sparse mix of polar and regular terms
// (plumbing for the property suites).
WittVector random_unit(int p, int length, long long precision, std::mt19937_64& rng);

// A recorded disagreement between a formula and its oracle; serialized as a
// JSON line {"claim":...,"expected":...,"got":...}.
struct Divergence {
    std::string claim;
    std::string expected;
    std::string got;
};
std::string divergence_json(const Divergence& d);

}  // namespace ztower::oracle
