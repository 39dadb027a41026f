#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ztower/errors.hpp"

// Universal sum/product polynomials for p-typical Witt vectors, generated by
// solving the triangular ghost system w^(n)(a) = sum_{i<=n} p^i a_i^(p^(n-i))
// with exact division by p^n.
//
// Monomials in the 2l variables X_0..X_{l-1}, Y_0..Y_{l-1} are packed into a
// 128-bit key: 12 bits per exponent, X_i in slot i, Y_i in slot 5+i (l <= 5).

namespace ztower {

using BigInt = boost::multiprecision::cpp_int;

namespace wpoly {

using Key = unsigned __int128;

constexpr int kMaxLen = 5;
constexpr int kSlotBits = 12;
constexpr unsigned kExpMax = (1u << kSlotBits) - 1;

inline unsigned get_exp(Key k, int slot) {
    return static_cast<unsigned>((k >> (slot * kSlotBits)) & kExpMax);
}
inline Key make_var(int slot, unsigned e = 1) {
    return static_cast<Key>(e) << (slot * kSlotBits);
}
inline int x_slot(int i) { return i; }
inline int y_slot(int i) { return kMaxLen + i; }

// Multiplying monomials adds exponents; guard against slot overflow.
inline Key mul_keys(Key a, Key b) {
    Key r = a + b;
    for (int s = 0; s < 2 * kMaxLen; ++s)
        if (get_exp(r, s) < get_exp(a, s)) throw LengthCapExceeded("monomial exponent overflow");
    return r;
}

struct KeyHash {
    size_t operator()(Key k) const {
        uint64_t lo = static_cast<uint64_t>(k);
        uint64_t hi = static_cast<uint64_t>(k >> 64);
        uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x9e3779b97f4a7c15ULL + (lo << 6));
        return static_cast<size_t>(h ^ (h >> 29));
    }
};

template <class C>
using PolyMap = std::unordered_map<Key, C, KeyHash>;

// A universal polynomial reduced mod p, frozen for evaluation.
struct CharPoly {
    std::vector<std::pair<Key, int>> terms;  // coeff in [1, p)
};

}  // namespace wpoly

// Exact integer universal addition/multiplication polynomials.
struct UniversalPolys {
    int p = 0;
    int length = 0;
    std::vector<std::map<wpoly::Key, BigInt>> sum_polys;   // S_0..S_{l-1}
    std::vector<std::map<wpoly::Key, BigInt>> prod_polys;  // P_0..P_{l-1}
};

// Generate exact polynomials; throws LengthCapExceeded when l > 5 or the
// intermediate term count exceeds the generation budget, InexactDivision on a
// failed exact division (an implementation bug).
UniversalPolys gen_universal_polys(int p, int length);

// Symbolic ghost-compatibility check: w^(n)(S(X,Y)) == w^(n)(X) + w^(n)(Y)
// and w^(n)(P(X,Y)) == w^(n)(X) * w^(n)(Y) as integer-polynomial identities.
bool check_ghost_identity(const UniversalPolys& up);

// Char-p tables for runtime Witt arithmetic (generated mod p^l, reduced mod
// p; cheaper than the exact path and valid for the final mod-p coefficients).
struct WittTables {
    int p = 0;
    int length = 0;
    std::vector<wpoly::CharPoly> sum_polys;
    std::vector<wpoly::CharPoly> prod_polys;
};

// Cached accessor (thread-safe lazy initialization per (p, length)).
const WittTables& witt_tables(int p, int length);

}  // namespace ztower
