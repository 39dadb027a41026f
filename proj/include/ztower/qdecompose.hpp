#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "ztower/witt.hpp"

namespace ztower {

// A p-adic exponent known mod p^mod_exp.
struct PadicExponent {
    int p = 0;
    int mod_exp = 0;
    long long value = 0;  // in [0, p^mod_exp)

    long long modulus() const;
    // v_p(value); nullopt when value == 0 (v_p >= mod_exp).
    std::optional<int> vp() const;
};

// Canonical mod-q representative [c T^d] * prod u_i^{k_i} (and v_i^{k_i'} for
// p = 2), with u_i = 1 + V[T^i], v_i = 1 + V^2[T^i], indices i <= 0 coprime
// to p or i = 0.
struct GeneratorWord {
    int p = 0;
    bool has_teich = false;
    int c = 1;
    int d = 0;  // 0 < d <= p-1 when has_teich
    std::map<long long, PadicExponent> u;
    std::map<long long, PadicExponent> v;  // p = 2 only

    bool equal(const GeneratorWord& other) const;
};

// Exact multiplicative factorization of a Witt unit:
// x = [c T^d] * prod [1 - c_jk T^j]^(p^k) * prod u_{i1,i2}^{k_{i1,i2}}
// with u_{i1,i2} = 1 + V^(i2-1)[T^i1].
struct ExactFactorization {
    int p = 0;
    int c = 1;
    long long d = 0;
    std::vector<std::tuple<long long, int, int>> teich1units;  // (j, k, c_jk)
    std::vector<std::tuple<long long, int, int>> deep_units;   // (i1, i2, k), 0 <= k < p
};

// Solve q(Y) = F(Y)/Y = a inside W_l(K)^x; None when obstructed (level 0:
// y_0^(p-1) = a_0 unsolvable; level k >= 1: Artin-Schreier obstruction).
std::optional<WittVector> q_solve(const WittVector& a, long long N);

// Per-level obstruction report for diagnostics: level of first obstruction,
// or -1 when solvable.
int q_solve_obstruction_level(const WittVector& a, long long N);

ExactFactorization decompose_exact(const WittVector& x, long long N);
WittVector expand_factorization(const ExactFactorization& fact, int length, long long N);

GeneratorWord reduce_mod_q(const WittVector& x);
GeneratorWord reduce_mod_q(const ExactFactorization& fact, int length, long long N);

// [c T^d] * prod u_i^(k_i mod p^(l-1)) (v_i factors mod 2^(l-2) for p = 2).
WittVector reconstruct(const GeneratorWord& word, int length, long long N);

// (s, attainsMax): order of the class of a divides p^s (p-1), with equality
// iff attainsMax (a_0 generates the full K^x/(K^x)^(p-1)).
std::pair<int, bool> class_order(const WittVector& a);

// p > 2: true iff a_0's class has order p-1 and a_1 != 0.
bool galois_group_check(const WittVector& a);

// p = 2: component conditions (a_0=1, a_1!=0, a_2!=0; b_0=1, b_1=0, b_2!=0)
// up to swapping a and b.
bool galois_group_check_p2(const WittVector& a, const WittVector& b);

}  // namespace ztower
