#pragma once

#include <cstdint>
#include <numeric>

#include "ztower/errors.hpp"

// Small helpers for arithmetic in the prime field F_p (p a small runtime
// prime, p <= 97). Residues are plain ints normalized into [0, p).

namespace ztower::fp {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

inline void check_prime(int p) {
    if (!is_prime(p) || p > 97) throw BadModulus("p must be a prime <= 97");
}

// Normalize an arbitrary integer into [0, p).
inline int norm(long long a, int p) {
    long long r = a % p;
    if (r < 0) r += p;
    return static_cast<int>(r);
}

inline int add(int a, int b, int p) { return norm(static_cast<long long>(a) + b, p); }
inline int sub(int a, int b, int p) { return norm(static_cast<long long>(a) - b, p); }
inline int mul(int a, int b, int p) { return norm(static_cast<long long>(a) * b, p); }

inline int pow(int a, long long e, int p) {
    a = norm(a, p);
    if (e < 0) throw BadIndex("fp::pow expects e >= 0");
    long long r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<int>(r);
}

inline int inv(int a, int p) {
    a = norm(a, p);
    if (a == 0) throw InversionOfZero("inverse of 0 in F_p");
    return pow(a, p - 2, p);
}

// Multiplicative order of a in F_p^x.
inline int order(int a, int p) {
    a = norm(a, p);
    if (a == 0) throw ZeroInput("order of 0 in F_p^x");
    int o = 1, x = a;
    while (x != 1) {
        x = mul(x, a, p);
        ++o;
    }
    return o;
}

// True iff a is an m-th power in F_p^x (m | p-1 not required; reduced via gcd).
inline bool is_mth_power(int a, int m, int p) {
    a = norm(a, p);
    if (a == 0) throw ZeroInput("power class of 0");
    int g = std::gcd(m, p - 1);
    return pow(a, (p - 1) / g, p) == 1;
}

// Largest divisor m of p-1 such that a is an m-th power in F_p^x.
inline int max_power_divisor(int a, int p) {
    for (int m = p - 1; m >= 1; --m)
        if ((p - 1) % m == 0 && is_mth_power(a, m, p)) return m;
    return 1;
}

// Order of the class of a in F_p^x / (F_p^x)^m for m | p-1: smallest k with
// a^k an m-th power.
inline int class_order_mod_powers(int a, int m, int p) {
    int x = norm(a, p);
    int cur = x;
    for (int k = 1; k <= p - 1; ++k) {
        if (is_mth_power(cur, m, p)) return k;
        cur = mul(cur, x, p);
    }
    throw Error("class_order_mod_powers failed");  // unreachable for valid input
}

}  // namespace ztower::fp
