#include "ztower/qdecompose.hpp"

#include <algorithm>

namespace ztower {

namespace {

long long ipow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) {
        if (r > (1LL << 61) / b) throw BadIndex("p-adic modulus too large");
        r *= b;
    }
    return r;
}

void accumulate_exponent(std::map<long long, PadicExponent>& dst, int p, int mod_exp,
                         long long index, long long delta) {
    auto& k = dst[index];
    if (k.p == 0) {
        k.p = p;
        k.mod_exp = mod_exp;
    }
    long long mod = k.modulus();
    k.value = ((k.value + delta) % mod + mod) % mod;
    if (k.value == 0) dst.erase(index);
}

}  // namespace

long long PadicExponent::modulus() const { return ipow_ll(p, mod_exp); }

std::optional<int> PadicExponent::vp() const {
    if (value == 0) return std::nullopt;
    int v = 0;
    long long x = value;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

bool GeneratorWord::equal(const GeneratorWord& other) const {
    auto exps_equal = [](const std::map<long long, PadicExponent>& a,
                         const std::map<long long, PadicExponent>& b) {
        if (a.size() != b.size()) return false;
        for (const auto& [i, k] : a) {
            auto it = b.find(i);
            if (it == b.end() || it->second.value != k.value ||
                it->second.mod_exp != k.mod_exp)
                return false;
        }
        return true;
    };
    return p == other.p && has_teich == other.has_teich &&
           (!has_teich || (c == other.c && d == other.d)) && exps_equal(u, other.u) &&
           exps_equal(v, other.v);
}

// --- q_solve -----------------------------------------------------------------

namespace {

// Shared triangular solve; returns the first obstructed level (0-based) or -1
// and fills *out when solvable.
int q_solve_impl(const WittVector& a, long long N, WittVector* out) {
    if (!a.is_unit()) throw NotAUnit("q_solve of a non-unit");
    int p = a.p;
    int l = a.length();
    auto y0 = nth_root(a.comp[0], p - 1);  // m = 1 for p = 2
    if (!y0) return 0;
    // Normalize to b with b_0 = 1: b = a / q([y_0]) = a / [a_0].
    WittVector b = witt_mul(a, witt_inv(teichmuller(a.comp[0], l)));
    WittVector z = witt_one(p, l, LaurentSeries::kPrecCap);
    const WittTables& tab = witt_tables(p, l);
    for (int k = 1; k < l; ++k) {
        // F(z) = b z at level k with b_0 = 1 reads z_k^p - z_k = P_k(b, z|z_k=0).
        LaurentSeries rhs = eval_char_poly(tab.prod_polys[k], b, z);
        auto s = solve_artin_schreier(rhs, N);
        if (!s) return k;
        z.comp[k] = *s;
    }
    if (out) *out = witt_mul(teichmuller(*y0, l), z);
    return -1;
}

}  // namespace

std::optional<WittVector> q_solve(const WittVector& a, long long N) {
    WittVector y;
    if (q_solve_impl(a, N, &y) != -1) return std::nullopt;
    return y;
}

int q_solve_obstruction_level(const WittVector& a, long long N) {
    return q_solve_impl(a, N, nullptr);
}

// --- exact decomposition -------------------------------------------------------

ExactFactorization decompose_exact(const WittVector& x, long long N) {
    if (!x.is_unit()) throw NotAUnit("decompose_exact of a non-unit");
    int p = x.p;
    int l = x.length();
    ExactFactorization fact;
    fact.p = p;
    auto uf = unit_decompose(x.comp[0].with_precision(std::min(N, x.comp[0].precision())));
    fact.c = uf.c;
    fact.d = uf.d;
    fact.teich1units = uf.factors;
    // Teichmuller lifts multiply to [x_0]; deeper levels are corrected one
    // component at a time by reading coefficients of (x_n - g_n) / x_0^(p^n).
    WittVector y = teichmuller(x.comp[0], l);
    LaurentSeries inv_x0 = series_inv(x.comp[0]);
    for (int n = 1; n < l; ++n) {
        LaurentSeries g = y.comp[n];
        LaurentSeries h = series_mul(series_sub(x.comp[n], g),
                                     series_pow(inv_x0, ipow_ll(p, n)));
        h = h.with_precision(std::min(N, h.precision()));
        if (h.precision() <= 0)
            throw PrecisionExhausted("decompose_exact: corrections need digits beyond N");
        for (const auto& [i1, k] : h.terms()) {
            fact.deep_units.emplace_back(i1, n + 1, k);
            y = witt_mul(y, witt_pow(one_plus_v(n, LaurentSeries::monomial(p, 1, i1, N), l), k));
        }
    }
    return fact;
}

WittVector expand_factorization(const ExactFactorization& fact, int length, long long N) {
    int p = fact.p;
    LaurentSeries f0 = LaurentSeries::monomial(p, fact.c, fact.d);
    for (const auto& [j, k, cjk] : fact.teich1units) {
        LaurentSeries factor = LaurentSeries::one(p);
        factor.set(j * ipow_ll(p, k), -cjk);  // (1 - c T^j)^(p^k) = 1 - c T^(j p^k)
        f0 = series_mul(f0, factor);
    }
    WittVector r = teichmuller(f0.with_precision(N), length);
    for (const auto& [i1, i2, k] : fact.deep_units)
        r = witt_mul(r, witt_pow(one_plus_v(i2 - 1, LaurentSeries::monomial(p, 1, i1, N), length), k));
    return r;
}

// --- canonical word ------------------------------------------------------------

GeneratorWord reduce_mod_q(const WittVector& x) {
    if (!x.is_unit()) throw NotAUnit("reduce_mod_q of a non-unit");
    int p = x.p;
    int l = x.length();
    GeneratorWord word;
    word.p = p;
    int M = l - 1;                         // u-exponents live mod p^(l-1)
    int Mv = std::max(l - 2, 0);           // v-exponents (p = 2) mod 2^(l-2)
    // Split off the Teichmuller part: x = [x_0] * r with r = (1, ...).
    WittVector r = witt_mul(x, witt_inv(teichmuller(x.comp[0], l)));
    if (p > 2) {
        // Only the class of x_0 in K^x / (1-units) matters: leading
        // coefficient and valuation mod p-1 (1-units are q-trivial).
        long long v = x.comp[0].valuation();
        int lead = x.comp[0].coeff(v);
        int dmod = fp::norm(v, p - 1);
        if (!(lead == 1 && dmod == 0)) {
            word.has_teich = true;
            word.c = lead;
            word.d = dmod == 0 ? p - 1 : dmod;
        }
    }
    // Level-by-level sweep: at level n, remove Artin-Schreier-trivial content
    // with a q(1+V^n[witness]) correction, then strip each surviving term
    // a*T^e (e <= 0) as the exact generator power (1+V^n[T^e])^a, recording
    // u_e^(a*p^(n-1)) (v_e for p = 2 at n >= 2). At level n both corrections
    // and generator powers are exactly linear (cross terms land strictly
    // deeper), so each pass clears the level and pushes junk downward only.
    for (int n = 1; n < l; ++n) {
        for (int pass = 0;; ++pass) {
            if (pass > 4 * l) throw Error("reduce_mod_q did not stabilize");
            LaurentSeries f = r.comp[n];
            if (f.precision() <= 0)
                throw PrecisionExhausted("reduce_mod_q: no precision left at level " +
                                         std::to_string(n));
            if (f.is_zero()) break;
            auto [red, wit] = artin_schreier_reduce(f);
            LaurentSeries pos(p, red.precision());
            for (const auto& [e, a] : red.terms())
                if (e > 0) pos.set(e, a);
            if (!pos.is_zero()) {
                auto h = solve_artin_schreier(pos, pos.precision());
                if (!h) throw Error("reduce_mod_q: positive part not solvable");
                wit = series_add(wit, *h);
            }
            if (!wit.is_zero()) {
                r = witt_mul(r, witt_inv(q_map(one_plus_v(n, wit, l))));
                f = r.comp[n];
                if (f.is_zero()) break;
            }
            for (const auto& [e, a] : f.terms()) {
                if (e > 0) continue;
                if (p > 2) {
                    if (M > 0)
                        accumulate_exponent(word.u, p, M, e, a * ipow_ll(p, n - 1));
                } else if (n == 1) {
                    accumulate_exponent(word.u, p, 1, e, a);
                } else if (Mv > 0) {
                    accumulate_exponent(word.v, p, Mv, e, a * ipow_ll(2, n - 2));
                }
                r = witt_mul(r, witt_inv(witt_pow(
                        one_plus_v(n, LaurentSeries::monomial(p, 1, e), l), a)));
            }
        }
    }
    return word;
}

GeneratorWord reduce_mod_q(const ExactFactorization& fact, int length, long long N) {
    return reduce_mod_q(expand_factorization(fact, length, N));
}

WittVector reconstruct(const GeneratorWord& word, int length, long long N) {
    int p = word.p;
    WittVector r = witt_one(p, length);
    if (word.has_teich)
        r = teichmuller(LaurentSeries::monomial(p, word.c, word.d, N), length);
    long long mod_u = ipow_ll(p, length - 1);
    for (const auto& [i, k] : word.u) {
        long long e = k.value % mod_u;
        if (e == 0) continue;
        r = witt_mul(r, witt_pow(one_plus_v(1, LaurentSeries::monomial(p, 1, i, N), length), e));
    }
    if (!word.v.empty() && length >= 3) {
        long long mod_v = ipow_ll(2, length - 2);
        for (const auto& [i, k] : word.v) {
            long long e = k.value % mod_v;
            if (e == 0) continue;
            r = witt_mul(r, witt_pow(one_plus_v(2, LaurentSeries::monomial(p, 1, i, N), length), e));
        }
    }
    return r;
}

// --- Galois predicates -----------------------------------------------------------

std::pair<int, bool> class_order(const WittVector& a) {
    if (!a.is_unit()) throw NotAUnit("class_order of a non-unit");
    int p = a.p;
    int n = a.length();
    int r = n;
    for (int i = 1; i < n; ++i)
        if (!a.comp[i].is_zero()) {
            r = i;
            break;
        }
    int s = n - r;
    bool attains;
    if (p == 2) {
        attains = true;  // K^x/(K^x)^1 is trivial; order 1 = p-1
    } else {
        long long v = fp::norm(a.comp[0].valuation(), p - 1);
        int ord_v = (p - 1) / std::gcd(static_cast<long long>(p - 1), v);
        int lead = a.comp[0].coeff(a.comp[0].valuation());
        int ord_c = fp::order(lead, p);
        attains = std::lcm(ord_v, ord_c) == p - 1;
    }
    return {s, attains};
}

bool galois_group_check(const WittVector& a) {
    if (a.p == 2) throw WrongPrime("galois_group_check requires p > 2");
    if (!a.is_unit()) throw NotAUnit("galois_group_check of a non-unit");
    if (a.length() < 2) return false;
    auto [s, attains] = class_order(a);
    (void)s;
    return attains && !a.comp[1].is_zero();
}

bool galois_group_check_p2(const WittVector& a, const WittVector& b) {
    if (a.p != 2 || b.p != 2) throw WrongPrime("galois_group_check_p2 requires p = 2");
    if (a.length() < 3 || b.length() < 3)
        throw LengthMismatch("galois_group_check_p2 needs length >= 3");
    auto cond = [](const WittVector& x, const WittVector& y) {
        return x.comp[0].is_one() && !x.comp[1].is_zero() && !x.comp[2].is_zero() &&
               y.comp[0].is_one() && y.comp[1].is_zero() && !y.comp[2].is_zero();
    };
    return cond(a, b) || cond(b, a);
}

}  // namespace ztower
