#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ztower/errors.hpp"
#include "ztower/fp.hpp"

namespace ztower {

// Truncated formal Laurent series over F_p: the field K = F_p((T)).
//
// Coefficients are known exactly for exponents < precision() and unspecified
// at or beyond it (absolute precision model). The zero series stores no
// terms; its valuation is reported as precision() (the +infinity sentinel is
// "nothing visible below the precision bound").
class LaurentSeries {
public:
    // Saturation bound for precision bookkeeping (frobenius multiplies
    // precision by p; exact values such as parsed polynomials start here).
    static constexpr long long kPrecCap = 1LL << 40;

    LaurentSeries() : p_(0), prec_(0) {}
    LaurentSeries(int p, long long precision) : p_(p), prec_(precision) {
        fp::check_prime(p);
    }

    static LaurentSeries zero(int p, long long precision = kPrecCap) {
        return LaurentSeries(p, precision);
    }
    static LaurentSeries monomial(int p, long long coeff, long long exp,
                                  long long precision = kPrecCap);
    static LaurentSeries one(int p, long long precision = kPrecCap) {
        return monomial(p, 1, 0, precision);
    }

    int prime() const { return p_; }
    long long precision() const { return prec_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;

    // Lowest exponent with nonzero coefficient; precision() for the zero
    // series (everything visible vanishes).
    long long valuation() const { return terms_.empty() ? prec_ : terms_.begin()->first; }

    int coeff(long long exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? 0 : it->second;
    }
    const std::map<long long, int>& terms() const { return terms_; }

    // Set one coefficient (normalized mod p; zero coefficients and exponents
    // at/above the precision bound are dropped).
    void set(long long exp, long long coeff);

    // Restrict the precision bound downward (dropping newly-invisible terms).
    LaurentSeries with_precision(long long precision) const;

    // Equality as truncated series: all digits below min(precision) agree.
    bool equal(const LaurentSeries& other) const;

    std::string str() const;

private:
    int p_;
    long long prec_;
    std::map<long long, int> terms_;
};

// --- arithmetic -----------------------------------------------------------

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_neg(const LaurentSeries& a);
LaurentSeries series_scale(const LaurentSeries& a, long long c);
// Precision window: min(v_eff(a)+N_b, N_a+v_eff(b)) with v_eff = min(v, N).
LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b);
// Precision window: N_a - 2*v(a).
LaurentSeries series_inv(const LaurentSeries& a);
LaurentSeries series_pow(const LaurentSeries& a, long long k);
LaurentSeries series_div(const LaurentSeries& a, const LaurentSeries& b);
// f -> f^p (coefficients are F_p-fixed, so exponents scale by p); precision
// scales by p as well.
LaurentSeries frobenius(const LaurentSeries& a);

// --- Artin-Schreier / root primitives --------------------------------------

// f = P(witness) + reduced with P(h) = h^p - h; `reduced` has all polar
// exponents coprime to p; the constant and positive parts pass through
// (positive p-multiple exponents are not rewritten).
std::pair<LaurentSeries, LaurentSeries> artin_schreier_reduce(const LaurentSeries& f);

// Solve y^p - y = f in K to precision N; None when unsolvable (nonzero
// AS-reduced polar part or constant term). The returned representative has
// zero constant term.
std::optional<LaurentSeries> solve_artin_schreier(const LaurentSeries& f, long long N);

// Solve g^m = f (gcd(m,p)=1); None when m does not divide v(f) or the leading
// coefficient is not an m-th power in F_p^x.
std::optional<LaurentSeries> nth_root(const LaurentSeries& f, int m);

// f = c T^d * prod (1 - c_jk T^j)^(p^k) with j > 0 coprime to p, c_jk in F_p^x.
struct UnitFactors {
    int c = 1;
    long long d = 0;
    std::vector<std::tuple<long long, int, int>> factors;  // (j, k, c_jk)
};
UnitFactors unit_decompose(const LaurentSeries& f);

// --- text form --------------------------------------------------------------

// Grammar: `2*T^-1 + 1 + T^3` (integer coefficients mod p, `-` binds to the
// following term).
LaurentSeries parse_series(int p, std::string_view text, long long precision);

}  // namespace ztower
