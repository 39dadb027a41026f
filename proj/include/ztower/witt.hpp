#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ztower/laurent.hpp"
#include "ztower/witt_poly.hpp"

namespace ztower {

// Element of the truncated p-typical Witt ring W_l(K), K = F_p((T)).
struct WittVector {
    int p = 0;
    std::vector<LaurentSeries> comp;

    WittVector() = default;
    WittVector(int prime, int length, long long precision) : p(prime) {
        comp.assign(length, LaurentSeries::zero(prime, precision));
    }

    int length() const { return static_cast<int>(comp.size()); }
    bool is_unit() const { return !comp.empty() && !comp[0].is_zero(); }
    bool equal(const WittVector& other) const;
    std::string str() const;
};

WittVector witt_zero(int p, int length, long long precision = LaurentSeries::kPrecCap);
WittVector witt_one(int p, int length, long long precision = LaurentSeries::kPrecCap);

WittVector witt_add(const WittVector& x, const WittVector& y);
WittVector witt_sub(const WittVector& x, const WittVector& y);
WittVector witt_mul(const WittVector& x, const WittVector& y);
WittVector witt_neg(const WittVector& x);
// Componentwise triangular solve of x*y = (1,0,...,0); the level-k equation
// is linear in y_k with coefficient x_0^(p^k).
WittVector witt_inv(const WittVector& x);
WittVector witt_pow(const WittVector& x, long long k);

WittVector teichmuller(const LaurentSeries& f, int length);
WittVector verschiebung(const WittVector& x);
WittVector frobenius_witt(const WittVector& x);
WittVector truncate(const WittVector& x, int m);
// 1 + V^n [f]: the unit (1, 0, ..., 0, f, 0, ...) with f at component n.
WittVector one_plus_v(int n, const LaurentSeries& f, int length);

// q(x) = F(x) / x; kernel on W_l(F_p)^x.
WittVector q_map(const WittVector& x);

// Evaluate a frozen char-p universal polynomial at components of x (X-bank)
// and y (Y-bank).
LaurentSeries eval_char_poly(const wpoly::CharPoly& poly, const WittVector& x,
                             const WittVector& y);

// Textual form `(f_0; f_1; ...; f_{l-1})` with series in core grammar.
WittVector parse_witt(int p, std::string_view text, long long precision);

}  // namespace ztower
