#include "ztower/witt.hpp"

#include <algorithm>
#include <sstream>

namespace ztower {

using namespace wpoly;

namespace {

void check_compatible(const WittVector& x, const WittVector& y) {
    if (x.p != y.p) throw BadModulus("mixed primes in Witt arithmetic");
    if (x.length() != y.length()) throw LengthMismatch("Witt vector lengths differ");
}

const LaurentSeries& slot_series(int slot, const WittVector& x, const WittVector& y,
                                 const LaurentSeries& zero) {
    if (slot < kMaxLen) {
        if (slot < x.length()) return x.comp[slot];
    } else if (slot - kMaxLen < y.length()) {
        return y.comp[slot - kMaxLen];
    }
    return zero;
}

}  // namespace

bool WittVector::equal(const WittVector& other) const {
    if (p != other.p || length() != other.length()) return false;
    for (int i = 0; i < length(); ++i)
        if (!comp[i].equal(other.comp[i])) return false;
    return true;
}

std::string WittVector::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < length(); ++i) {
        if (i) os << "; ";
        os << comp[i].str();
    }
    os << ")";
    return os.str();
}

WittVector witt_zero(int p, int length, long long precision) {
    return WittVector(p, length, precision);
}

WittVector witt_one(int p, int length, long long precision) {
    WittVector r(p, length, precision);
    r.comp[0] = LaurentSeries::one(p, precision);
    return r;
}

LaurentSeries eval_char_poly(const CharPoly& poly, const WittVector& x,
                             const WittVector& y) {
    int p = x.p;
    LaurentSeries zero = LaurentSeries::zero(p);
    // Per-slot power tables up to the largest exponent used.
    unsigned max_exp[2 * kMaxLen] = {};
    for (const auto& [k, c] : poly.terms)
        for (int s = 0; s < 2 * kMaxLen; ++s)
            max_exp[s] = std::max(max_exp[s], get_exp(k, s));
    std::vector<std::vector<LaurentSeries>> powers(2 * kMaxLen);
    for (int s = 0; s < 2 * kMaxLen; ++s) {
        if (max_exp[s] == 0) continue;
        powers[s].reserve(max_exp[s] + 1);
        powers[s].push_back(LaurentSeries::one(p));
        const LaurentSeries& base = slot_series(s, x, y, zero);
        for (unsigned e = 1; e <= max_exp[s]; ++e)
            powers[s].push_back(series_mul(powers[s].back(), base));
    }
    LaurentSeries acc = LaurentSeries::zero(p);
    for (const auto& [k, c] : poly.terms) {
        LaurentSeries term = LaurentSeries::monomial(p, c, 0);
        for (int s = 0; s < 2 * kMaxLen; ++s) {
            unsigned e = get_exp(k, s);
            if (e) term = series_mul(term, powers[s][e]);
        }
        acc = series_add(acc, term);
    }
    return acc;
}

WittVector witt_add(const WittVector& x, const WittVector& y) {
    check_compatible(x, y);
    const WittTables& tab = witt_tables(x.p, x.length());
    WittVector r(x.p, x.length(), LaurentSeries::kPrecCap);
    for (int n = 0; n < x.length(); ++n)
        r.comp[n] = eval_char_poly(tab.sum_polys[n], x, y);
    return r;
}

WittVector witt_mul(const WittVector& x, const WittVector& y) {
    check_compatible(x, y);
    const WittTables& tab = witt_tables(x.p, x.length());
    WittVector r(x.p, x.length(), LaurentSeries::kPrecCap);
    for (int n = 0; n < x.length(); ++n)
        r.comp[n] = eval_char_poly(tab.prod_polys[n], x, y);
    return r;
}

WittVector witt_neg(const WittVector& x) {
    // S_n is linear in Y_n with coefficient 1 (weight argument), so the
    // equation S_n(x, y) = 0 solves as y_n = -S_n(x, y | y_n = 0).
    const WittTables& tab = witt_tables(x.p, x.length());
    WittVector y(x.p, x.length(), LaurentSeries::kPrecCap);
    for (int n = 0; n < x.length(); ++n)
        y.comp[n] = series_neg(eval_char_poly(tab.sum_polys[n], x, y));
    return y;
}

WittVector witt_sub(const WittVector& x, const WittVector& y) {
    return witt_add(x, witt_neg(y));
}

WittVector witt_inv(const WittVector& x) {
    if (!x.is_unit()) throw NotAUnit("witt_inv of a non-unit");
    // Peel the monomial part of x_0 first: [c T^d]^(-1) = [c^(-1) T^(-d)]
    // exactly, so the triangular solve below only divides by 1-units and the
    // precision windows are not charged for inverting x_0^(p^n).
    long long v0 = x.comp[0].valuation();
    int lead = x.comp[0].coeff(v0);
    if (v0 != 0 || lead != 1) {
        WittVector tm_inv = teichmuller(
            LaurentSeries::monomial(x.p, fp::inv(lead, x.p), -v0), x.length());
        return witt_mul(witt_inv(witt_mul(x, tm_inv)), tm_inv);
    }
    // P_n mod p is linear in Y_n with coefficient X_0^(p^n), so the level-n
    // equation P_n(x, y) = t_n solves triangularly.
    const WittTables& tab = witt_tables(x.p, x.length());
    WittVector y(x.p, x.length(), LaurentSeries::kPrecCap);
    LaurentSeries c = x.comp[0];  // x_0^(p^n), advanced by frobenius each level
    for (int n = 0; n < x.length(); ++n) {
        LaurentSeries a = eval_char_poly(tab.prod_polys[n], x, y);
        LaurentSeries target = n == 0 ? LaurentSeries::one(x.p) : LaurentSeries::zero(x.p);
        y.comp[n] = series_div(series_sub(target, a), c);
        c = frobenius(c);
    }
    return y;
}

WittVector witt_pow(const WittVector& x, long long k) {
    if (k < 0) {
        if (!x.is_unit()) throw NegativePowerOfNonUnit("negative power of a non-unit");
        return witt_pow(witt_inv(x), -k);
    }
    WittVector r = witt_one(x.p, x.length());
    WittVector base = x;
    while (k > 0) {
        if (k & 1) r = witt_mul(r, base);
        if (k >>= 1) base = witt_mul(base, base);
    }
    return r;
}

WittVector teichmuller(const LaurentSeries& f, int length) {
    WittVector r(f.prime(), length, LaurentSeries::kPrecCap);
    r.comp[0] = f;
    return r;
}

WittVector verschiebung(const WittVector& x) {
    WittVector r(x.p, x.length(), LaurentSeries::kPrecCap);
    for (int i = 1; i < x.length(); ++i) r.comp[i] = x.comp[i - 1];
    return r;
}

WittVector frobenius_witt(const WittVector& x) {
    WittVector r = x;
    for (auto& c : r.comp) c = frobenius(c);
    return r;
}

WittVector truncate(const WittVector& x, int m) {
    if (m < 1 || m > x.length()) throw LengthMismatch("truncate length out of range");
    WittVector r = x;
    r.comp.resize(m);
    return r;
}

WittVector one_plus_v(int n, const LaurentSeries& f, int length) {
    if (n < 1 || n >= length) throw BadIndex("one_plus_v level out of range");
    WittVector r = witt_one(f.prime(), length);
    r.comp[n] = f;
    return r;
}

WittVector q_map(const WittVector& x) {
    if (!x.is_unit()) throw NotAUnit("q_map of a non-unit");
    return witt_mul(frobenius_witt(x), witt_inv(x));
}

WittVector parse_witt(int p, std::string_view text, long long precision) {
    size_t a = text.find('(');
    size_t b = text.rfind(')');
    if (a == std::string_view::npos || b == std::string_view::npos || b <= a)
        throw ParseError("Witt vector text must be (f_0; f_1; ...)");
    std::string_view body = text.substr(a + 1, b - a - 1);
    WittVector r;
    r.p = p;
    size_t pos = 0;
    while (true) {
        size_t sep = body.find(';', pos);
        std::string_view piece =
            sep == std::string_view::npos ? body.substr(pos) : body.substr(pos, sep - pos);
        r.comp.push_back(parse_series(p, piece, precision));
        if (sep == std::string_view::npos) break;
        pos = sep + 1;
    }
    return r;
}

}  // namespace ztower
