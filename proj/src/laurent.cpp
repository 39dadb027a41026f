#include "ztower/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ztower {

namespace {

long long sat(long long x) {
    return std::min(x, LaurentSeries::kPrecCap);
}

void check_same_field(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.prime() != b.prime()) throw BadModulus("mixed primes in series arithmetic");
}

}  // namespace

LaurentSeries LaurentSeries::monomial(int p, long long coeff, long long exp,
                                      long long precision) {
    LaurentSeries s(p, precision);
    s.set(exp, coeff);
    return s;
}

bool LaurentSeries::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

void LaurentSeries::set(long long exp, long long coeff) {
    int c = fp::norm(coeff, p_);
    if (c == 0 || exp >= prec_) {
        terms_.erase(exp);
    } else {
        terms_[exp] = c;
    }
}

LaurentSeries LaurentSeries::with_precision(long long precision) const {
    LaurentSeries r(p_, sat(precision));
    for (const auto& [e, c] : terms_)
        if (e < r.prec_) r.terms_[e] = c;
    return r;
}

bool LaurentSeries::equal(const LaurentSeries& other) const {
    if (p_ != other.p_) return false;
    long long m = std::min(prec_, other.prec_);
    for (const auto& [e, c] : terms_)
        if (e < m && other.coeff(e) != c) return false;
    for (const auto& [e, c] : other.terms_)
        if (e < m && coeff(e) != c) return false;
    return true;
}

std::string LaurentSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "T";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

// --- arithmetic -----------------------------------------------------------

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b) {
    check_same_field(a, b);
    LaurentSeries r(a.prime(), std::min(a.precision(), b.precision()));
    for (const auto& [e, c] : a.terms()) r.set(e, c);
    for (const auto& [e, c] : b.terms()) r.set(e, r.coeff(e) + c);
    return r;
}

LaurentSeries series_neg(const LaurentSeries& a) {
    LaurentSeries r(a.prime(), a.precision());
    for (const auto& [e, c] : a.terms()) r.set(e, -c);
    return r;
}

LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b) {
    return series_add(a, series_neg(b));
}

LaurentSeries series_scale(const LaurentSeries& a, long long c) {
    LaurentSeries r(a.prime(), a.precision());
    for (const auto& [e, k] : a.terms()) r.set(e, static_cast<long long>(k) * fp::norm(c, a.prime()));
    return r;
}

LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) {
    check_same_field(a, b);
    long long va = std::min(a.valuation(), a.precision());
    long long vb = std::min(b.valuation(), b.precision());
    long long prec = sat(std::min(va + b.precision(), a.precision() + vb));
    LaurentSeries r(a.prime(), prec);
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            long long e = ea + eb;
            if (e < prec) r.set(e, r.coeff(e) + static_cast<long long>(ca) * cb);
        }
    return r;
}

LaurentSeries series_inv(const LaurentSeries& a) {
    if (a.is_zero()) throw InversionOfZero("series_inv(0)");
    int p = a.prime();
    long long v = a.valuation();
    long long prec = sat(a.precision() - 2 * v);
    if (prec <= -LaurentSeries::kPrecCap) throw PrecisionExhausted("series_inv: no precision left");
    // Leading-term division: maintain r with 1 - a*r of strictly increasing
    // valuation.
    LaurentSeries r = LaurentSeries::monomial(p, fp::inv(a.coeff(v), p), -v, prec);
    LaurentSeries one = LaurentSeries::one(p, sat(a.precision() - v));
    int lead_inv = fp::inv(a.coeff(v), p);
    for (;;) {
        LaurentSeries e = series_sub(one, series_mul(a, r).with_precision(one.precision()));
        if (e.is_zero()) break;
        long long t = e.valuation();
        if (t - v >= prec) break;  // every remaining digit is beyond the window
        // correction term: e_t * T^(t - v) / lead
        r.set(t - v, r.coeff(t - v) + static_cast<long long>(e.coeff(t)) * lead_inv);
    }
    return r.with_precision(prec);
}

LaurentSeries series_pow(const LaurentSeries& a, long long k) {
    int p = a.prime();
    if (k < 0) return series_pow(series_inv(a), -k);
    LaurentSeries r = LaurentSeries::one(p);
    LaurentSeries base = a;
    while (k > 0) {
        if (k & 1) r = series_mul(r, base);
        if (k >>= 1) base = series_mul(base, base);
    }
    return r;
}

LaurentSeries series_div(const LaurentSeries& a, const LaurentSeries& b) {
    return series_mul(a, series_inv(b));
}

LaurentSeries frobenius(const LaurentSeries& a) {
    LaurentSeries r(a.prime(), sat(a.precision() * a.prime()));
    for (const auto& [e, c] : a.terms()) r.set(e * a.prime(), c);
    return r;
}

// --- Artin-Schreier / root primitives --------------------------------------

std::pair<LaurentSeries, LaurentSeries> artin_schreier_reduce(const LaurentSeries& f) {
    int p = f.prime();
    LaurentSeries reduced = f;
    LaurentSeries witness(p, sat(f.precision()));
    // Sweep polar exponents divisible by p from the bottom up: replace
    // c*T^(p*j) (j < 0) by c*T^j via the witness term c*T^j, using c^p = c.
    for (;;) {
        long long e = 0;
        bool found = false;
        for (const auto& [ee, cc] : reduced.terms()) {
            if (ee >= 0) break;
            if (ee % p == 0) {
                e = ee;
                found = true;
                break;
            }
        }
        if (!found) break;
        int c = reduced.coeff(e);
        long long j = e / p;
        witness.set(j, witness.coeff(j) + c);
        reduced.set(e, 0);
        reduced.set(j, reduced.coeff(j) + c);
    }
    return {reduced, witness};
}

std::optional<LaurentSeries> solve_artin_schreier(const LaurentSeries& f, long long N) {
    int p = f.prime();
    auto [reduced, witness] = artin_schreier_reduce(f);
    for (const auto& [e, c] : reduced.terms())
        if (e <= 0) return std::nullopt;  // surviving polar part or constant
    long long prec = std::min(N, f.precision());
    // Positive part g: y = witness - (g + g^p + g^p^2 + ...), truncated once
    // p^k * v(g) reaches the precision bound.
    LaurentSeries y = witness.with_precision(prec);
    LaurentSeries g = reduced.with_precision(prec);
    while (!g.is_zero() && g.valuation() < prec) {
        y = series_sub(y, g.with_precision(prec));
        g = frobenius(g);
    }
    y.set(0, 0);  // constant-term-zero representative
    return y.with_precision(prec);
}

std::optional<LaurentSeries> nth_root(const LaurentSeries& f, int m) {
    int p = f.prime();
    if (m <= 0) throw BadModulus("nth_root: m must be positive");
    if (m % p == 0) throw BadModulus("nth_root: p | m");
    if (f.is_zero()) return f;
    long long v = f.valuation();
    if (v % m != 0) return std::nullopt;
    int lead = f.coeff(v);
    int root = 0;
    for (int r = 1; r < p; ++r)
        if (fp::pow(r, m, p) == lead) {
            root = r;
            break;
        }
    if (root == 0) return std::nullopt;
    LaurentSeries u = series_mul(f, LaurentSeries::monomial(p, fp::inv(lead, p), -v));
    // Digit-by-digit Hensel lift of the m-th root of the 1-unit u.
    int m_inv = fp::inv(fp::norm(m, p), p);
    LaurentSeries h = LaurentSeries::one(p, u.precision());
    for (;;) {
        LaurentSeries e = series_sub(u, series_pow(h, m).with_precision(u.precision()));
        if (e.is_zero()) break;
        long long t = e.valuation();
        h.set(t, h.coeff(t) + static_cast<long long>(e.coeff(t)) * m_inv);
    }
    return series_mul(LaurentSeries::monomial(p, root, v / m), h);
}

UnitFactors unit_decompose(const LaurentSeries& f) {
    int p = f.prime();
    if (f.is_zero()) throw ZeroInput("unit_decompose(0)");
    UnitFactors out;
    long long v = f.valuation();
    out.c = f.coeff(v);
    out.d = v;
    LaurentSeries u = series_mul(f, LaurentSeries::monomial(p, fp::inv(out.c, p), -v));
    // Strip the lowest term of the 1-unit repeatedly: 1 - a*T^M divides out as
    // (1 - c_jk T^j)^(p^k) with M = j*p^k and c_jk = -a (Frobenius fixes F_p).
    for (;;) {
        LaurentSeries rest = series_sub(u, LaurentSeries::one(p, u.precision()));
        if (rest.is_zero()) break;
        long long mexp = rest.valuation();
        int a = rest.coeff(mexp);
        long long j = mexp;
        int k = 0;
        while (j % p == 0) {
            j /= p;
            ++k;
        }
        int cjk = fp::norm(-a, p);
        out.factors.emplace_back(j, k, cjk);
        LaurentSeries factor = LaurentSeries::one(p, u.precision());
        factor.set(mexp, -cjk);
        u = series_div(u, factor).with_precision(u.precision());
    }
    return out;
}

// --- text form ---------------------------------------------------------------

namespace {

struct Scanner {
    std::string_view s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    long long integer() {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i++] == '-');
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("expected integer in series text");
        long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            v = v * 10 + (s[i++] - '0');
        return neg ? -v : v;
    }
};

}  // namespace

LaurentSeries parse_series(int p, std::string_view text, long long precision) {
    LaurentSeries r(p, precision);
    Scanner sc{text};
    bool first = true;
    while (!sc.done()) {
        long long sign = 1;
        if (sc.accept('-')) {
            sign = -1;
        } else if (sc.accept('+')) {
            if (first) throw ParseError("series text starts with '+'");
        } else if (!first) {
            throw ParseError("expected '+' or '-' between series terms");
        }
        first = false;
        long long coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
            coeff = sc.integer();
            saw_coeff = true;
            sc.accept('*');
        }
        long long exp = 0;
        if (sc.peek() == 'T' || sc.peek() == 't') {
            ++sc.i;
            exp = sc.accept('^') ? sc.integer() : 1;
        } else if (!saw_coeff) {
            throw ParseError("expected coefficient or T in series term");
        }
        r.set(exp, r.coeff(exp) + sign * fp::norm(coeff, p));
    }
    return r;
}

}  // namespace ztower
