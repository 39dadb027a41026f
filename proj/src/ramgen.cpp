#include "ztower/ramgen.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace ztower {

using boost::multiprecision::cpp_int;

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 2;

long long ipow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) {
        if (r > (1LL << 61) / b) throw BadIndex("power too large");
        r *= b;
    }
    return r;
}

Rational rpow(int p, int e) {
    cpp_int v = 1;
    for (int i = 0; i < std::abs(e); ++i) v *= p;
    return e >= 0 ? Rational(v) : Rational(1, v);
}

int vp_ll(long long v, int p) {
    int e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

// Exponent value visible at level n: k mod p^min(n, mod_exp).
long long level_value(const PadicExponent& k, int n) {
    int e = std::min(n, k.mod_exp);
    return k.value % ipow_ll(k.p, e);
}

struct ActiveIndex {
    long long i;   // < 0, coprime to p
    int delta;     // v_p of the level-truncated exponent
};

std::vector<ActiveIndex> active_indices(const GeneratorWord& word, int n) {
    std::vector<ActiveIndex> out;
    for (const auto& [i, k] : word.u) {
        if (i >= 0) continue;
        long long lv = level_value(k, n);
        if (lv != 0) out.push_back({i, vp_ll(lv, word.p)});
    }
    return out;
}

// v_p of the u_0 exponent at level n; kInf when absent or invisible.
int constant_depth(const GeneratorWord& word, int n) {
    auto it = word.u.find(0);
    if (it == word.u.end()) return kInf;
    long long lv = level_value(it->second, n);
    return lv == 0 ? kInf : vp_ll(lv, word.p);
}

int gcd3(long long a, long long b, long long c) {
    return static_cast<int>(std::gcd(std::gcd(a, b), c));
}

// Tame gcd term of the combined different formula.
int tame_gcd_term(const GeneratorWord& word) {
    int p = word.p;
    if (!word.has_teich) return p - 1;
    int m = fp::max_power_divisor(word.c, p);
    return gcd3(fp::norm(-word.d, p - 1) == 0 ? p - 1 : fp::norm(-word.d, p - 1), m, p - 1);
}

struct WildShape {
    int n1;  // kInf when absent
    int n2;
    int nu;
};

WildShape wild_shape(const GeneratorWord& word, const std::vector<ActiveIndex>& active, int n) {
    WildShape s{constant_depth(word, n), kInf, 0};
    for (const auto& a : active) s.n2 = std::min(s.n2, a.delta);
    if (s.n2 == kInf) s.n2 = 0;  // callers only use this with a nonempty active set
    s.nu = s.n1 == kInf ? 0 : std::max(s.n2 - s.n1, 0);
    return s;
}

Rational wild_max_term(int p, const std::vector<ActiveIndex>& active, int n, int nu,
                       int index_scale) {
    Rational best;
    bool first = true;
    for (const auto& a : active) {
        long long im = index_scale * a.i;  // < 0
        Rational c = Rational(-im, p + 1) * rpow(p, 2 * std::max(n - nu - a.delta, 0)) +
                     Rational(im, p + 1);
        if (first || c > best) {
            best = c;
            first = false;
        }
    }
    return best;
}

}  // namespace

std::pair<int, int> kummer_ramification(int p, int c, long long d) {
    fp::check_prime(p);
    c = fp::norm(c, p);
    if (c == 0) throw ZeroInput("kummer_ramification: c = 0");
    if (d == 0 && c == 1) throw DegenerateInput("trivial Kummer class");
    int dmod = fp::norm(d, p - 1);
    int e = (p - 1) / std::gcd(p - 1, dmod == 0 ? p - 1 : dmod);
    int ord_c = fp::order(c, p);
    int f = std::lcm(e, ord_c) / e;
    return {e, f};
}

int kummer_different(int p, int c, long long d) {
    fp::check_prime(p);
    c = fp::norm(c, p);
    if (c == 0) throw ZeroInput("kummer_different: c = 0");
    int m = fp::max_power_divisor(c, p);
    int dd = fp::norm(-d, p - 1);  // -d reduced into [0, p-1)
    int g = dd == 0 ? std::gcd(m, p - 1) : gcd3(dd, m, p - 1);
    return p - 1 - g;
}

long long y_valuation(int p, long long i, int n, int nu) {
    if (i >= 0 || i % p == 0 || n < 1) throw BadIndex("y_valuation: need i < 0 coprime to p, n >= 1");
    long long bracket = 1;
    for (int j = 1; j <= n - 1 - nu; ++j)
        bracket += ipow_ll(p, 2 * j) - ipow_ll(p, 2 * j - 1);
    return bracket * i;
}

Rational different_single_u(int p, long long i, const PadicExponent& k_i, int n) {
    if (i >= 0 || i % p == 0) throw BadIndex("different_single_u: need i < 0 coprime to p");
    if (k_i.value == 0) throw BadIndex("different_single_u: zero exponent");
    int sigma = *k_i.vp();  // single-u profile has nu = 0
    int shift = std::max(n - sigma, 0);
    return Rational(-i, p + 1) * rpow(p, 2 * shift) + rpow(p, shift) + Rational(i, p + 1) -
           1;
}

Rational different_combined(const GeneratorWord& word, int n) {
    int p = word.p;
    auto active = active_indices(word, n);
    if (active.empty())
        return word.has_teich ? Rational(kummer_different(p, word.c, word.d)) : Rational(0);
    WildShape s = wild_shape(word, active, n);
    int g = tame_gcd_term(word);
    Rational mid = rpow(p, std::max(n - s.nu - s.n2, 0)) * (p - g);
    return mid + wild_max_term(p, active, n, s.nu, 1) - 1;
}

Rational different_combined_rh(const GeneratorWord& word, int n) {
    int p = word.p;
    auto active = active_indices(word, n);
    int e1 = 1, d_tame = 0;
    if (word.has_teich) {
        e1 = kummer_ramification(p, word.c, word.d).first;
        d_tame = kummer_different(p, word.c, word.d);
    }
    if (active.empty()) return Rational(d_tame);
    WildShape s = wild_shape(word, active, n);
    // Conductor over the degree-e1 Kummer subfield (pole orders scale by e1),
    // plus the tame different inflated by the wild degree.
    Rational wild_deg = rpow(p, std::max(n - s.nu - s.n2, 0));
    return wild_max_term(p, active, n, s.nu, e1) + wild_deg - 1 + wild_deg * d_tame;
}

RamificationProfile ramification_profile(const GeneratorWord& word, int n) {
    RamificationProfile prof;
    int p = word.p;
    if (word.has_teich) {
        auto [e, f] = kummer_ramification(p, word.c, word.d);
        prof.e1 = e;
        prof.f1 = f;
    }
    auto it0 = word.u.find(0);
    if (it0 != word.u.end() && it0->second.value != 0) prof.n1 = *it0->second.vp();
    int n2 = kInf;
    for (const auto& [i, k] : word.u)
        if (i < 0 && k.value != 0) n2 = std::min(n2, *k.vp());
    prof.n2 = n2 == kInf ? n : n2;
    prof.nu = prof.n1 ? std::max(prof.n2 - *prof.n1, 0) : 0;
    prof.nc = prof.nu;
    return prof;
}

// --- genus sequences -------------------------------------------------------------

namespace {

struct PlaceData {
    const PlaceSpec* spec;
    int e1 = 1;
    int f1 = 1;
    int n2_full = kInf;  // min v_p of wild exponents (untruncated)
    int nc = 0;
};

GenusLevelRow genus_row(int p, int n, const std::vector<PlaceData>& pd, long long tame,
                        int f1g, int n2g, int ncg, const Rational& g_base, bool full_rh) {
    GenusLevelRow row;
    row.n = n;
    Rational deg = Rational(tame) * rpow(p, std::max(n - std::min(n2g, n), 0));
    Rational constdeg = Rational(f1g) * rpow(p, std::min(ncg, n));
    Rational acc = deg * (2 * g_base - 2);
    for (const auto& d : pd) {
        const GeneratorWord& w = d.spec->word;
        Rational dv = full_rh ? different_combined_rh(w, n) : different_combined(w, n);
        row.differents.push_back(dv);
        if (full_rh) {
            auto active = active_indices(w, n);
            int n2_level = kInf;
            for (const auto& a : active) n2_level = std::min(n2_level, a.delta);
            Rational e_q = Rational(d.e1) *
                           (n2_level == kInf ? Rational(1)
                                             : rpow(p, std::max(n - n2_level, 0)));
            acc += deg / e_q * dv;
        } else {
            acc += dv;
        }
    }
    if (full_rh) {
        // Tame ramification implied by the divisor of the level-0 function at
        // unlisted rational points (exponents matter mod p-1).
        std::map<int, long long> exps;  // point key: -1 = infinity, else a in F_p
        for (const auto& d : pd) {
            if (!d.spec->word.has_teich) continue;
            long long dq = d.spec->word.d;
            if (d.spec->at_infinity) {
                exps[-1] += dq;  // (1/X)^d: zero at infinity, pole at 0
                exps[0] -= dq;
            } else {
                exps[d.spec->at] += dq;  // (X-a)^d: zero at a, pole at infinity
                exps[-1] -= dq;
            }
        }
        for (const auto& [pt, nx] : exps) {
            bool listed = false;
            for (const auto& d : pd)
                if ((pt == -1 && d.spec->at_infinity) ||
                    (pt != -1 && !d.spec->at_infinity && d.spec->at == pt))
                    listed = true;
            if (listed) continue;
            int r = fp::norm(nx, p - 1);
            if (r == 0) continue;
            int e_x = (p - 1) / std::gcd(r, p - 1);
            if (e_x > 1) acc += deg / e_x * (e_x - 1);
        }
    }
    row.two_g_minus_2 = acc / constdeg;
    row.genus = (row.two_g_minus_2 + 2) / 2;
    row.integrality_flag =
        !(boost::multiprecision::denominator(row.two_g_minus_2) == 1 &&
          boost::multiprecision::numerator(row.two_g_minus_2) % 2 == 0);
    return row;
}

}  // namespace

GenusReport genus_sequence(const std::vector<PlaceSpec>& places, int n_max, GenusMode mode,
                           const Rational& g_base) {
    if (places.empty()) throw InsufficientData("genus_sequence needs at least one place");
    int p = places[0].word.p;
    if (p == 2) throw UnsupportedPrime("genus formulas for p = 2 are out of scope");
    std::vector<PlaceData> pd;
    long long tame = 1;
    int f1g = 0;
    int n2g = kInf;
    int ncg = kInf;
    for (const auto& pl : places) {
        if (pl.word.p != p) throw BadModulus("genus_sequence: mixed primes");
        if (!pl.at_infinity && (pl.at < 0 || pl.at >= p))
            throw BadIndex("places must be F_p-rational points or infinity");
        PlaceData d;
        d.spec = &pl;
        if (pl.word.has_teich) {
            auto [e, f] = kummer_ramification(p, pl.word.c, pl.word.d);
            d.e1 = e;
            d.f1 = f;
            tame = std::lcm(tame, static_cast<long long>(e) * f);
            f1g = f1g == 0 ? f : std::gcd(f1g, f);
        }
        RamificationProfile prof = ramification_profile(pl.word, n_max);
        bool has_wild = false;
        for (const auto& [i, k] : pl.word.u)
            if (i < 0 && k.value != 0) has_wild = true;
        d.n2_full = has_wild ? prof.n2 : kInf;
        d.nc = prof.nc;
        n2g = std::min(n2g, d.n2_full);
        ncg = std::min(ncg, d.nc);
        pd.push_back(d);
    }
    if (f1g == 0) f1g = 1;
    if (ncg == kInf) ncg = 0;
    GenusReport rep;
    rep.p = p;
    rep.n_max = n_max;
    rep.mode = mode;
    for (int n = 0; n <= n_max; ++n) {
        if (mode != GenusMode::FullRH)
            rep.paper_literal.push_back(
                genus_row(p, n, pd, tame, f1g, n2g, ncg, g_base, false));
        if (mode != GenusMode::PaperLiteral)
            rep.full_rh.push_back(genus_row(p, n, pd, tame, f1g, n2g, ncg, g_base, true));
    }
    return rep;
}

// --- stability ---------------------------------------------------------------------

std::optional<StabilityResult> stability_check(const std::vector<Rational>& genus_seq,
                                               int p, int n_min, const GeneratorWord* word) {
    if (static_cast<int>(genus_seq.size()) < 4)
        throw InsufficientData("stability_check needs at least 4 genus values");
    // Fit g_n = a x^2 + b x + c with x = p^n through the first three points.
    Rational x0 = rpow(p, n_min), x1 = rpow(p, n_min + 1), x2 = rpow(p, n_min + 2);
    const Rational &g0 = genus_seq[0], &g1 = genus_seq[1], &g2 = genus_seq[2];
    // Divided differences for the quadratic interpolant.
    Rational d01 = (g1 - g0) / (x1 - x0);
    Rational d12 = (g2 - g1) / (x2 - x1);
    StabilityResult res;
    res.a = (d12 - d01) / (x2 - x0);
    res.b = d01 - res.a * (x0 + x1);
    res.c = g0 - res.a * x0 * x0 - res.b * x0;
    for (size_t j = 3; j < genus_seq.size(); ++j) {
        Rational x = rpow(p, n_min + static_cast<int>(j));
        if (res.a * x * x + res.b * x + res.c != genus_seq[j]) return std::nullopt;
    }
    if (word) {
        int hi = n_min + static_cast<int>(genus_seq.size()) - 1;
        int lo = hi - 1;
        auto big_m = [&](int n) -> std::optional<Rational> {
            auto active = active_indices(*word, n);
            if (active.empty()) return std::nullopt;
            Rational best;
            bool first = true;
            for (const auto& a : active) {
                Rational v = Rational(-a.i) * rpow(p, -a.delta);
                if (first || v > best) {
                    best = v;
                    first = false;
                }
            }
            return best;
        };
        auto mlo = big_m(lo), mhi = big_m(hi);
        if (mlo && mhi) {
            Rational a_lo = (p - 1) * *mlo, a_hi = (p - 1) * *mhi;
            Rational t = (a_hi - a_lo) / (rpow(p, -(lo - 1)) - rpow(p, -(hi - 1)));
            Rational cc = a_hi + t * rpow(p, -(hi - 1));
            res.has_smt = true;
            res.smt_consistent = true;
            if (boost::multiprecision::denominator(t) == 1 &&
                boost::multiprecision::numerator(t) >= 0) {
                res.t = boost::multiprecision::numerator(t);
            } else {
                res.smt_consistent = false;
            }
            // Write cc = s / p^m with p coprime to s.
            cpp_int num = boost::multiprecision::numerator(cc);
            cpp_int den = boost::multiprecision::denominator(cc);
            long long m = 0;
            while (den % p == 0) {
                den /= p;
                ++m;
            }
            if (den != 1 || num == 0) {
                res.smt_consistent = false;
            } else {
                while (num % p == 0) {
                    num /= p;
                    --m;
                }
                res.s = num;
                res.m = m;
                cpp_int diff = res.s - res.t;
                if (diff % (p - 1) != 0) res.smt_consistent = false;
            }
        }
    }
    return res;
}

std::optional<StabilityResult> stability_check(const GenusReport& report, int n_min,
                                               const GeneratorWord* word) {
    const auto& rows = report.paper_literal.empty() ? report.full_rh : report.paper_literal;
    std::vector<Rational> seq;
    for (const auto& row : rows)
        if (row.n >= n_min) seq.push_back(row.genus);
    return stability_check(seq, report.p, n_min, word);
}

}  // namespace ztower
