#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ztower/qdecompose.hpp"

namespace ztower {

using Rational = boost::multiprecision::cpp_rational;

// Ramification invariants of the tower cut out by a generator word at one
// place: e1/f1 describe the level-0 Kummer part, n1/n2 the p-adic depths of
// the constant (i = 0) and wild (i < 0) exponents, nu the unramified excess,
// nc the constant-extension depth (computed as nu).
struct RamificationProfile {
    int e1 = 1;
    int f1 = 1;
    std::optional<int> n1;  // nullopt = infinity (no u_0 part)
    int n2 = 0;
    int nu = 0;
    int nc = 0;
};

// Level-0 Kummer extension y^(p-1) = c T^d: (e, f).
std::pair<int, int> kummer_ramification(int p, int c, long long d);

// Different valuation of the Kummer extension: p-1 - gcd(-d, m, p-1) with m
// the largest divisor of p-1 such that c is an m-th power in F_p^x; d is
// normalized into (-(p-1), 0] first.
int kummer_different(int p, int c, long long d);

// Closed-form valuation of the level-n solution: (sum_{j=1}^{n-1-nu}
// (p^(2j) - p^(2j-1)) + 1) * i.
long long y_valuation(int p, long long i, int n, int nu);

// Different valuation of the single-u tower u_i^{k_i} at level n.
Rational different_single_u(int p, long long i, const PadicExponent& k_i, int n);

// Different valuation for a full word at level n, evaluating the displayed
// combined formula (tame gcd term plus dominant wild index).
Rational different_combined(const GeneratorWord& word, int n);

// Transitivity-chain variant used in full-Riemann-Hurwitz mode: the wild
// conductor is computed over the Kummer subfield (pole orders scale by e1)
// and the tame different is inflated by the wild degree.
Rational different_combined_rh(const GeneratorWord& word, int n);

RamificationProfile ramification_profile(const GeneratorWord& word, int n);

// --- genus sequences ----------------------------------------------------------

struct PlaceSpec {
    bool at_infinity = true;
    int at = 0;  // rational point in F_p when not at infinity
    GeneratorWord word;
};

enum class GenusMode { PaperLiteral, FullRH, Both };

struct GenusLevelRow {
    int n = 0;
    std::vector<Rational> differents;  // per place, in input order
    Rational two_g_minus_2;
    Rational genus;
    bool integrality_flag = false;  // set when 2g-2 is not an even integer
};

struct GenusReport {
    int p = 0;
    int n_max = 0;
    GenusMode mode = GenusMode::PaperLiteral;
    std::vector<GenusLevelRow> paper_literal;  // filled unless mode == FullRH
    std::vector<GenusLevelRow> full_rh;        // filled unless mode == PaperLiteral
};

GenusReport genus_sequence(const std::vector<PlaceSpec>& places, int n_max,
                           GenusMode mode, const Rational& g_base = Rational(0));

// --- stability -----------------------------------------------------------------

struct StabilityResult {
    Rational a, b, c;  // g_n = a p^(2n) + b p^n + c, exactly
    bool has_smt = false;
    boost::multiprecision::cpp_int s;
    long long m = 0;
    boost::multiprecision::cpp_int t;
    bool smt_consistent = false;  // p∤s, s ≡ t mod (p-1), t a nonnegative integer
};

// Fit an exact quadratic in p^n through genus values g_{n_min}, g_{n_min+1},
// ... (paper-literal sequence); None when no exact fit. When `word` is given
// the (s, m, t) invariants of the stability criterion are derived from its
// exponents at the deepest two levels.
std::optional<StabilityResult> stability_check(const std::vector<Rational>& genus_seq,
                                               int p, int n_min,
                                               const GeneratorWord* word = nullptr);
std::optional<StabilityResult> stability_check(const GenusReport& report, int n_min,
                                               const GeneratorWord* word = nullptr);

}  // namespace ztower
