#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ztower/json_io.hpp"
#include "ztower/oracle.hpp"

using namespace ztower;
using nlohmann::json;

namespace {

std::string slurp_or_literal(const std::string& arg) {
    std::ifstream in(arg);
    if (!in.good()) return arg;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json load_spec_json(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw ParseError("cannot open spec file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    return j;
}

// Shortest vector length able to carry every exponent of the word.
int auto_length(const GeneratorWord& w) {
    int l = 2;
    for (const auto& [i, k] : w.u) l = std::max(l, k.mod_exp + 1);
    for (const auto& [i, k] : w.v) l = std::max(l, k.mod_exp + 2);
    return l;
}

GenusMode parse_mode(const std::string& mode, GenusMode fallback) {
    if (mode.empty()) return fallback;
    if (mode == "paper-literal") return GenusMode::PaperLiteral;
    if (mode == "full-rh" || mode == "full-riemann-hurwitz") return GenusMode::FullRH;
    if (mode == "both") return GenusMode::Both;
    throw ParseError("unknown mode: " + mode);
}

int cmd_decompose(int p, const std::string& input, long long precision) {
    std::string text = slurp_or_literal(input);
    GeneratorWord word;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad JSON: ") + e.what());
        }
        GeneratorWord in = word_from_json(j);
        word = reduce_mod_q(reconstruct(in, auto_length(in), precision));
    } else {
        if (p == 0) throw ParseError("-p is required for Witt vector text input");
        word = reduce_mod_q(parse_witt(p, text, precision));
    }
    std::cout << word_to_json(word).dump() << "\n";
    return 0;
}

int cmd_solve(int p, const std::string& input, long long precision, bool as_json) {
    if (p == 0) throw ParseError("-p is required");
    WittVector a = parse_witt(p, slurp_or_literal(input), precision);
    auto y = q_solve(a, precision);
    if (y) {
        if (as_json)
            std::cout << json{{"solvable", true}, {"y", y->str()}}.dump() << "\n";
        else
            std::cout << "solvable: y = " << y->str() << "\n";
        return 0;
    }
    int level = q_solve_obstruction_level(a, precision);
    json out{{"solvable", false}, {"obstruction_level", level}};
    // Documented divergence: the solvability statement admits polar indices
    // divisible by p, but the level-1 equation is then unsolvable in K.
    if (level >= 1 && a.length() >= 2 && a.comp[0].is_one() &&
        a.comp[1].terms().size() == 1) {
        long long i = a.comp[1].valuation();
        if (i < 0 && i % p == 0) {
            oracle::Divergence d{"unit-class solvability clause for polar index divisible by p",
                                 "solvable", "unsolvable at level " + std::to_string(level)};
            out["note"] = json::parse(oracle::divergence_json(d));
            std::cerr << oracle::divergence_json(d) << "\n";
        }
    }
    if (as_json)
        std::cout << out.dump() << "\n";
    else
        std::cout << "unsolvable (obstruction at level " << level << ")\n";
    return 0;
}

int cmd_galois(int p, const std::string& a_text, const std::string& b_text,
               long long precision, bool as_json) {
    if (p == 0) throw ParseError("-p is required");
    bool verdict;
    if (p == 2) {
        if (b_text.empty()) throw ParseError("p = 2 needs two Witt vectors");
        verdict = galois_group_check_p2(parse_witt(2, slurp_or_literal(a_text), precision),
                                        parse_witt(2, slurp_or_literal(b_text), precision));
    } else {
        if (!b_text.empty()) throw ParseError("p > 2 takes a single Witt vector");
        verdict = galois_group_check(parse_witt(p, slurp_or_literal(a_text), precision));
    }
    if (as_json)
        std::cout << json{{"full_group", verdict}}.dump() << "\n";
    else
        std::cout << (verdict ? "full group" : "proper subgroup") << "\n";
    return 0;
}

int cmd_genus(const std::string& specfile, const std::string& mode_flag, bool strict,
              bool as_json) {
    TowerSpec spec = towerspec_from_json(load_spec_json(specfile));
    GenusMode mode = parse_mode(mode_flag, spec.mode);
    GenusReport report = genus_sequence(spec.places, spec.n_max, mode);
    if (as_json) {
        std::cout << genus_report_to_json(report).dump() << "\n";
    } else {
        auto print_rows = [](const char* title, const std::vector<GenusLevelRow>& rows) {
            std::cout << title << "\n";
            for (const auto& row : rows) {
                std::cout << "  n=" << row.n << "  2g-2=" << rational_str(row.two_g_minus_2)
                          << "  g=" << rational_str(row.genus)
                          << (row.integrality_flag ? "  [non-integral]" : "") << "  D=[";
                for (size_t i = 0; i < row.differents.size(); ++i)
                    std::cout << (i ? ", " : "") << rational_str(row.differents[i]);
                std::cout << "]\n";
            }
        };
        if (mode != GenusMode::FullRH) print_rows("paper-literal:", report.paper_literal);
        if (mode != GenusMode::PaperLiteral) print_rows("full-rh:", report.full_rh);
    }
    if (strict) {
        for (const auto& row : report.paper_literal)
            if (row.integrality_flag) return 4;
        for (const auto& row : report.full_rh)
            if (row.integrality_flag) return 4;
    }
    return 0;
}

int cmd_stability(const std::string& specfile, int n_min, bool as_json) {
    TowerSpec spec = towerspec_from_json(load_spec_json(specfile));
    GenusReport report = genus_sequence(spec.places, spec.n_max, GenusMode::PaperLiteral);
    auto res = stability_check(report, n_min, &spec.places.front().word);
    if (!res) {
        if (as_json)
            std::cout << json{{"stable", false}}.dump() << "\n";
        else
            std::cout << "no exact quadratic fit\n";
        return 0;
    }
    json out = stability_to_json(*res);
    out["stable"] = true;
    if (as_json) {
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "g_n = a p^2n + b p^n + c with a=" << rational_str(res->a)
                  << " b=" << rational_str(res->b) << " c=" << rational_str(res->c) << "\n";
        if (res->has_smt)
            std::cout << "s=" << res->s.str() << " m=" << res->m << " t=" << res->t.str()
                      << (res->smt_consistent ? " (consistent)" : " (inconsistent)") << "\n";
    }
    return 0;
}

// --- oracle suites ---------------------------------------------------------------

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::vector<oracle::Divergence> divergences;  // failures
    std::vector<oracle::Divergence> notes;        // documented disagreements
};

SuiteResult suite_ghost(int p, std::uint64_t seed, int trials) {
    SuiteResult r{"ghost-ring-p" + std::to_string(p)};
    for (int l = 1; l <= 4; ++l) {
        if (!oracle::verify_universal_polys(p, l, trials, seed + l)) {
            r.pass = false;
            r.divergences.push_back({"ghost-map ring identity p=" + std::to_string(p) +
                                         " l=" + std::to_string(l),
                                     "exact agreement", "mismatch"});
        }
    }
    return r;
}

SuiteResult suite_conductor() {
    SuiteResult r{"as-conductor-level1"};
    for (int p : {3, 5, 7}) {
        for (long long i : {-1LL, -2LL, -4LL, -5LL}) {
            long long expect = static_cast<long long>(p - 1) * (-i + 1);
            if (-i % p == 0) {
                // Outside both operations' domain ((i, p) = 1): the closed
                // form's value is not the true conductor of the reduced
                // equation, so surface the documented divergence and move on.
                r.divergences.push_back(
                    {"classical-conductor clause, p=" + std::to_string(p) +
                         " i=" + std::to_string(i),
                     "(p-1)(|i|+1) = " + std::to_string(expect),
                     "index not coprime to p: equation reduces to pole " +
                         std::to_string(i / p) + ", conductor " +
                         std::to_string(oracle::as_conductor_oracle(p, i / p))});
                continue;
            }
            Rational formula = different_single_u(p, i, PadicExponent{p, 1, 1}, 1);
            long long got = oracle::as_conductor_oracle(p, i);
            if (formula != expect || got != expect) {
                r.pass = false;
                r.divergences.push_back(
                    {"level-1 different, single polar index i=" + std::to_string(i) +
                         " p=" + std::to_string(p),
                     std::to_string(expect),
                     rational_str(formula) + " vs oracle " + std::to_string(got)});
            }
        }
    }
    return r;
}

SuiteResult suite_recurrence() {
    SuiteResult r{"recurrence-valuation"};
    for (int p : {3, 5})
        for (long long i : {-1LL, -2LL})
            for (int n = 1; n <= 3; ++n) {
                long long formula = y_valuation(p, i, n, 0);
                long long got = oracle::recurrence_valuation_oracle(p, i, n);
                if (formula != got) {
                    r.pass = false;
                    r.divergences.push_back({"solution valuation p=" + std::to_string(p) +
                                                 " i=" + std::to_string(i) +
                                                 " n=" + std::to_string(n),
                                             std::to_string(formula), std::to_string(got)});
                }
            }
    return r;
}

SuiteResult suite_kummer0() {
    SuiteResult r{"kummer-genus-level0"};
    for (int p : {3, 5, 7}) {
        for (long long d : {1LL, 2LL}) {
            if (std::gcd(d, static_cast<long long>(p - 1)) != 1) continue;
            long long g_oracle = oracle::kummer_genus_oracle(p, 1, d);
            GeneratorWord w;
            w.p = p;
            w.has_teich = true;
            w.c = 1;
            w.d = d;
            GenusReport rep = genus_sequence({PlaceSpec{true, 0, w}}, 0, GenusMode::FullRH);
            const Rational& g0 = rep.full_rh[0].genus;
            if (g0 != g_oracle) {
                r.pass = false;
                r.divergences.push_back({"level-0 tame-cover genus p=" + std::to_string(p) +
                                             " d=" + std::to_string(d),
                                         std::to_string(g_oracle), rational_str(g0)});
            }
        }
    }
    return r;
}

SuiteResult suite_level1() {
    SuiteResult r{"level1-genus"};
    GeneratorWord w;
    w.p = 3;
    w.has_teich = true;
    w.c = 1;
    w.d = 1;
    w.u[-1] = PadicExponent{3, 6, 1};
    GenusReport rep = genus_sequence({PlaceSpec{true, 0, w}}, 1, GenusMode::FullRH);
    Rational g_oracle = oracle::as_kummer_genus_oracle(3, 1, 1, -1);
    if (rep.full_rh[1].genus != g_oracle ||
        rep.full_rh[0].genus != oracle::kummer_genus_oracle(3, 1, 1)) {
        r.pass = false;
        r.divergences.push_back({"level-1 genus of the unit-root tower",
                                 rational_str(g_oracle), rational_str(rep.full_rh[1].genus)});
    }
    return r;
}

SuiteResult suite_class_equal(std::uint64_t seed) {
    SuiteResult r{"class-equal-equivalence"};
    const long long N = 40;
    std::mt19937_64 rng(seed);
    std::vector<WittVector> sample;
    for (int s = 0; s < 6; ++s) sample.push_back(oracle::random_unit(3, 2, N, rng));
    for (const auto& x : sample)
        if (!oracle::brute_force_class_equal(x, x, N)) r.pass = false;
    for (const auto& x : sample)
        for (const auto& y : sample) {
            bool xy = oracle::brute_force_class_equal(x, y, N);
            if (xy != oracle::brute_force_class_equal(y, x, N)) r.pass = false;
            if (xy)
                for (const auto& z : sample)
                    if (oracle::brute_force_class_equal(y, z, N) &&
                        !oracle::brute_force_class_equal(x, z, N))
                        r.pass = false;
        }
    // Known pairs: 1+V[T^-3] ~ 1+V[T^-1]; 1+V[T^-1] is not principal.
    WittVector u1 = one_plus_v(1, LaurentSeries::monomial(3, 1, -1, N), 2);
    WittVector u3 = one_plus_v(1, LaurentSeries::monomial(3, 1, -3, N), 2);
    if (!oracle::brute_force_class_equal(u3, u1, N)) r.pass = false;
    if (oracle::brute_force_class_equal(u1, witt_one(3, 2, N), N)) r.pass = false;
    if (!r.pass)
        r.divergences.push_back(
            {"class equality as an equivalence relation", "equivalence", "violated"});
    return r;
}

SuiteResult suite_roundtrip(std::uint64_t seed) {
    SuiteResult r{"decompose-roundtrip"};
    const long long N = 48;
    std::mt19937_64 rng(seed);
    for (int s = 0; s < 20; ++s) {
        WittVector x = oracle::random_unit(3, 3, N, rng);
        GeneratorWord w = reduce_mod_q(x);
        WittVector back = reconstruct(w, 3, N);
        if (!oracle::brute_force_class_equal(x, back, N) || !reduce_mod_q(back).equal(w)) {
            r.pass = false;
            r.divergences.push_back({"canonical word round trip for " + x.str(),
                                     "same class and idempotent word", "mismatch"});
        }
    }
    return r;
}

SuiteResult suite_solvability() {
    SuiteResult r{"solvability-table"};
    const long long N = 60;
    for (int p : {3, 5}) {
        auto u = [&](long long i) {
            return one_plus_v(1, LaurentSeries::monomial(p, 1, i, N), 2);
        };
        for (long long i : {1LL, 2LL, 3LL, 5LL})
            if (!q_solve(u(i), N)) {
                r.pass = false;
                r.divergences.push_back({"solvable regular index i=" + std::to_string(i),
                                         "Some", "None"});
            }
        for (long long i : {0LL, -1LL, -2LL, -4LL})
            if (q_solve(u(i), N)) {
                r.pass = false;
                r.divergences.push_back({"unsolvable index i=" + std::to_string(i), "None",
                                         "Some"});
            }
        for (long long i : {-static_cast<long long>(p), -static_cast<long long>(p) * p}) {
            if (q_solve(u(i), N)) {
                r.pass = false;
                r.divergences.push_back({"ground truth for polar index divisible by p",
                                         "None", "Some"});
            } else {
                // Documented disagreement with the solvability clause for p | i.
                r.notes.push_back({"unit-class solvability clause, p=" + std::to_string(p) +
                                       " i=" + std::to_string(i),
                                   "solvable per the clause", "unsolvable in K (ground truth)"});
            }
        }
    }
    return r;
}

SuiteResult suite_galois() {
    SuiteResult r{"galois-truth-table"};
    const long long N = 40;
    auto expect = [&](bool got, bool want, const std::string& what) {
        if (got != want) {
            r.pass = false;
            r.divergences.push_back(
                {what, want ? "full group" : "proper subgroup", got ? "full" : "proper"});
        }
    };
    expect(galois_group_check(parse_witt(3, "(T; T^-1; 0)", N)), true, "p=3 (T; T^-1; 0)");
    expect(galois_group_check(parse_witt(3, "(T; 0; T^-1)", N)), false, "p=3 (T; 0; T^-1)");
    expect(galois_group_check(parse_witt(3, "(T^2; T^-1)", N)), false, "p=3 (T^2; T^-1)");
    expect(galois_group_check_p2(parse_witt(2, "(1; T; T; 0)", N),
                                 parse_witt(2, "(1; 0; T; 0)", N)),
           true, "p=2 (1,T,T,0) with (1,0,T,0)");
    expect(galois_group_check_p2(parse_witt(2, "(1; 0; T; 0)", N),
                                 parse_witt(2, "(1; 0; T^2; 0)", N)),
           false, "p=2 both first components zero");
    expect(galois_group_check_p2(parse_witt(2, "(1; T; 0; 0)", N),
                                 parse_witt(2, "(1; 0; T; 0)", N)),
           false, "p=2 vanishing second component");
    return r;
}

int cmd_oracle(const std::string& suite, std::uint64_t seed, int trials, bool as_json) {
    std::cout << "seed " << seed << "\n";
    std::vector<SuiteResult> results;
    auto want = [&](const std::string& name) { return suite == "all" || suite == name; };
    for (int p : {2, 3, 5, 7})
        if (want("ghost-ring-p" + std::to_string(p)))
            results.push_back(suite_ghost(p, seed, trials));
    if (want("as-conductor-level1")) results.push_back(suite_conductor());
    if (want("recurrence-valuation")) results.push_back(suite_recurrence());
    if (want("kummer-genus-level0")) results.push_back(suite_kummer0());
    if (want("level1-genus")) results.push_back(suite_level1());
    if (want("class-equal-equivalence")) results.push_back(suite_class_equal(seed));
    if (want("decompose-roundtrip")) results.push_back(suite_roundtrip(seed + 1));
    if (want("solvability-table")) results.push_back(suite_solvability());
    if (want("galois-truth-table")) results.push_back(suite_galois());
    if (results.empty()) throw ParseError("unknown suite: " + suite);
    int passed = 0;
    for (const auto& r : results) {
        for (const auto& d : r.notes) std::cout << oracle::divergence_json(d) << "\n";
        for (const auto& d : r.divergences) std::cout << oracle::divergence_json(d) << "\n";
        if (r.pass) ++passed;
        if (as_json)
            std::cout << json{{"suite", r.name}, {"pass", r.pass}}.dump() << "\n";
    }
    std::cout << (passed == static_cast<int>(results.size()) ? "PASS " : "FAIL ") << passed
              << "/" << results.size() << " suites\n";
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Witt-unit decomposition and tower genus calculator"};
    app.require_subcommand(1);

    int p = 0;
    long long precision = 64;
    bool as_json = false;
    std::string mode_flag;
    bool strict = false;
    std::uint64_t seed = 1;
    int trials = 100;
    int n_min = 2;
    std::string input, input_b, specfile, suite = "all";

    auto* dec = app.add_subcommand("decompose", "canonical generator word of a Witt unit");
    dec->add_option("-p", p, "prime");
    dec->add_option("--precision", precision, "T-adic working precision");
    dec->add_flag("--json", as_json, "machine output");
    dec->add_option("input", input, "Witt vector text, word JSON, or file")->required();

    auto* sol = app.add_subcommand("solve", "solve q(y) = a, reporting obstructions");
    sol->add_option("-p", p, "prime")->required();
    sol->add_option("--precision", precision, "T-adic working precision");
    sol->add_flag("--json", as_json, "machine output");
    sol->add_option("input", input, "Witt vector text or file")->required();

    auto* gal = app.add_subcommand("galois", "Galois-group verdict for towers");
    gal->add_option("-p", p, "prime")->required();
    gal->add_option("--precision", precision, "T-adic working precision");
    gal->add_flag("--json", as_json, "machine output");
    gal->add_option("a", input, "Witt vector text or file")->required();
    gal->add_option("b", input_b, "second Witt vector (p = 2)");

    auto* gen = app.add_subcommand("genus", "genus sequence of a tower spec");
    gen->add_option("specfile", specfile, "tower spec JSON file")->required();
    gen->add_option("--mode", mode_flag, "paper-literal | full-rh | both");
    gen->add_flag("--json", as_json, "machine output");
    gen->add_flag("--strict", strict, "exit 4 when integrality flags are raised");

    auto* sta = app.add_subcommand("stability", "quadratic genus-growth verdict");
    sta->add_option("specfile", specfile, "tower spec JSON file")->required();
    sta->add_option("--n-min", n_min, "first level used for the fit");
    sta->add_flag("--json", as_json, "machine output");

    auto* ora = app.add_subcommand("oracle", "brute-force verification suites");
    ora->add_option("suite", suite, "suite name or 'all'");
    ora->add_option("--seed", seed, "RNG seed (printed)");
    ora->add_option("--trials", trials, "random trials per ghost-ring combination");
    ora->add_flag("--json", as_json, "machine output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (dec->parsed()) return cmd_decompose(p, input, precision);
        if (sol->parsed()) return cmd_solve(p, input, precision, as_json);
        if (gal->parsed()) return cmd_galois(p, input, input_b, precision, as_json);
        if (gen->parsed()) return cmd_genus(specfile, mode_flag, strict, as_json);
        if (sta->parsed()) return cmd_stability(specfile, n_min, as_json);
        if (ora->parsed()) return cmd_oracle(suite, seed, trials, as_json);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
