#include "ztower/json_io.hpp"

#include <set>

namespace ztower {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ParseError(where + ": unknown field \"" + it.key() + "\"");
}

json exponents_to_json(const std::map<long long, PadicExponent>& m) {
    json j = json::object();
    for (const auto& [i, k] : m)
        j[std::to_string(i)] = {{"value", k.value}, {"mod_exp", k.mod_exp}};
    return j;
}

std::map<long long, PadicExponent> exponents_from_json(const json& j, int p,
                                                       const std::string& where) {
    std::map<long long, PadicExponent> m;
    if (!j.is_object()) throw ParseError(where + ": expected an object of exponents");
    for (auto it = j.begin(); it != j.end(); ++it) {
        long long i;
        try {
            i = std::stoll(it.key());
        } catch (const std::exception&) {
            throw ParseError(where + ": bad index \"" + it.key() + "\"");
        }
        reject_unknown(it.value(), {"value", "mod_exp"}, where + "[" + it.key() + "]");
        PadicExponent k;
        k.p = p;
        k.mod_exp = it.value().at("mod_exp").get<int>();
        k.value = it.value().at("value").get<long long>();
        if (k.mod_exp < 1 || k.value < 0 || k.value >= k.modulus())
            throw ParseError(where + ": exponent out of range at index " + it.key());
        if (k.value != 0) m.emplace(i, k);
    }
    return m;
}

}  // namespace

std::string rational_str(const Rational& r) {
    std::string num = boost::multiprecision::numerator(r).str();
    BigInt den = boost::multiprecision::denominator(r);
    return den == 1 ? num : num + "/" + den.str();
}

json word_to_json(const GeneratorWord& word) {
    json j;
    j["p"] = word.p;
    if (word.has_teich) {
        j["c"] = word.c;
        j["d"] = word.d;
    }
    j["u"] = exponents_to_json(word.u);
    j["v"] = exponents_to_json(word.v);
    return j;
}

GeneratorWord word_from_json(const json& j) {
    reject_unknown(j, {"p", "c", "d", "u", "v"}, "word");
    GeneratorWord word;
    word.p = j.at("p").get<int>();
    fp::check_prime(word.p);
    if (j.contains("c") || j.contains("d")) {
        word.has_teich = true;
        word.c = fp::norm(j.value("c", 1), word.p);
        word.d = j.value("d", 0LL);
        if (word.c == 0) throw ParseError("word: c must be a unit mod p");
    }
    if (j.contains("u")) word.u = exponents_from_json(j.at("u"), word.p, "word.u");
    if (j.contains("v")) word.v = exponents_from_json(j.at("v"), word.p, "word.v");
    if (!word.v.empty() && word.p != 2) throw ParseError("word: v-part requires p = 2");
    return word;
}

TowerSpec towerspec_from_json(const json& j) {
    reject_unknown(j, {"p", "places", "n_max", "mode", "precision"}, "tower spec");
    TowerSpec spec;
    spec.p = j.at("p").get<int>();
    fp::check_prime(spec.p);
    spec.n_max = j.at("n_max").get<int>();
    if (spec.n_max < 0) throw ParseError("tower spec: n_max must be >= 0");
    std::string mode = j.value("mode", "both");
    if (mode == "paper-literal")
        spec.mode = GenusMode::PaperLiteral;
    else if (mode == "full-rh" || mode == "full-riemann-hurwitz")
        spec.mode = GenusMode::FullRH;
    else if (mode == "both")
        spec.mode = GenusMode::Both;
    else
        throw ParseError("tower spec: unknown mode \"" + mode + "\"");
    spec.precision = j.value("precision", 64LL);
    if (!j.at("places").is_array() || j.at("places").empty())
        throw ParseError("tower spec: places must be a nonempty array");
    for (const auto& pj : j.at("places")) {
        reject_unknown(pj, {"at", "word"}, "place");
        PlaceSpec place;
        const auto& at = pj.at("at");
        if (at.is_string() && at.get<std::string>() == "inf") {
            place.at_infinity = true;
        } else if (at.is_number_integer()) {
            place.at_infinity = false;
            place.at = at.get<int>();
        } else {
            throw ParseError("place: \"at\" must be \"inf\" or an integer");
        }
        place.word = word_from_json(pj.at("word"));
        if (place.word.p != spec.p) throw ParseError("place: word prime differs from spec");
        spec.places.push_back(std::move(place));
    }
    return spec;
}

namespace {

json rows_to_json(const std::vector<GenusLevelRow>& rows) {
    json genus_seq = json::array();
    json two_g = json::array();
    json differents = json::array();
    json flags = json::array();
    for (const auto& row : rows) {
        genus_seq.push_back(rational_str(row.genus));
        two_g.push_back(rational_str(row.two_g_minus_2));
        json per_place = json::array();
        for (const auto& d : row.differents) per_place.push_back(rational_str(d));
        differents.push_back(per_place);
        flags.push_back(row.integrality_flag);
    }
    return {{"genusSeq", genus_seq},
            {"twoGMinus2Seq", two_g},
            {"differentSeq", differents},
            {"integralityFlags", flags}};
}

}  // namespace

json genus_report_to_json(const GenusReport& report) {
    json j;
    j["p"] = report.p;
    j["n_max"] = report.n_max;
    j["mode"] = report.mode == GenusMode::PaperLiteral ? "paper-literal"
                : report.mode == GenusMode::FullRH     ? "full-rh"
                                                       : "both";
    if (report.mode != GenusMode::FullRH) j["paper_literal"] = rows_to_json(report.paper_literal);
    if (report.mode != GenusMode::PaperLiteral) j["full_rh"] = rows_to_json(report.full_rh);
    return j;
}

json stability_to_json(const StabilityResult& s) {
    json j;
    j["a"] = rational_str(s.a);
    j["b"] = rational_str(s.b);
    j["c"] = rational_str(s.c);
    if (s.has_smt) {
        j["s"] = s.s.str();
        j["m"] = s.m;
        j["t"] = s.t.str();
        j["smt_consistent"] = s.smt_consistent;
    }
    return j;
}

}  // namespace ztower
