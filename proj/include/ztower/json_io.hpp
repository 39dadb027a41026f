#pragma once

#include <string>

#include "json.hpp"
#include "ztower/ramgen.hpp"

namespace ztower {

// Exact rational as text: "num/den", or just "num" when den == 1.
std::string rational_str(const Rational& r);

// GeneratorWord wire format:
// {"p":3,"c":2,"d":1,"u":{"-1":{"value":4,"mod_exp":3}},"v":{}}
// ("c"/"d" only when the Teichmuller part is present; field names fixed).
nlohmann::json word_to_json(const GeneratorWord& word);
GeneratorWord word_from_json(const nlohmann::json& j);

struct TowerSpec {
    int p = 0;
    std::vector<PlaceSpec> places;
    int n_max = 0;
    GenusMode mode = GenusMode::Both;
    long long precision = 64;
};

// {"p":3,"places":[{"at":"inf","word":{...}}],"n_max":6,"mode":"both"};
// unknown fields are rejected.
TowerSpec towerspec_from_json(const nlohmann::json& j);

nlohmann::json genus_report_to_json(const GenusReport& report);
nlohmann::json stability_to_json(const StabilityResult& s);

}  // namespace ztower
