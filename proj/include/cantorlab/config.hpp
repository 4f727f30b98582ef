#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cantorlab/system.hpp"

namespace cantorlab {

using Json = nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes);

// System definition as a config object: either a generator invocation
//   {"generator": "middle_alpha", "alpha": ...}
//   {"generator": "two_ratio", "r1": ..., "r2": ...}
//   {"generator": "gauss_digits", "digits": [...]}
//   {"generator": "perturbed", "base": <definition>, "eps": ...}
// or an explicit branch list
//   {"name": ..., "alphabet": k, "transitions": [[a,b],...],
//    "bases": [[lo,hi],...],
//    "branches": [{"from":a,"to":b,"family":...,"coeffs":[...],
//                  "domain":[lo,hi], "parts": [...]} ...]}.
// Emission uses shortest round-trip doubles, so a re-parsed system
// reproduces the original branches exactly (composite chains re-fold any
// adjacent affine/moebius stages, which evaluates identically).
CantorSystem system_from_config(const Json& def, const std::string& name);
Json system_to_config(const CantorSystem& sys);

struct ExperimentConfig {
    Json root;
    std::map<std::string, CantorSystem> systems;
    std::string raw_text;
    std::uint64_t hash = 0; // FNV-1a of the raw config bytes

    const CantorSystem& system(const std::string& name) const;
};

// Parse and validate the top level: an object, optionally carrying a
// "systems" map, each entry of which is constructed and validated here.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

// Field access with path-qualified diagnostics.
double config_number(const Json& obj, const std::string& field, const std::string& where);
double config_number_or(const Json& obj, const std::string& field, double fallback,
                        const std::string& where);
std::string config_string_or(const Json& obj, const std::string& field,
                             const std::string& fallback, const std::string& where);
// A nonempty list of positive numbers sorted strictly descending (scale
// lists are always coarse to fine).
std::vector<double> config_descending_scales(const Json& obj, const std::string& field,
                                             const std::string& where);

} // namespace cantorlab
