#include "cantorlab/config.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "cantorlab/errors.hpp"

namespace cantorlab {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

const Json& field(const Json& obj, const std::string& name, const std::string& where) {
    if (!obj.is_object() || !obj.contains(name)) fail(where, "missing field '" + name + "'");
    return obj.at(name);
}

double number_at(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

Interval interval_at(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) fail(where, "expected [lo, hi]");
    return Interval{number_at(j[0], where), number_at(j[1], where)};
}

Branch branch_from_config(const Json& j, const std::string& where) {
    const std::string family = field(j, "family", where).get<std::string>();
    const Interval dom = interval_at(field(j, "domain", where), where + ".domain");
    if (family == "composite") {
        const Json& parts = field(j, "parts", where);
        if (!parts.is_array() || parts.size() < 2) fail(where, "composite needs >= 2 parts");
        Branch acc = branch_from_config(parts.back(), where + ".parts");
        for (std::size_t i = parts.size() - 1; i-- > 0;)
            acc = Branch::composed(branch_from_config(parts[i], where + ".parts"), acc);
        return acc;
    }
    const Json& cj = field(j, "coeffs", where);
    if (!cj.is_array()) fail(where, "coeffs must be an array");
    std::vector<double> c;
    for (const auto& v : cj) c.push_back(number_at(v, where + ".coeffs"));
    if (family == "affine") {
        if (c.size() != 2) fail(where, "affine needs coeffs [p, q]");
        return Branch::affine(c[0], c[1], dom);
    }
    if (family == "moebius") {
        if (c.size() != 4) fail(where, "moebius needs coeffs [a, b, c, d]");
        return Branch::moebius(c[0], c[1], c[2], c[3], dom);
    }
    if (family == "perturbed_affine") {
        if (c.size() != 3) fail(where, "perturbed_affine needs coeffs [p, q, eps]");
        return Branch::perturbed_affine(c[0], c[1], c[2], dom);
    }
    fail(where, "unknown branch family '" + family + "'");
}

Json branch_to_config(const Branch& br) {
    Json j;
    switch (br.family()) {
    case Branch::Family::Affine: j["family"] = "affine"; break;
    case Branch::Family::Moebius: j["family"] = "moebius"; break;
    case Branch::Family::PerturbedAffine: j["family"] = "perturbed_affine"; break;
    case Branch::Family::Composite: j["family"] = "composite"; break;
    }
    j["domain"] = {br.domain().lo, br.domain().hi};
    if (br.family() == Branch::Family::Composite) {
        Json parts = Json::array();
        for (const Branch& p : br.parts()) parts.push_back(branch_to_config(p));
        j["parts"] = std::move(parts);
    } else {
        j["coeffs"] = br.coeffs();
    }
    return j;
}

} // namespace

CantorSystem system_from_config(const Json& def, const std::string& name) {
    if (!def.is_object()) fail(name, "system definition must be an object");
    if (def.contains("generator")) {
        const std::string g = def.at("generator").get<std::string>();
        if (g == "middle_alpha") return middle_alpha(config_number(def, "alpha", name));
        if (g == "two_ratio")
            return two_ratio(config_number(def, "r1", name), config_number(def, "r2", name));
        if (g == "gauss_digits") {
            const Json& dj = field(def, "digits", name);
            if (!dj.is_array() || dj.empty()) fail(name, "digits must be a nonempty array");
            std::vector<int> digits;
            for (const auto& v : dj) {
                if (!v.is_number_integer()) fail(name, "digits must be integers");
                digits.push_back(v.get<int>());
            }
            return gauss_digits(digits);
        }
        if (g == "perturbed")
            return perturbed(system_from_config(field(def, "base", name), name + ".base"),
                             config_number(def, "eps", name));
        fail(name, "unknown generator '" + g + "'");
    }

    const std::string sys_name = config_string_or(def, "name", name, name);
    const Json& kj = field(def, "alphabet", name);
    if (!kj.is_number_integer()) fail(name, "alphabet must be an integer");
    const int k = kj.get<int>();

    const Json& tj = field(def, "transitions", name);
    if (!tj.is_array() || tj.empty()) fail(name, "transitions must be a nonempty array");
    std::vector<std::pair<Sym, Sym>> transitions;
    for (const auto& t : tj) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_number_integer())
            fail(name, "each transition must be [from, to]");
        transitions.emplace_back(t[0].get<Sym>(), t[1].get<Sym>());
    }

    const Json& bj = field(def, "bases", name);
    if (!bj.is_array() || static_cast<int>(bj.size()) != k)
        fail(name, "bases must list one [lo, hi] per letter");
    std::vector<Interval> bases;
    for (const auto& iv : bj) bases.push_back(interval_at(iv, name + ".bases"));

    const Json& brj = field(def, "branches", name);
    if (!brj.is_array()) fail(name, "branches must be an array");
    std::vector<std::pair<std::pair<Sym, Sym>, Branch>> branches;
    for (const auto& e : brj) {
        const std::string where = name + ".branches";
        const Json& fj = field(e, "from", where);
        const Json& oj = field(e, "to", where);
        if (!fj.is_number_integer() || !oj.is_number_integer())
            fail(where, "'from' and 'to' must be integers");
        branches.emplace_back(std::make_pair(fj.get<Sym>(), oj.get<Sym>()),
                              branch_from_config(e, where));
    }

    return CantorSystem::create(sys_name, Subshift(k, transitions), std::move(bases),
                                std::move(branches));
}

Json system_to_config(const CantorSystem& sys) {
    Json j;
    j["name"] = sys.name();
    j["alphabet"] = sys.alphabet_size();
    Json transitions = Json::array();
    Json branches = Json::array();
    for (const auto& [a0, a1] : sys.shift().allowed_pairs()) {
        transitions.push_back({a0, a1});
        Json b = branch_to_config(sys.branch(a0, a1));
        b["from"] = a0;
        b["to"] = a1;
        branches.push_back(std::move(b));
    }
    j["transitions"] = std::move(transitions);
    Json bases = Json::array();
    for (const Interval& iv : sys.bases()) bases.push_back({iv.lo, iv.hi});
    j["bases"] = std::move(bases);
    j["branches"] = std::move(branches);
    return j;
}

const CantorSystem& ExperimentConfig::system(const std::string& name) const {
    const auto it = systems.find(name);
    if (it == systems.end()) throw ConfigError("unknown system '" + name + "'");
    return it->second;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig cfg;
    cfg.raw_text = text;
    cfg.hash = fnv1a64(text);
    try {
        cfg.root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!cfg.root.is_object()) throw ConfigError("config root must be an object");
    if (cfg.root.contains("systems")) {
        const Json& sj = cfg.root.at("systems");
        if (!sj.is_object()) throw ConfigError("'systems' must be an object of definitions");
        for (const auto& [name, def] : sj.items()) {
            try {
                cfg.systems.emplace(name, system_from_config(def, "systems." + name));
            } catch (const ConfigError&) {
                throw;
            } catch (const Error& e) {
                throw ConfigError("systems." + name + ": " + e.what());
            }
        }
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

double config_number(const Json& obj, const std::string& field_name, const std::string& where) {
    return number_at(field(obj, field_name, where), where + "." + field_name);
}

double config_number_or(const Json& obj, const std::string& field_name, double fallback,
                        const std::string& where) {
    if (!obj.is_object() || !obj.contains(field_name)) return fallback;
    return number_at(obj.at(field_name), where + "." + field_name);
}

std::string config_string_or(const Json& obj, const std::string& field_name,
                             const std::string& fallback, const std::string& where) {
    if (!obj.is_object() || !obj.contains(field_name)) return fallback;
    const Json& j = obj.at(field_name);
    if (!j.is_string()) fail(where + "." + field_name, "expected a string");
    return j.get<std::string>();
}

std::vector<double> config_descending_scales(const Json& obj, const std::string& field_name,
                                             const std::string& where) {
    const Json& j = field(obj, field_name, where);
    const std::string at = where + "." + field_name;
    if (!j.is_array() || j.empty()) fail(at, "expected a nonempty array of scales");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number_at(v, at));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out[i] > 0.0)) fail(at, "scales must be positive");
        if (i > 0 && !(out[i] < out[i - 1])) fail(at, "scales must be sorted strictly descending");
    }
    return out;
}

} // namespace cantorlab
