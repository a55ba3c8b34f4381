#pragma once

// Instance configuration: strict JSON parsing (unknown keys rejected) with
// field-level diagnostics.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pelks/domains.hpp"
#include "pelks/errors.hpp"
#include "pelks/pel_modules.hpp"

namespace pelks::verifier {

using json = nlohmann::json;
using domains::cd;
using domains::Mat;

struct LocalPlaceConfig {
    std::uint32_t q = 3;
    int f = 1;
    int s = 0;
    bool split = false;
};

struct ArchimedeanConfig {
    std::string field_model = "gaussian";  // rational | gaussian | gaussian-quaternion | custom
    std::string mu_mode = "self-dual-auto";  // self-dual-auto | explicit
    std::optional<Mat> mu;
    std::vector<Mat> algebra_basis;  // custom only
    std::vector<std::vector<std::vector<long long>>> structure_constants;  // custom only
    std::optional<Mat> mu0;  // custom only
};

struct Tolerances {
    int local_precision = 16;
    double numeric_epsilon = 1e-8;
};

struct PELInstanceConfig {
    std::string name = "unnamed";
    pel::PelType type = pel::PelType::A;
    int n = 1;
    int r = 2;
    int p = 1;
    int q = 1;
    std::vector<LocalPlaceConfig> local_places;
    std::optional<long long> global_discriminant;  // squarefree d < 0, type A only
    std::optional<ArchimedeanConfig> archimedean;
    int samples = 20;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    std::optional<std::vector<std::string>> checks;  // globs; absent means all
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
    throw ConfigInvalid(path + ": " + msg);
}

inline void only_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline long long get_int(const json& obj, const std::string& path, const std::string& key, long long lo, long long hi) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
    long long x = v.get<long long>();
    if (x < lo || x > hi) fail(join(path, key), "value " + std::to_string(x) + " out of range");
    return x;
}

inline cd parse_complex(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    fail(path, "expected a number or a [re, im] pair");
}

inline Mat parse_matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of rows");
    const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
    if (cols == 0) fail(path, "rows must be non-empty arrays");
    Mat m(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array() || v[i].size() != cols) fail(path, "ragged matrix");
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                parse_complex(v[i][j], path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return m;
}

inline json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j).imag() == 0.0) row.push_back(m(i, j).real());
            else row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace detail

inline PELInstanceConfig parse_config(const json& j) {
    using namespace detail;
    only_keys(j, "", {"name", "type", "n", "r", "signature", "local_places", "global", "archimedean", "samples",
                      "seed", "tolerances", "checks"});
    PELInstanceConfig c;
    if (j.contains("name")) {
        if (!j["name"].is_string()) fail("name", "expected a string");
        c.name = j["name"].get<std::string>();
    }
    if (!j.contains("type")) fail("type", "missing");
    if (j["type"] == "A") c.type = pel::PelType::A;
    else if (j["type"] == "C") c.type = pel::PelType::C;
    else fail("type", "expected \"A\" or \"C\"");
    if (!j.contains("n")) fail("n", "missing");
    if (!j.contains("r")) fail("r", "missing");
    c.n = static_cast<int>(get_int(j, "", "n", 1, 8));
    c.r = static_cast<int>(get_int(j, "", "r", 1, 16));

    if (c.type == pel::PelType::A) {
        if (!j.contains("signature")) fail("signature", "type A needs a signature [p, q]");
        const auto& s = j["signature"];
        if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer())
            fail("signature", "expected [p, q]");
        c.p = s[0].get<int>();
        c.q = s[1].get<int>();
        if (c.p < 0 || c.q < 0 || c.p + c.q != c.r) fail("signature", "need p, q >= 0 with p + q = r");
        if (c.r % c.n != 0) fail("n", "type A needs n | r");
    } else {
        if (j.contains("signature")) fail("signature", "type C takes no signature");
        c.p = c.r;
        c.q = 0;
        if ((2 * c.r) % c.n != 0) fail("n", "type C needs n | 2r");
    }

    if (j.contains("local_places")) {
        const auto& lp = j["local_places"];
        if (!lp.is_array()) fail("local_places", "expected an array");
        for (std::size_t k = 0; k < lp.size(); ++k) {
            const std::string path = "local_places[" + std::to_string(k) + "]";
            only_keys(lp[k], path, {"q", "f", "s", "split"});
            if (!lp[k].contains("q")) fail(path + ".q", "missing");
            LocalPlaceConfig place;
            place.q = static_cast<std::uint32_t>(get_int(lp[k], path, "q", 2, 1 << 12));
            if (lp[k].contains("f")) place.f = static_cast<int>(get_int(lp[k], path, "f", 1, c.n));
            if (lp[k].contains("s")) place.s = static_cast<int>(get_int(lp[k], path, "s", 0, c.n - 1));
            if (lp[k].contains("split")) {
                if (!lp[k]["split"].is_boolean()) fail(path + ".split", "expected a boolean");
                place.split = lp[k]["split"].get<bool>();
            }
            if (c.type == pel::PelType::C && place.s != 0) fail(path + ".s", "type C uses s = 0");
            try {
                cyclic::make_descriptor(c.n, place.q, place.f, place.s, 4, place.split);
            } catch (const Error& e) {
                fail(path, e.what());
            }
            if (c.n == 1 && !place.split) fail(path + ".split", "with n = 1 every place splits; set \"split\": true");
            c.local_places.push_back(place);
        }
    }

    if (j.contains("global")) {
        only_keys(j["global"], "global", {"discriminant"});
        if (c.type != pel::PelType::A) fail("global", "the rank lemma applies to type A");
        if (!j["global"].contains("discriminant")) fail("global.discriminant", "missing");
        long long d = get_int(j["global"], "global", "discriminant", -10000, -1);
        try {
            pel::QuadraticRing::make(d);
        } catch (const std::exception& e) {
            fail("global.discriminant", e.what());
        }
        c.global_discriminant = d;
    }

    if (j.contains("archimedean") && !j["archimedean"].is_null()) {
        const auto& a = j["archimedean"];
        only_keys(a, "archimedean", {"field_model", "mu_mode", "mu", "algebra_basis", "structure_constants", "mu0"});
        ArchimedeanConfig ac;
        if (a.contains("field_model")) {
            if (!a["field_model"].is_string()) fail("archimedean.field_model", "expected a string");
            ac.field_model = a["field_model"].get<std::string>();
        }
        if (a.contains("mu_mode")) {
            if (!a["mu_mode"].is_string()) fail("archimedean.mu_mode", "expected a string");
            ac.mu_mode = a["mu_mode"].get<std::string>();
        }
        if (ac.mu_mode != "self-dual-auto" && ac.mu_mode != "explicit")
            fail("archimedean.mu_mode", "expected \"self-dual-auto\" or \"explicit\"");
        if (ac.mu_mode == "explicit") {
            if (!a.contains("mu")) fail("archimedean.mu", "explicit mode needs mu");
            ac.mu = parse_matrix(a["mu"], "archimedean.mu");
            if (ac.mu->rows() != c.n || ac.mu->cols() != c.n) fail("archimedean.mu", "mu must be n x n");
        } else if (a.contains("mu")) {
            fail("archimedean.mu", "only allowed with mu_mode \"explicit\"");
        }
        const bool custom = ac.field_model == "custom";
        if (!custom && (a.contains("algebra_basis") || a.contains("structure_constants") || a.contains("mu0")))
            fail("archimedean", "algebra_basis, structure_constants and mu0 are only allowed for field_model \"custom\"");
        if (ac.field_model == "rational") {
            if (c.type != pel::PelType::C || c.n != 1) fail("archimedean.field_model", "\"rational\" needs type C, n = 1");
        } else if (ac.field_model == "gaussian") {
            if (c.type != pel::PelType::A || c.n != 1) fail("archimedean.field_model", "\"gaussian\" needs type A, n = 1");
        } else if (ac.field_model == "gaussian-quaternion") {
            if (c.type != pel::PelType::A || c.n != 2) fail("archimedean.field_model", "\"gaussian-quaternion\" needs type A, n = 2");
        } else if (custom) {
            if (!a.contains("algebra_basis") || !a["algebra_basis"].is_array())
                fail("archimedean.algebra_basis", "custom model needs a list of n x n matrices");
            for (std::size_t k = 0; k < a["algebra_basis"].size(); ++k)
                ac.algebra_basis.push_back(
                    parse_matrix(a["algebra_basis"][k], "archimedean.algebra_basis[" + std::to_string(k) + "]"));
            if (a.contains("structure_constants")) {
                try {
                    ac.structure_constants = a["structure_constants"].get<std::vector<std::vector<std::vector<long long>>>>();
                } catch (const json::exception&) {
                    fail("archimedean.structure_constants", "expected a k x k x k integer array");
                }
            }
            if (a.contains("mu0")) ac.mu0 = parse_matrix(a["mu0"], "archimedean.mu0");
        } else {
            fail("archimedean.field_model", "unknown model \"" + ac.field_model + "\"");
        }
        if (c.type == pel::PelType::A && c.p != c.q)
            fail("signature", "archimedean checks need the balanced signature p = q");
        if (c.type == pel::PelType::C && c.n != 1 && !custom)
            fail("archimedean", "type C archimedean checks are implemented for n = 1");
        c.archimedean = ac;
    }

    if (j.contains("samples")) c.samples = static_cast<int>(get_int(j, "", "samples", 1, 100000));
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tolerances")) {
        only_keys(j["tolerances"], "tolerances", {"local_precision", "numeric_epsilon"});
        if (j["tolerances"].contains("local_precision"))
            c.tolerances.local_precision = static_cast<int>(get_int(j["tolerances"], "tolerances", "local_precision", 4, 256));
        if (j["tolerances"].contains("numeric_epsilon")) {
            const auto& e = j["tolerances"]["numeric_epsilon"];
            if (!e.is_number() || e.get<double>() <= 0) fail("tolerances.numeric_epsilon", "expected a positive number");
            c.tolerances.numeric_epsilon = e.get<double>();
        }
    }
    if (j.contains("checks")) {
        if (!j["checks"].is_array()) fail("checks", "expected an array of names or globs");
        std::vector<std::string> names;
        for (const auto& x : j["checks"]) {
            if (!x.is_string()) fail("checks", "entries must be strings");
            names.push_back(x.get<std::string>());
        }
        c.checks = names;
    }
    return c;
}

inline json to_json(const PELInstanceConfig& c) {
    json j;
    j["name"] = c.name;
    j["type"] = pel::to_string(c.type);
    j["n"] = c.n;
    j["r"] = c.r;
    if (c.type == pel::PelType::A) j["signature"] = {c.p, c.q};
    j["local_places"] = json::array();
    for (const auto& p : c.local_places)
        j["local_places"].push_back({{"q", p.q}, {"f", p.f}, {"s", p.s}, {"split", p.split}});
    if (c.global_discriminant) j["global"] = {{"discriminant", *c.global_discriminant}};
    if (c.archimedean) {
        json a;
        a["field_model"] = c.archimedean->field_model;
        a["mu_mode"] = c.archimedean->mu_mode;
        if (c.archimedean->mu) a["mu"] = detail::matrix_to_json(*c.archimedean->mu);
        if (c.archimedean->field_model == "custom") {
            a["algebra_basis"] = json::array();
            for (const auto& m : c.archimedean->algebra_basis) a["algebra_basis"].push_back(detail::matrix_to_json(m));
            if (!c.archimedean->structure_constants.empty()) a["structure_constants"] = c.archimedean->structure_constants;
            if (c.archimedean->mu0) a["mu0"] = detail::matrix_to_json(*c.archimedean->mu0);
        }
        j["archimedean"] = a;
    }
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["tolerances"] = {{"local_precision", c.tolerances.local_precision},
                       {"numeric_epsilon", c.tolerances.numeric_epsilon}};
    if (c.checks) j["checks"] = *c.checks;
    return j;
}

}  // namespace pelks::verifier
