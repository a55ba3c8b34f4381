#pragma once

// Bundled instances. fixtures/*.json in the source tree mirror these; a test
// keeps the two in sync.

#include <optional>
#include <string>
#include <vector>

#include "pelks/verifier/config.hpp"

namespace pelks::verifier {

struct Fixture {
    std::string name;
    std::string summary;
    const char* text;

    PELInstanceConfig config() const { return parse_config(json::parse(text)); }
};

inline const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = {
        {"siegel-C", "type C, n = 1, F = Q, r = 1: Siegel lattices m Z + n, split local places",
         R"json({
  "name": "siegel-C",
  "type": "C",
  "n": 1,
  "r": 1,
  "local_places": [{"q": 2, "split": true}, {"q": 3, "split": true}],
  "archimedean": {"field_model": "rational", "mu_mode": "self-dual-auto"},
  "samples": 20,
  "seed": 1
})json"},
        {"siegel-C-r2", "type C, n = 1, F = Q, r = 2",
         R"json({
  "name": "siegel-C-r2",
  "type": "C",
  "n": 1,
  "r": 2,
  "local_places": [{"q": 3, "split": true}],
  "archimedean": {"field_model": "rational", "mu_mode": "self-dual-auto"},
  "samples": 20,
  "seed": 2
})json"},
        {"quaternion-C", "type C, n = 2, r = 1: ramified quaternion order at q = 2, 3, 5",
         R"json({
  "name": "quaternion-C",
  "type": "C",
  "n": 2,
  "r": 1,
  "local_places": [{"q": 2}, {"q": 3}, {"q": 5}],
  "samples": 20,
  "seed": 3
})json"},
        {"unitary-A", "type A, n = 1, F = Q(i), r = 2, signature (1,1)",
         R"json({
  "name": "unitary-A",
  "type": "A",
  "n": 1,
  "r": 2,
  "signature": [1, 1],
  "local_places": [{"q": 5, "split": true}],
  "global": {"discriminant": -1},
  "archimedean": {"field_model": "gaussian", "mu_mode": "self-dual-auto"},
  "samples": 20,
  "seed": 4
})json"},
        {"basechange-A", "type A, n = 2, r = 2, signature (1,1): quaternion algebra base-changed to Q(i)",
         R"json({
  "name": "basechange-A",
  "type": "A",
  "n": 2,
  "r": 2,
  "signature": [1, 1],
  "local_places": [{"q": 3}, {"q": 5}, {"q": 13, "split": true}],
  "global": {"discriminant": -1},
  "archimedean": {"field_model": "gaussian-quaternion", "mu_mode": "self-dual-auto"},
  "samples": 20,
  "seed": 5
})json"},
    };
    return all;
}

inline std::optional<Fixture> find_fixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return f;
    return std::nullopt;
}

}  // namespace pelks::verifier
