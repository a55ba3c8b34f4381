#pragma once

// Runs a planned check list and renders the report.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pelks/verifier/checks.hpp"
#include "pelks/verifier/config.hpp"

namespace pelks::verifier {

inline constexpr const char* kSchemaVersion = "1.0";

struct RunOptions {
    std::optional<std::uint64_t> seed = std::nullopt;
    std::optional<int> samples = std::nullopt;
    std::optional<std::string> only = std::nullopt;  // glob over check names
};

struct RunResult {
    PELInstanceConfig config;
    std::vector<CheckReport> reports;  // sorted by name
    int passed = 0, failed = 0, skipped = 0;

    int exit_code() const { return failed > 0 ? 1 : 0; }
};

inline bool selected(const PELInstanceConfig& c, const RunOptions& o, const std::string& name) {
    if (c.checks) {
        bool hit = false;
        for (const auto& g : *c.checks) hit = hit || glob_match(g, name);
        if (!hit) return false;
    }
    return !o.only || glob_match(*o.only, name);
}

inline RunResult run(PELInstanceConfig c, const RunOptions& o = {}) {
    if (o.seed) c.seed = *o.seed;
    if (o.samples) {
        if (*o.samples < 1) throw ConfigInvalid("samples: must be positive");
        c.samples = *o.samples;
    }
    RunResult out;
    out.config = c;
    if (c.checks && c.checks->empty()) return out;
    for (const auto& spec : plan(c)) {
        if (!selected(c, o, spec.name)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CheckReport r;
        try {
            r = spec.run();
        } catch (const std::exception& ex) {
            r = CheckReport{};
            r.name = spec.name;
            r.status = Status::fail;
            r.detail = std::string("error: ") + ex.what();
        }
        r.name = spec.name;
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out.reports.push_back(std::move(r));
    }
    std::sort(out.reports.begin(), out.reports.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
    for (const auto& r : out.reports) {
        if (r.status == Status::pass) ++out.passed;
        else if (r.status == Status::fail) ++out.failed;
        else ++out.skipped;
    }
    return out;
}

inline json report_json(const CheckReport& r) {
    json j;
    j["name"] = r.name;
    j["status"] = to_string(r.status);
    j["computed"] = r.computed;
    j["expected"] = json::array();
    for (const auto& e : r.expected)
        j["expected"].push_back({{"quantity", e.quantity}, {"value", e.value}, {"provenance", to_string(e.provenance)}});
    j["tolerance"] = r.tolerance;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

// Deterministic body: everything except wall-clock timing.
inline json report_body(const RunResult& res) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["instance"] = {{"name", res.config.name}, {"seed", res.config.seed}, {"samples", res.config.samples}};
    j["checks"] = json::array();
    for (const auto& r : res.reports) j["checks"].push_back(report_json(r));
    j["summary"] = {{"total", res.reports.size()},
                    {"passed", res.passed},
                    {"failed", res.failed},
                    {"skipped", res.skipped},
                    {"status", res.failed > 0 ? "fail" : "pass"}};
    return j;
}

inline json full_report(const RunResult& res) {
    json j = report_body(res);
    json timing = json::object();
    for (const auto& r : res.reports) timing[r.name] = r.elapsed_ms;
    j["timing"] = {{"elapsed_ms", timing}};
    return j;
}

inline std::string render_table(const RunResult& res) {
    std::ostringstream os;
    std::size_t width = 5;
    for (const auto& r : res.reports) width = std::max(width, r.name.size());
    os << std::left << std::setw(static_cast<int>(width) + 2) << "check" << std::setw(9) << "status" << "ms\n";
    for (const auto& r : res.reports) {
        os << std::setw(static_cast<int>(width) + 2) << r.name << std::setw(9) << to_string(r.status) << std::fixed
           << std::setprecision(1) << r.elapsed_ms;
        if (!r.detail.empty()) os << "  " << r.detail;
        os << "\n";
    }
    os << res.passed << " passed, " << res.failed << " failed, " << res.skipped << " skipped\n";
    return os.str();
}

}  // namespace pelks::verifier
