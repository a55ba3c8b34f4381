#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pelks/verifier/fixtures.hpp"
#include "pelks/verifier/runner.hpp"

namespace v = pelks::verifier;

namespace {

constexpr int kExitConfig = 2;

// A path, or the name of a bundled fixture when no such file exists.
v::PELInstanceConfig load_config(const std::string& where) {
    if (!std::filesystem::exists(where)) {
        if (auto f = v::find_fixture(where)) return f->config();
        throw pelks::ConfigInvalid("config: no file or bundled fixture named '" + where + "'");
    }
    std::ifstream in(where);
    std::stringstream buf;
    buf << in.rdbuf();
    v::json j;
    try {
        j = v::json::parse(buf.str());
    } catch (const v::json::parse_error& e) {
        throw pelks::ConfigInvalid(std::string("config: malformed JSON: ") + e.what());
    }
    return v::parse_config(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pelks: Hodge versus canonical bundle checks on PEL data"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run the checks described by a config");
    std::string config_path, report_path, only;
    std::uint64_t seed = 0;
    int samples = 0;
    bool print_json = false;
    run->add_option("--config", config_path, "config JSON path or bundled fixture name")->required();
    run->add_option("--report", report_path, "write the JSON report here");
    auto* seed_opt = run->add_option("--seed", seed, "override the sampling seed");
    auto* samples_opt = run->add_option("--samples", samples, "override the number of samples");
    auto* only_opt = run->add_option("--only", only, "run only checks matching this glob");
    run->add_flag("--json", print_json, "print the report JSON instead of a table");

    auto* fx = app.add_subcommand("fixtures", "bundled instances");
    fx->require_subcommand(1);
    auto* fx_list = fx->add_subcommand("list", "list bundled fixtures");
    auto* fx_show = fx->add_subcommand("show", "print a fixture config");
    std::string fixture_name;
    fx_show->add_option("name", fixture_name)->required();

    auto* ex = app.add_subcommand("explain", "describe what a check verifies");
    std::string check_name;
    ex->add_option("check", check_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*fx_list) {
        for (const auto& f : v::fixtures()) std::cout << f.name << "\t" << f.summary << "\n";
        return 0;
    }
    if (*fx_show) {
        auto f = v::find_fixture(fixture_name);
        if (!f) {
            std::cerr << "unknown fixture '" << fixture_name << "'\n";
            return kExitConfig;
        }
        std::cout << f->text << "\n";
        return 0;
    }
    if (*ex) {
        auto text = v::explain(check_name);
        if (!text) {
            std::cerr << "unknown check '" << check_name << "'\n";
            return kExitConfig;
        }
        std::cout << check_name << "\n" << *text << "\n";
        return 0;
    }

    try {
        auto config = load_config(config_path);
        v::RunOptions opts;
        if (*seed_opt) opts.seed = seed;
        if (*samples_opt) opts.samples = samples;
        if (*only_opt) opts.only = only;
        const auto result = v::run(config, opts);
        const auto report = v::full_report(result);
        if (!report_path.empty()) {
            std::ofstream out(report_path);
            if (!out) {
                std::cerr << "cannot write report to " << report_path << "\n";
                return kExitConfig;
            }
            out << report.dump(2) << "\n";
        }
        if (print_json) std::cout << report.dump(2) << "\n";
        else std::cout << v::render_table(result);
        return result.exit_code();
    } catch (const pelks::ConfigInvalid& e) {
        std::cerr << "config invalid: " << e.what() << "\n";
        return kExitConfig;
    }
}
