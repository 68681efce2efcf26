// polariton <scenario> [-c config] [--set key=value]... [--out DIR] [--quiet]
//
// Exit codes: 0 success, 1 usage error, 2 invalid input, 3 solver instability.

#include "polariton/error.hpp"
#include "polariton/scenarios.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit { ok = 0, usage = 1, invalid = 2, unstable = 3 };

std::string scenario_list()
{
    std::string s;
    for (const auto& n : polariton::scenario_names())
        s += (s.empty() ? "" : ", ") + n;
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Maxwell-Bloch propagation, pump-probe spectra and cavity polaritons"};
    std::string scenario;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    bool quiet = false;
    bool list_keys = false;

    app.add_option("scenario", scenario, "one of: " + scenario_list());
    app.add_option("-c,--config", config_path, "key = value configuration file");
    app.add_option("--set", overrides, "override one parameter, key=value (repeatable)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_flag("-q,--quiet", quiet, "suppress progress lines on stderr");
    app.add_flag("--list-keys", list_keys, "print every configuration key with its default");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    if (list_keys) {
        for (const auto& k : polariton::config::keys())
            std::cout << k.key << " = " << k.default_value << '\n';
        return ok;
    }
    if (scenario.empty()) {
        std::cerr << "error: missing scenario (" << scenario_list() << ")\n";
        return usage;
    }
    if (!polariton::is_scenario(scenario)) {
        std::cerr << "error: unknown scenario '" << scenario << "' (" << scenario_list() << ")\n";
        return usage;
    }

    polariton::RunOptions opts;
    opts.out_dir = out_dir;
    if (!quiet)
        opts.progress = [](const std::string& msg) { std::cerr << "[polariton] " << msg << '\n'; };

    try {
        std::optional<std::filesystem::path> cfg;
        if (!config_path.empty())
            cfg = config_path;
        const auto manifest = polariton::run_scenario(scenario, cfg, overrides, opts);
        if (!quiet) {
            for (const auto& w : manifest.warnings)
                std::cerr << "[polariton] warning: " << w << '\n';
            std::cerr << "[polariton] wrote " << manifest.outputs.size() << " file(s) and manifest.txt to "
                      << out_dir << '\n';
        }
        return ok;
    } catch (const polariton::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return invalid;
    } catch (const polariton::InstabilityError& e) {
        std::cerr << "solver instability: " << e.what() << '\n';
        return unstable;
    } catch (const polariton::PropagationDiverged& e) {
        std::cerr << "solver diverged: " << e.what() << '\n';
        return unstable;
    } catch (const polariton::UnknownScenario& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const polariton::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return invalid;
    }
}
