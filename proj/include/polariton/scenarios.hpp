#pragma once

// Named, reproducible runs that turn a layered parameter set into CSV files
// and a manifest. Parameter layers, lowest first: defaults, scenario preset,
// config file, command-line overrides.

#include "polariton/config.hpp"
#include "polariton/error.hpp"
#include "polariton/experiments.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polariton {

/// Thrown for scenario names outside scenario_names().
class UnknownScenario : public Error
{
public:
    using Error::Error;
};

const std::vector<std::string>& scenario_names();
bool is_scenario(const std::string& name);

/// Key/value pairs a scenario applies on top of the defaults.
std::vector<std::pair<std::string, std::string>> scenario_preset(const std::string& name);

/// Defaults, preset, optional config file and overrides, in that order.
config::ParamSet resolve_parameters(const std::string& name,
                                    const std::optional<std::filesystem::path>& config_path,
                                    const std::vector<std::string>& overrides);

// Typed views of a resolved parameter set.
MediumParams medium_from(const config::ParamSet& p);
SimGrid grid_from(const config::ParamSet& p);
SolverConfig solver_from(const config::ParamSet& p);
PulseSpec pulse_from(const config::ParamSet& p, const std::string& prefix);
experiments::PumpProbeConfig pump_probe_from(const config::ParamSet& p);
std::optional<PhysicalMedium> physical_from(const config::ParamSet& p);

struct RunManifest
{
    std::string scenario;
    std::vector<std::pair<std::string, std::string>> parameters; // key, value (source)
    std::vector<std::pair<std::string, std::string>> physical;   // derived scales, if any
    std::vector<std::pair<std::string, std::string>> results;    // observables
    std::vector<std::filesystem::path> outputs;
    std::vector<std::string> convergence;
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;

    /// `key = value` lines.
    std::string render() const;
};

struct RunOptions
{
    std::filesystem::path out_dir = ".";
    std::function<void(const std::string&)> progress; // may be empty
};

/// Run a scenario against an already resolved parameter set. Writes the CSV
/// outputs and manifest.txt into opts.out_dir.
RunManifest run_scenario(const std::string& name, const config::ParamSet& params,
                         const RunOptions& opts);

/// resolve_parameters() followed by run_scenario().
RunManifest run_scenario(const std::string& name,
                         const std::optional<std::filesystem::path>& config_path,
                         const std::vector<std::string>& overrides, const RunOptions& opts);

} // namespace polariton
