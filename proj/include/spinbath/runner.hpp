// runner.hpp: executes scenarios through the engines and writes their outputs

#pragma once

#include <string>
#include <vector>

#include "spinbath/scenario.hpp"
#include "spinbath/trajectory.hpp"

namespace spinbath {

std::string version();

struct EngineRun {
    Engine engine;
    bool with_corr;
    Trajectory traj;
};

struct ScenarioResult {
    Scenario scenario;
    std::vector<EngineRun> runs;
    std::vector<std::string> files;  // CSVs then the .meta sidecar
};

/// Times at which every engine records: multiples of dt * record_every plus the final step.
std::vector<double> output_times(const Scenario& s);

/// Validates and runs every engine for every correlation setting. Master-equation
/// runs share one memory kernel.
std::vector<EngineRun> run_engines(const Scenario& s);

/// `<name>_<engine>_<corr|nocorr>.csv`
std::string csv_filename(const std::string& name, Engine engine, bool with_corr);

/// key=value sidecar text.
std::string metadata(const Scenario& s, const std::vector<EngineRun>& runs);

/// Runs and writes CSVs plus `<name>.meta` into out_dir (created if needed).
ScenarioResult run_scenario(const Scenario& s, const std::string& out_dir);

/// One worker per scenario. All workers finish before the first failure, if
/// any, is rethrown.
std::vector<ScenarioResult> run_batch(const std::vector<Scenario>& scenarios, const std::string& out_dir);

}  // namespace spinbath
