#pragma once

#include <filesystem>
#include <string>

#include "pipeclimb/sim.hpp"

namespace pipeclimb {

/// Fully validated run description loaded from a scenario file.
struct Scenario {
    std::string name;
    SimConfig config;
};

/// Parses and validates the scenario JSON text. Unknown keys are hard
/// errors naming the offending key path.
Scenario parse_scenario(const std::string& json_text);

Scenario load_scenario(const std::filesystem::path& path);

/// Runs the scenario and writes trace.csv, summary.json and velocity.svg
/// into out_dir (created if missing). Returns the run result; files are
/// written for completed, timed-out and solver-failed runs alike as long as
/// at least one step was recorded.
RunResult run_scenario_to_dir(const Scenario& scenario, const std::filesystem::path& out_dir);

} // namespace pipeclimb
