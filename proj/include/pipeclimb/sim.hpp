#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pipeclimb/geartrain.hpp"
#include "pipeclimb/kinematics.hpp"
#include "pipeclimb/pipegeom.hpp"

namespace pipeclimb {

/// Quasi-static traversal configuration. Exactly one of input_speed_rad_s /
/// target_body_speed_mm_s must be set; the other is derived through the
/// gear ratio and sprocket radius.
struct SimConfig {
    SimConfig(ThreeOutputDifferential d, RobotConfig r, PipeNetwork n)
        : diff(d), robot(std::move(r)), network(std::move(n)) {}

    ThreeOutputDifferential diff;
    RobotConfig robot;
    PipeNetwork network;
    double dt_s = 1e-3;
    std::optional<double> input_speed_rad_s;
    std::optional<double> target_body_speed_mm_s;
    double robot_roll_rad = 0.0;
    double max_time_s = 300.0;

    void validate() const;
    /// Resolved gearbox input speed.
    [[nodiscard]] double input_speed() const;
    /// Commanded straight-line body speed k*omega_in*r_s.
    [[nodiscard]] double nominal_body_speed() const;
};

struct SimState {
    double t_s = 0.0;
    double s_mm = 0.0;                    // centerline coordinate
    std::array<double, 3> odometer_mm{};  // per-track surface travel
    std::size_t segment_index = 0;
    double body_speed_mm_s = 0.0;
    SpeedSolution solution;
    ContactState contact;
};

/// One trace row; mirrors the trace.csv columns.
struct TraceRecord {
    double t_s = 0.0;
    double s_mm = 0.0;
    std::size_t segment_index = 0;
    std::array<double, 3> track_speed_mm_s{};
    std::array<double, 3> required_speed_mm_s{};
    std::array<double, 3> slip{};
    std::array<double, 3> normal_force_n{};
};

struct SimTrace {
    std::vector<TraceRecord> records;
    double dt_s = 0.0;
    double final_time_s = 0.0;
};

struct SegmentSummary {
    std::string kind;  // "straight" | "elbow"
    double entry_time_s = 0.0;
    double exit_time_s = 0.0;
    double duration_s = 0.0;
    std::array<double, 3> mean_speed_mm_s{};
    std::array<double, 3> ape_pct{};
    double max_abs_slip = 0.0;
    long traction_violation_steps = 0;
};

enum class RunStatus { Completed, Timeout, SolverFailure };

const char* run_status_name(RunStatus status);

struct SimSummary {
    std::string scenario;
    RunStatus status = RunStatus::Completed;
    double total_time_s = 0.0;
    std::vector<SegmentSummary> segments;
    double aggregate_ape_pct = 0.0;
    std::array<double, 3> track_distance_mm{};
    double centerline_length_mm = 0.0;
};

/// Advances one time step: locate the segment, build the per-track load
/// curves, solve the differential, move the body by the geometry-corrected
/// mean track speed, and record slip against the no-slip requirement.
SimState step(const SimState& state, const SimConfig& cfg);

struct RunResult {
    SimTrace trace;
    SimSummary summary;
    RunStatus status = RunStatus::Completed;
    SimState final_state;
    std::string message;
};

/// Steps until the network end or max_time. Deterministic: identical
/// configs produce identical traces. Solver failures stop the run and are
/// reported in the status, keeping the last good state.
RunResult run(const SimConfig& cfg, const std::string& scenario_name = "");

enum class PresetName { VerticalClimb, Elbow90, Horizontal, UPiece, FullCircuit };

/// Throws ParameterError for unknown names.
PresetName preset_from_name(const std::string& name);
const char* preset_name_string(PresetName name);

struct PresetOptions {
    double straight_length_mm = 350.0;
    std::optional<double> bend_radius_mm;  // default: long-radius rule 3r
    bool u_piece_chained = false;          // two 90-degree elbows instead of one pi-bend
};

struct NetworkPreset {
    PipeNetwork network;
    std::vector<double> suggested_roll_rad;
};

NetworkPreset preset_network(PresetName name, const PipeSpec& spec,
                             const PresetOptions& options = {});

} // namespace pipeclimb
