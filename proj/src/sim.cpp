#include "pipeclimb/sim.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "pipeclimb/log.hpp"
#include "pipeclimb/metrics.hpp"

namespace pipeclimb {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

} // namespace

void SimConfig::validate() const {
    if (!std::isfinite(dt_s) || dt_s <= 0.0) {
        throw ParameterError("dt_s must be positive");
    }
    if (!std::isfinite(max_time_s) || max_time_s <= 0.0) {
        throw ParameterError("max_time_s must be positive");
    }
    if (input_speed_rad_s.has_value() == target_body_speed_mm_s.has_value()) {
        throw ParameterError("exactly one of input_speed_rad_s / target_body_speed_mm_s must be set");
    }
    const double speed = input_speed_rad_s.value_or(target_body_speed_mm_s.value_or(0.0));
    if (!std::isfinite(speed) || speed < 0.0) {
        throw ParameterError("commanded speed must be finite and non-negative");
    }
    if (!std::isfinite(robot_roll_rad)) {
        throw ParameterError("robot_roll_rad must be finite");
    }
    compose_three_output(diff.input_ratio, diff.stage_ratio);
    robot.validate();
}

double SimConfig::input_speed() const {
    if (input_speed_rad_s) {
        return *input_speed_rad_s;
    }
    return *target_body_speed_mm_s / (diff.input_ratio * robot.sprocket_radius_mm);
}

double SimConfig::nominal_body_speed() const {
    return diff.input_ratio * input_speed() * robot.sprocket_radius_mm;
}

SimState step(const SimState& state, const SimConfig& cfg) {
    const PipeSpec& spec = cfg.network.spec();
    const SegmentLocation loc = segment_at(cfg.network, state.s_mm);
    const Segment& seg = cfg.network.segments()[loc.index];

    SimState next = state;
    next.segment_index = loc.index;
    next.contact = ContactState{};
    next.contact.compression_mm = {cfg.robot.nominal_compression_mm,
                                   cfg.robot.nominal_compression_mm,
                                   cfg.robot.nominal_compression_mm};
    next.contact.normal_force_n = normal_forces(cfg.robot, next.contact.compression_mm);

    const double gravity_share = gravity_share_per_track(cfg.robot, seg);
    const double v_nominal = cfg.nominal_body_speed();
    std::array<LoadCurve, 3> loads;
    for (int i = 0; i < kTrackCount; ++i) {
        const double roll = cfg.robot.module_roll_rad[i] + cfg.robot_roll_rad;
        loads[i] = track_load_curve(next.contact.normal_force_n[i], seg, spec, cfg.robot,
                                    gravity_share, roll, v_nominal);
    }

    next.solution = solve_loaded_speeds(cfg.diff, cfg.input_speed(), loads);

    double body_speed = 0.0;
    for (int i = 0; i < kTrackCount; ++i) {
        const double v = next.solution.output_speed_rad_s[i] * cfg.robot.sprocket_radius_mm;
        next.contact.actual_speed_mm_s[i] = v;
        if (const auto* elbow = std::get_if<ElbowSegment>(&seg)) {
            const double roll = cfg.robot.module_roll_rad[i] + cfg.robot_roll_rad;
            body_speed += v / bend_speed_factor(*elbow, spec, roll);
        } else {
            body_speed += v;
        }
    }
    body_speed /= kTrackCount;
    next.body_speed_mm_s = body_speed;

    next.contact.required_speed_mm_s =
        required_track_speeds(body_speed, seg, spec, cfg.robot, cfg.robot_roll_rad);
    for (int i = 0; i < kTrackCount; ++i) {
        next.contact.slip[i] =
            slip_ratio(next.contact.actual_speed_mm_s[i], next.contact.required_speed_mm_s[i]);
        const double roll = cfg.robot.module_roll_rad[i] + cfg.robot_roll_rad;
        const double demand = traction_demand(next.contact.normal_force_n[i], seg, spec, cfg.robot,
                                              gravity_share, roll, next.contact.slip[i]);
        next.contact.traction_exceeded[i] =
            demand > traction_limit(next.contact.normal_force_n[i], cfg.robot.friction_coefficient);
        next.odometer_mm[i] += next.contact.actual_speed_mm_s[i] * cfg.dt_s;
    }

    next.t_s += cfg.dt_s;
    next.s_mm = std::min(state.s_mm + body_speed * cfg.dt_s, cfg.network.total_length_mm());
    return next;
}

RunResult run(const SimConfig& cfg, const std::string& scenario_name) {
    cfg.validate();

    RunResult result;
    result.trace.dt_s = cfg.dt_s;
    std::vector<int> violations_per_record;  // traction flags never reach the trace file

    SimState state;
    const double end = cfg.network.total_length_mm();
    while (state.s_mm < end && state.t_s < cfg.max_time_s) {
        SimState next;
        try {
            next = step(state, cfg);
        } catch (const SolverError& err) {
            result.status = RunStatus::SolverFailure;
            result.message = err.what();
            log_error("solver failure at t=%.6f s, s=%.3f mm: %s", state.t_s, state.s_mm, err.what());
            break;
        }

        TraceRecord rec;
        rec.t_s = state.t_s;
        rec.s_mm = state.s_mm;
        rec.segment_index = next.segment_index;
        rec.track_speed_mm_s = next.contact.actual_speed_mm_s;
        rec.required_speed_mm_s = next.contact.required_speed_mm_s;
        rec.slip = next.contact.slip;
        rec.normal_force_n = next.contact.normal_force_n;
        result.trace.records.push_back(rec);
        violations_per_record.push_back(static_cast<int>(next.contact.traction_exceeded[0]) +
                                        next.contact.traction_exceeded[1] +
                                        next.contact.traction_exceeded[2]);
        state = next;
    }
    result.trace.final_time_s = state.t_s;
    result.final_state = state;

    if (result.status != RunStatus::SolverFailure && state.s_mm < end) {
        result.status = RunStatus::Timeout;
        std::ostringstream msg;
        msg << "timeout: reached t=" << state.t_s << " s at s=" << state.s_mm << " of " << end
            << " mm";
        result.message = msg.str();
        log_info("%s", result.message.c_str());
    }

    if (!result.trace.records.empty()) {
        result.summary = summarize(result.trace, cfg.network);
        std::size_t group = 0;
        for (std::size_t i = 0; i < result.trace.records.size(); ++i) {
            if (i > 0 &&
                result.trace.records[i].segment_index != result.trace.records[i - 1].segment_index) {
                ++group;
            }
            if (violations_per_record[i] > 0 && group < result.summary.segments.size()) {
                ++result.summary.segments[group].traction_violation_steps;
            }
        }
    }
    result.summary.scenario = scenario_name;
    result.summary.status = result.status;
    return result;
}

const char* run_status_name(RunStatus status) {
    switch (status) {
        case RunStatus::Completed: return "completed";
        case RunStatus::Timeout: return "timeout";
        case RunStatus::SolverFailure: return "solver_failure";
    }
    return "unknown";
}

PresetName preset_from_name(const std::string& name) {
    if (name == "vertical_climb") return PresetName::VerticalClimb;
    if (name == "elbow90") return PresetName::Elbow90;
    if (name == "horizontal") return PresetName::Horizontal;
    if (name == "u_piece") return PresetName::UPiece;
    if (name == "full_circuit") return PresetName::FullCircuit;
    throw ParameterError("unknown network preset: " + name);
}

const char* preset_name_string(PresetName name) {
    switch (name) {
        case PresetName::VerticalClimb: return "vertical_climb";
        case PresetName::Elbow90: return "elbow90";
        case PresetName::Horizontal: return "horizontal";
        case PresetName::UPiece: return "u_piece";
        case PresetName::FullCircuit: return "full_circuit";
    }
    return "unknown";
}

NetworkPreset preset_network(PresetName name, const PipeSpec& spec, const PresetOptions& options) {
    std::vector<Segment> segments;
    std::vector<double> rolls{0.0};
    const double length = options.straight_length_mm;

    const auto u_piece_segments = [&](double inclination) {
        std::vector<Segment> out;
        if (options.u_piece_chained) {
            out.push_back(long_radius_elbow(spec, kHalfPi, 0.0, inclination, options.bend_radius_mm));
            out.push_back(long_radius_elbow(spec, kHalfPi, 0.0, inclination, options.bend_radius_mm));
        } else {
            out.push_back(
                long_radius_elbow(spec, std::numbers::pi, 0.0, inclination, options.bend_radius_mm));
        }
        return out;
    };

    switch (name) {
        case PresetName::VerticalClimb:
            segments.push_back(StraightSegment{length, kHalfPi});
            break;
        case PresetName::Horizontal:
            segments.push_back(StraightSegment{length, 0.0});
            break;
        case PresetName::Elbow90:
            segments.push_back(long_radius_elbow(spec, kHalfPi, 0.0, kQuarterPi, options.bend_radius_mm));
            rolls = {0.0, std::numbers::pi / 3.0};
            break;
        case PresetName::UPiece:
            for (Segment& seg : u_piece_segments(0.0)) {
                segments.push_back(seg);
            }
            rolls = {0.0, std::numbers::pi / 3.0};
            break;
        case PresetName::FullCircuit:
            segments.push_back(StraightSegment{length, kHalfPi});
            segments.push_back(long_radius_elbow(spec, kHalfPi, 0.0, kQuarterPi, options.bend_radius_mm));
            segments.push_back(StraightSegment{length, 0.0});
            for (Segment& seg : u_piece_segments(0.0)) {
                segments.push_back(seg);
            }
            rolls = {0.0, std::numbers::pi / 3.0};
            break;
    }
    return {PipeNetwork(spec, std::move(segments)), std::move(rolls)};
}

} // namespace pipeclimb
