#include <cstdio>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pipeclimb/log.hpp"
#include "pipeclimb/metrics.hpp"
#include "pipeclimb/scenario.hpp"
#include "pipeclimb/svg_plot.hpp"
#include "pipeclimb/trace_io.hpp"

namespace {

using namespace pipeclimb;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitTimeout = 4;

constexpr double kDegToRad = std::numbers::pi / 180.0;

/// "lock" or "c=<val>[,tau0=<val>]", three of them separated by ';'.
std::array<LoadCurve, 3> parse_loads(const std::string& text) {
    std::array<LoadCurve, 3> loads{};
    std::stringstream stream(text);
    std::string part;
    int count = 0;
    while (std::getline(stream, part, ';')) {
        if (count >= 3) {
            throw ParameterError("--loads expects exactly three ';'-separated entries");
        }
        LoadCurve& load = loads[count];
        if (part == "lock") {
            load.locked = true;
        } else {
            std::stringstream fields(part);
            std::string field;
            bool saw_c = false;
            while (std::getline(fields, field, ',')) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) {
                    throw ParameterError("bad load entry '" + part + "'");
                }
                const std::string key = field.substr(0, eq);
                double value = 0.0;
                try {
                    value = std::stod(field.substr(eq + 1));
                } catch (const std::exception&) {
                    throw ParameterError("bad numeric value in load entry '" + part + "'");
                }
                if (key == "c") {
                    load.viscous_coeff = value;
                    saw_c = true;
                } else if (key == "tau0") {
                    load.coulomb_torque_nmm = value;
                } else {
                    throw ParameterError("unknown load field '" + key + "'");
                }
            }
            if (!saw_c) {
                throw ParameterError("load entry '" + part + "' needs c=<val> (or 'lock')");
            }
        }
        ++count;
    }
    if (count != 3) {
        throw ParameterError("--loads expects exactly three ';'-separated entries");
    }
    return loads;
}

int cmd_gearbox(double k, double stage, double omega_in, const std::string& loads_text) {
    const ThreeOutputDifferential diff = compose_three_output(k, stage);
    const std::array<LoadCurve, 3> loads = parse_loads(loads_text);
    const SpeedSolution sol = solve_loaded_speeds(diff, omega_in, loads);

    std::printf("%-8s %-16s %-16s\n", "output", "omega_rad_s", "torque_Nmm");
    for (int i = 0; i < kTrackCount; ++i) {
        std::printf("%-8s %-16.9g %-16.9g\n", track_name(static_cast<Track>(i)),
                    sol.output_speed_rad_s[i], sol.output_torque_nmm[i]);
    }
    std::printf("%-8s %-16.9g %-16.9g\n", "input", sol.input_speed_rad_s, sol.input_torque_nmm);
    std::printf("residual %.3e\n", sol.residual);

    nlohmann::json record;
    record["k"] = k;
    record["stage_ratio"] = stage;
    record["omega_in_rad_s"] = omega_in;
    record["omega_out_rad_s"] = sol.output_speed_rad_s;
    record["torque_out_nmm"] = sol.output_torque_nmm;
    record["input_torque_nmm"] = sol.input_torque_nmm;
    record["residual"] = sol.residual;
    std::printf("%s\n", record.dump().c_str());
    return kExitOk;
}

struct GeometrySegmentArg {
    Segment segment;
};

int cmd_geometry(double inner_radius, const std::vector<double>& rolls_deg,
                 const std::vector<std::string>& segment_args,
                 const std::optional<std::string>& preset_name) {
    PipeSpec spec{inner_radius};
    std::vector<Segment> segments;
    if (preset_name) {
        const NetworkPreset preset = preset_network(preset_from_name(*preset_name), spec);
        segments = preset.network.segments();
        std::printf("preset %s, suggested robot rolls:", preset_name->c_str());
        for (double roll : preset.suggested_roll_rad) {
            std::printf(" %g deg", roll * 180.0 / std::numbers::pi);
        }
        std::printf("\n");
    }
    for (const std::string& arg : segment_args) {
        const auto colon = arg.find(':');
        const std::string kind = arg.substr(0, colon);
        std::vector<double> nums;
        if (colon != std::string::npos) {
            std::stringstream stream(arg.substr(colon + 1));
            std::string field;
            while (std::getline(stream, field, ',')) {
                try {
                    nums.push_back(std::stod(field));
                } catch (const std::exception&) {
                    throw ParameterError("bad numeric value in --segment '" + arg + "'");
                }
            }
        }
        if (kind == "straight" && (nums.size() == 1 || nums.size() == 2)) {
            segments.push_back(
                StraightSegment{nums[0], nums.size() > 1 ? nums[1] * kDegToRad : 0.0});
        } else if (kind == "elbow" && nums.size() >= 2 && nums.size() <= 4) {
            ElbowSegment elbow;
            elbow.bend_radius_mm = nums[0];
            elbow.bend_angle_rad = nums[1] * kDegToRad;
            elbow.bend_plane_roll_rad = nums.size() > 2 ? nums[2] * kDegToRad : 0.0;
            elbow.inclination_rad = nums.size() > 3 ? nums[3] * kDegToRad : 0.0;
            segments.push_back(elbow);
        } else {
            throw ParameterError("bad --segment '" + arg +
                                 "' (use straight:L[,incl_deg] or "
                                 "elbow:R,theta_deg[,psi_deg[,incl_deg]])");
        }
    }
    const PipeNetwork net(spec, std::move(segments));

    std::printf("%-4s %-9s %-14s", "idx", "kind", "centerline_mm");
    for (double roll : rolls_deg) {
        char label[32];
        std::snprintf(label, sizeof(label), "track@%gdeg_mm", roll);
        std::printf(" %-15s", label);
    }
    std::printf("\n");
    for (std::size_t i = 0; i < net.segments().size(); ++i) {
        const Segment& seg = net.segments()[i];
        std::printf("%-4zu %-9s %-14.6g", i, is_elbow(seg) ? "elbow" : "straight",
                    segment_arc_length(seg));
        for (double roll : rolls_deg) {
            std::printf(" %-15.6g", track_path_length(seg, spec, roll * kDegToRad));
        }
        std::printf("\n");
    }
    std::printf("total centerline %.6g mm\n", centerline_length(net));
    return kExitOk;
}

int status_to_exit(RunStatus status) {
    switch (status) {
        case RunStatus::Completed: return kExitOk;
        case RunStatus::Timeout: return kExitTimeout;
        case RunStatus::SolverFailure: return kExitSolver;
    }
    return kExitOk;
}

void print_summary(const SimSummary& summary) {
    std::printf("scenario %s: %s, %.3f s total, aggregate APE %.4g%%\n",
                summary.scenario.c_str(), run_status_name(summary.status), summary.total_time_s,
                summary.aggregate_ape_pct);
    std::printf("%-4s %-9s %-11s %-12s %-30s %-12s\n", "idx", "kind", "duration_s",
                "max|slip|", "APE_pct(A,B,C)", "traction_ev");
    for (std::size_t i = 0; i < summary.segments.size(); ++i) {
        const SegmentSummary& seg = summary.segments[i];
        std::printf("%-4zu %-9s %-11.4g %-12.4g %-9.4g %-9.4g %-9.4g %ld\n", i, seg.kind.c_str(),
                    seg.duration_s, seg.max_abs_slip, seg.ape_pct[0], seg.ape_pct[1],
                    seg.ape_pct[2], seg.traction_violation_steps);
    }
}

int cmd_simulate(const std::vector<std::string>& paths, const std::string& out_base, bool sweep) {
    if (sweep && paths.size() > 1) {
        std::vector<std::future<int>> futures;
        for (const std::string& path : paths) {
            futures.push_back(std::async(std::launch::async, [path, out_base] {
                const Scenario scenario = load_scenario(path);
                const std::filesystem::path dir =
                    std::filesystem::path(out_base) / scenario.name;
                const RunResult result = run_scenario_to_dir(scenario, dir);
                return status_to_exit(result.status);
            }));
        }
        int worst = kExitOk;
        for (auto& future : futures) {
            worst = std::max(worst, future.get());
        }
        return worst;
    }

    int exit_code = kExitOk;
    for (const std::string& path : paths) {
        const Scenario scenario = load_scenario(path);
        const std::filesystem::path dir = paths.size() > 1
                                              ? std::filesystem::path(out_base) / scenario.name
                                              : std::filesystem::path(out_base);
        const RunResult result = run_scenario_to_dir(scenario, dir);
        print_summary(result.summary);
        exit_code = std::max(exit_code, status_to_exit(result.status));
    }
    return exit_code;
}

int cmd_report(const std::string& scenario_path, const std::string& trace_path,
               const std::string& out_dir) {
    const Scenario scenario = load_scenario(scenario_path);
    const SimTrace trace = read_trace_csv(trace_path);
    if (trace.records.empty()) {
        throw ParameterError("trace file " + trace_path + " has no records");
    }
    SimSummary summary = summarize(trace, scenario.config.network);
    summary.scenario = scenario.name;
    std::filesystem::create_directories(out_dir);
    write_summary_json(std::filesystem::path(out_dir) / "summary.json", summary);
    write_velocity_svg(std::filesystem::path(out_dir) / "velocity.svg", trace, scenario.name);
    print_summary(summary);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pipeclimb: quasi-static in-pipe robot traversal simulator"};
    app.require_subcommand(1);

    // gearbox
    auto* gearbox = app.add_subcommand("gearbox", "solve the three-output differential");
    double k = 1.0, stage = 1.0, omega_in = 1.0;
    std::string loads_text = "c=1;c=1;c=1";
    gearbox->add_option("--k", k, "output-mean speed per unit input speed");
    gearbox->add_option("--stage", stage, "internal two-output stage ratio");
    gearbox->add_option("--win", omega_in, "input speed [rad/s]");
    gearbox->add_option("--loads", loads_text,
                        "three ';'-separated load curves: lock | c=<val>[,tau0=<val>]");

    // geometry
    auto* geometry = app.add_subcommand("geometry", "pipe network path-length table");
    double inner_radius = 20.0;
    std::vector<double> rolls_deg{0.0, 120.0, 240.0};
    std::vector<std::string> segment_args;
    std::optional<std::string> preset_name;
    geometry->add_option("--radius", inner_radius, "pipe inner radius [mm]");
    geometry->add_option("--rolls", rolls_deg, "track roll angles [deg]")->delimiter(',');
    geometry->add_option("--segment", segment_args,
                         "ordered segment: straight:L[,incl_deg] | "
                         "elbow:R,theta_deg[,psi_deg[,incl_deg]]");
    std::string preset_tmp;
    geometry->add_option("--preset", preset_tmp, "named network preset");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run scenario files");
    std::vector<std::string> scenario_paths;
    std::string out_dir = "out";
    bool sweep = false;
    simulate->add_option("scenario", scenario_paths, "scenario JSON file(s)")->required();
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_flag("--sweep", sweep, "run multiple scenarios concurrently");

    // report
    auto* report = app.add_subcommand("report", "regenerate summary and plot from a trace");
    std::string report_scenario, report_trace, report_out = "out";
    report->add_option("scenario", report_scenario, "scenario JSON file")->required();
    report->add_option("--trace", report_trace, "existing trace.csv")->required();
    report->add_option("--out", report_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (gearbox->parsed()) {
            return cmd_gearbox(k, stage, omega_in, loads_text);
        }
        if (geometry->parsed()) {
            if (!preset_tmp.empty()) preset_name = preset_tmp;
            return cmd_geometry(inner_radius, rolls_deg, segment_args, preset_name);
        }
        if (simulate->parsed()) {
            return cmd_simulate(scenario_paths, out_dir, sweep);
        }
        if (report->parsed()) {
            return cmd_report(report_scenario, report_trace, report_out);
        }
    } catch (const SolverError& err) {
        std::fprintf(stderr, "solver error: %s\n", err.what());
        return kExitSolver;
    } catch (const Error& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return kExitConfig;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitConfig;
    }
    return kExitOk;
}
