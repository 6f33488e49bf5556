#include "pipeclimb/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pipeclimb/log.hpp"
#include "pipeclimb/svg_plot.hpp"
#include "pipeclimb/trace_io.hpp"

namespace pipeclimb {

namespace {

using nlohmann::json;

constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParameterError("scenario key '" + path + "': " + what);
}

void require_object(const json& node, const std::string& path) {
    if (!node.is_object()) {
        fail(path, "expected an object");
    }
}

void reject_unknown_keys(const json& node, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (const auto& item : node.items()) {
        if (!allowed.contains(item.key())) {
            fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
        }
    }
}

double get_number(const json& node, const std::string& path) {
    if (!node.is_number()) {
        fail(path, "expected a number");
    }
    return node.get<double>();
}

double number_or(const json& parent, const std::string& key, const std::string& path,
                 double fallback) {
    if (!parent.contains(key)) return fallback;
    return get_number(parent.at(key), path + "." + key);
}

RobotConfig parse_robot(const json& node, const std::string& path) {
    require_object(node, path);
    reject_unknown_keys(node, path,
                        {"module_rolls_deg", "spring_stiffness_n_per_mm", "spring_preload_mm",
                         "spring_max_travel_mm", "nominal_compression_mm", "sprocket_radius_mm",
                         "robot_mass_kg", "friction_coefficient", "rolling_resistance",
                         "slip_stiffness", "cornering_drag", "gravity_mm_s2"});
    RobotConfig robot;
    if (node.contains("module_rolls_deg")) {
        const json& rolls = node.at("module_rolls_deg");
        if (!rolls.is_array() || rolls.size() != 3) {
            fail(path + ".module_rolls_deg", "expected an array of 3 angles");
        }
        for (int i = 0; i < 3; ++i) {
            robot.module_roll_rad[i] =
                get_number(rolls.at(i), path + ".module_rolls_deg") * kDegToRad;
        }
    }
    robot.spring_stiffness_n_per_mm =
        number_or(node, "spring_stiffness_n_per_mm", path, robot.spring_stiffness_n_per_mm);
    robot.spring_preload_mm = number_or(node, "spring_preload_mm", path, robot.spring_preload_mm);
    robot.spring_max_travel_mm =
        number_or(node, "spring_max_travel_mm", path, robot.spring_max_travel_mm);
    robot.nominal_compression_mm =
        number_or(node, "nominal_compression_mm", path, robot.nominal_compression_mm);
    robot.sprocket_radius_mm = number_or(node, "sprocket_radius_mm", path, robot.sprocket_radius_mm);
    robot.robot_mass_kg = number_or(node, "robot_mass_kg", path, robot.robot_mass_kg);
    robot.friction_coefficient =
        number_or(node, "friction_coefficient", path, robot.friction_coefficient);
    robot.rolling_resistance = number_or(node, "rolling_resistance", path, robot.rolling_resistance);
    robot.slip_stiffness = number_or(node, "slip_stiffness", path, robot.slip_stiffness);
    robot.cornering_drag = number_or(node, "cornering_drag", path, robot.cornering_drag);
    robot.gravity_mm_s2 = number_or(node, "gravity_mm_s2", path, robot.gravity_mm_s2);
    return robot;
}

Segment parse_segment(const json& node, const PipeSpec& spec, const std::string& path) {
    require_object(node, path);
    if (!node.contains("type") || !node.at("type").is_string()) {
        fail(path + ".type", "expected \"straight\" or \"elbow\"");
    }
    const std::string type = node.at("type").get<std::string>();
    if (type == "straight") {
        reject_unknown_keys(node, path, {"type", "length_mm", "inclination_deg"});
        if (!node.contains("length_mm")) {
            fail(path + ".length_mm", "required for straight segments");
        }
        StraightSegment seg;
        seg.length_mm = get_number(node.at("length_mm"), path + ".length_mm");
        seg.inclination_rad = number_or(node, "inclination_deg", path, 0.0) * kDegToRad;
        Segment out = seg;
        validate_segment(out, spec);
        return out;
    }
    if (type == "elbow") {
        reject_unknown_keys(node, path,
                            {"type", "bend_radius_mm", "bend_angle_deg", "bend_plane_roll_deg",
                             "inclination_deg"});
        if (!node.contains("bend_angle_deg")) {
            fail(path + ".bend_angle_deg", "required for elbow segments");
        }
        ElbowSegment seg;
        seg.bend_radius_mm =
            number_or(node, "bend_radius_mm", path, 3.0 * spec.inner_radius_mm);
        seg.bend_angle_rad = get_number(node.at("bend_angle_deg"), path + ".bend_angle_deg") * kDegToRad;
        seg.bend_plane_roll_rad = number_or(node, "bend_plane_roll_deg", path, 0.0) * kDegToRad;
        seg.inclination_rad = number_or(node, "inclination_deg", path, 0.0) * kDegToRad;
        Segment out = seg;
        validate_segment(out, spec);
        return out;
    }
    fail(path + ".type", "unknown segment type '" + type + "'");
}

PipeNetwork parse_network(const json& node, const PipeSpec& spec, const std::string& path) {
    require_object(node, path);
    if (node.contains("preset")) {
        reject_unknown_keys(node, path,
                            {"preset", "straight_length_mm", "bend_radius_mm", "u_piece_chained"});
        if (!node.at("preset").is_string()) {
            fail(path + ".preset", "expected a preset name string");
        }
        PresetOptions options;
        options.straight_length_mm =
            number_or(node, "straight_length_mm", path, options.straight_length_mm);
        if (node.contains("bend_radius_mm")) {
            options.bend_radius_mm = get_number(node.at("bend_radius_mm"), path + ".bend_radius_mm");
        }
        if (node.contains("u_piece_chained")) {
            if (!node.at("u_piece_chained").is_boolean()) {
                fail(path + ".u_piece_chained", "expected a boolean");
            }
            options.u_piece_chained = node.at("u_piece_chained").get<bool>();
        }
        const PresetName preset = preset_from_name(node.at("preset").get<std::string>());
        return preset_network(preset, spec, options).network;
    }
    reject_unknown_keys(node, path, {"segments"});
    if (!node.contains("segments") || !node.at("segments").is_array() ||
        node.at("segments").empty()) {
        fail(path + ".segments", "expected a non-empty segment array (or use 'preset')");
    }
    std::vector<Segment> segments;
    for (std::size_t i = 0; i < node.at("segments").size(); ++i) {
        std::ostringstream seg_path;
        seg_path << path << ".segments[" << i << "]";
        segments.push_back(parse_segment(node.at("segments").at(i), spec, seg_path.str()));
    }
    return PipeNetwork(spec, std::move(segments));
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ParameterError(std::string("scenario is not valid JSON: ") + err.what());
    }
    require_object(doc, "(root)");
    reject_unknown_keys(doc, "", {"name", "differential", "robot", "pipe", "network", "sim"});

    if (!doc.contains("name") || !doc.at("name").is_string() ||
        doc.at("name").get<std::string>().empty()) {
        fail("name", "required non-empty string");
    }

    ThreeOutputDifferential diff;
    if (doc.contains("differential")) {
        const json& node = doc.at("differential");
        require_object(node, "differential");
        reject_unknown_keys(node, "differential", {"k", "stage_ratio"});
        diff.input_ratio = number_or(node, "k", "differential", diff.input_ratio);
        diff.stage_ratio = number_or(node, "stage_ratio", "differential", diff.stage_ratio);
    }
    diff = compose_three_output(diff.input_ratio, diff.stage_ratio);

    RobotConfig robot =
        doc.contains("robot") ? parse_robot(doc.at("robot"), "robot") : RobotConfig{};
    robot.validate();

    if (!doc.contains("pipe")) {
        fail("pipe", "required object with inner_radius_mm");
    }
    require_object(doc.at("pipe"), "pipe");
    reject_unknown_keys(doc.at("pipe"), "pipe", {"inner_radius_mm"});
    PipeSpec spec;
    spec.inner_radius_mm = number_or(doc.at("pipe"), "inner_radius_mm", "pipe", 0.0);

    if (!doc.contains("network")) {
        fail("network", "required (preset or explicit segments)");
    }
    PipeNetwork network = parse_network(doc.at("network"), spec, "network");

    SimConfig config{diff, robot, std::move(network)};
    if (doc.contains("sim")) {
        const json& node = doc.at("sim");
        require_object(node, "sim");
        reject_unknown_keys(node, "sim",
                            {"dt_s", "v_target_mm_s", "omega_in_rad_s", "robot_roll_deg",
                             "max_time_s"});
        config.dt_s = number_or(node, "dt_s", "sim", config.dt_s);
        if (node.contains("v_target_mm_s")) {
            config.target_body_speed_mm_s = get_number(node.at("v_target_mm_s"), "sim.v_target_mm_s");
        }
        if (node.contains("omega_in_rad_s")) {
            config.input_speed_rad_s = get_number(node.at("omega_in_rad_s"), "sim.omega_in_rad_s");
        }
        config.robot_roll_rad = number_or(node, "robot_roll_deg", "sim", 0.0) * kDegToRad;
        config.max_time_s = number_or(node, "max_time_s", "sim", config.max_time_s);
    }
    if (!config.input_speed_rad_s && !config.target_body_speed_mm_s) {
        fail("sim", "one of v_target_mm_s / omega_in_rad_s is required");
    }
    config.validate();

    return Scenario{doc.at("name").get<std::string>(), std::move(config)};
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParameterError("cannot open scenario file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

RunResult run_scenario_to_dir(const Scenario& scenario, const std::filesystem::path& out_dir) {
    log_info("running scenario '%s' (%zu segments, %.1f mm)", scenario.name.c_str(),
             scenario.config.network.segments().size(),
             scenario.config.network.total_length_mm());
    RunResult result = run(scenario.config, scenario.name);
    if (result.trace.records.empty()) {
        log_error("scenario '%s' produced no trace records", scenario.name.c_str());
        return result;
    }
    std::filesystem::create_directories(out_dir);
    write_trace_csv(out_dir / "trace.csv", result.trace);
    write_summary_json(out_dir / "summary.json", result.summary);
    write_velocity_svg(out_dir / "velocity.svg", result.trace, scenario.name);
    log_info("scenario '%s' %s in %.3f s; outputs in %s", scenario.name.c_str(),
             run_status_name(result.status), result.summary.total_time_s,
             out_dir.string().c_str());
    return result;
}

} // namespace pipeclimb
