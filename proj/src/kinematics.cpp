#include "pipeclimb/kinematics.hpp"

#include <cmath>
#include <sstream>

namespace pipeclimb {

void RobotConfig::validate() const {
    if (!std::isfinite(spring_stiffness_n_per_mm) || spring_stiffness_n_per_mm <= 0.0) {
        throw ParameterError("spring_stiffness_n_per_mm must be positive");
    }
    if (!std::isfinite(spring_max_travel_mm) || spring_max_travel_mm <= 0.0) {
        throw ParameterError("spring_max_travel_mm must be positive");
    }
    if (!std::isfinite(spring_preload_mm) || spring_preload_mm < 0.0 ||
        spring_preload_mm > spring_max_travel_mm) {
        throw ParameterError("spring_preload_mm must lie in [0, spring_max_travel_mm]");
    }
    if (!std::isfinite(nominal_compression_mm) || nominal_compression_mm < 0.0 ||
        nominal_compression_mm > spring_max_travel_mm) {
        throw ParameterError("nominal_compression_mm must lie in [0, spring_max_travel_mm]");
    }
    if (!std::isfinite(sprocket_radius_mm) || sprocket_radius_mm <= 0.0) {
        throw ParameterError("sprocket_radius_mm must be positive");
    }
    if (!std::isfinite(friction_coefficient) || friction_coefficient <= 0.0) {
        throw ParameterError("friction_coefficient must be positive");
    }
    if (!std::isfinite(robot_mass_kg) || robot_mass_kg < 0.0) {
        throw ParameterError("robot_mass_kg must be non-negative");
    }
    if (!std::isfinite(rolling_resistance) || rolling_resistance < 0.0) {
        throw ParameterError("rolling_resistance must be non-negative");
    }
    if (!std::isfinite(slip_stiffness) || slip_stiffness < 0.0) {
        throw ParameterError("slip_stiffness must be non-negative");
    }
    if (!std::isfinite(cornering_drag) || cornering_drag < 0.0) {
        throw ParameterError("cornering_drag must be non-negative");
    }
    if (!std::isfinite(gravity_mm_s2) || gravity_mm_s2 <= 0.0) {
        throw ParameterError("gravity_mm_s2 must be positive");
    }
    for (int i = 0; i < kTrackCount; ++i) {
        if (!std::isfinite(module_roll_rad[i])) {
            throw ParameterError("module roll angles must be finite");
        }
        for (int j = i + 1; j < kTrackCount; ++j) {
            if (module_roll_rad[i] == module_roll_rad[j]) {
                throw ParameterError("module roll angles must be pairwise distinct");
            }
        }
    }
}

std::array<double, 3> required_track_speeds(double body_speed_mm_s, const Segment& seg,
                                            const PipeSpec& spec, const RobotConfig& config,
                                            double robot_roll_rad) {
    if (!std::isfinite(body_speed_mm_s) || body_speed_mm_s < 0.0) {
        throw ParameterError("body speed must be finite and non-negative");
    }
    std::array<double, 3> speeds{body_speed_mm_s, body_speed_mm_s, body_speed_mm_s};
    if (const auto* elbow = std::get_if<ElbowSegment>(&seg)) {
        for (int i = 0; i < kTrackCount; ++i) {
            const double roll = config.module_roll_rad[i] + robot_roll_rad;
            speeds[i] = body_speed_mm_s * bend_speed_factor(*elbow, spec, roll);
        }
    }
    return speeds;
}

std::array<double, 3> normal_forces(const RobotConfig& config,
                                    const std::array<double, 3>& compression_mm) {
    std::array<double, 3> forces{};
    for (int i = 0; i < kTrackCount; ++i) {
        const double delta = compression_mm[i];
        if (!std::isfinite(delta) || delta < 0.0 || delta > config.spring_max_travel_mm) {
            std::ostringstream msg;
            msg << "track " << track_name(static_cast<Track>(i)) << " compression " << delta
                << " mm outside spring travel [0, " << config.spring_max_travel_mm
                << "] (module jammed or lost contact)";
            throw RangeError(msg.str());
        }
        forces[i] = config.spring_stiffness_n_per_mm * (config.spring_preload_mm + delta);
    }
    return forces;
}

double traction_limit(double normal_force_n, double friction_coefficient) {
    if (!std::isfinite(normal_force_n) || normal_force_n < 0.0) {
        throw ParameterError("normal force must be non-negative");
    }
    return friction_coefficient * normal_force_n;
}

double slip_ratio(double actual_mm_s, double required_mm_s) {
    if (required_mm_s == 0.0) {
        if (actual_mm_s == 0.0) {
            return 0.0;
        }
        throw ParameterError("slip undefined: zero required speed with nonzero track speed");
    }
    if (required_mm_s < 0.0) {
        throw ParameterError("slip requires a positive reference speed");
    }
    return (actual_mm_s - required_mm_s) / required_mm_s;
}

double gravity_share_per_track(const RobotConfig& config, const Segment& seg) {
    return config.robot_mass_kg * config.gravity_mm_s2 * std::sin(segment_inclination(seg)) / 3.0;
}

LoadCurve track_load_curve(double normal_force_n, const Segment& seg, const PipeSpec& spec,
                           const RobotConfig& config, double gravity_share_n,
                           double track_roll_rad, double nominal_body_speed_mm_s) {
    if (!std::isfinite(normal_force_n) || normal_force_n < 0.0) {
        throw ParameterError("normal force must be non-negative");
    }
    const double r_s = config.sprocket_radius_mm;

    double coulomb = config.rolling_resistance * normal_force_n + std::max(0.0, gravity_share_n);
    double reference_speed = nominal_body_speed_mm_s;
    if (const auto* elbow = std::get_if<ElbowSegment>(&seg)) {
        const double factor = bend_speed_factor(*elbow, spec, track_roll_rad);
        // Tracks inside the bend line scrub against the wall as the body yaws.
        coulomb += config.cornering_drag * normal_force_n * std::max(0.0, 1.0 - factor);
        reference_speed *= factor;
    }

    LoadCurve curve;
    curve.coulomb_torque_nmm = r_s * coulomb;
    if (reference_speed > 0.0 && normal_force_n > 0.0) {
        curve.viscous_coeff = config.slip_stiffness * normal_force_n * r_s * r_s / reference_speed;
    }
    return curve;
}

double traction_demand(double normal_force_n, const Segment& seg, const PipeSpec& spec,
                       const RobotConfig& config, double gravity_share_n,
                       double track_roll_rad, double slip) {
    if (!std::isfinite(normal_force_n) || normal_force_n < 0.0) {
        throw ParameterError("normal force must be non-negative");
    }
    double force = config.rolling_resistance * normal_force_n + std::max(0.0, gravity_share_n);
    if (const auto* elbow = std::get_if<ElbowSegment>(&seg)) {
        const double factor = bend_speed_factor(*elbow, spec, track_roll_rad);
        force += config.cornering_drag * normal_force_n * std::max(0.0, 1.0 - factor);
    }
    force += config.slip_stiffness * normal_force_n * std::abs(slip);
    return force;
}

} // namespace pipeclimb
