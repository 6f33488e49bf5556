#pragma once

#include <array>
#include <numbers>

#include "pipeclimb/geartrain.hpp"
#include "pipeclimb/pipegeom.hpp"

namespace pipeclimb {

/// Geometry, spring, and contact parameters of the three-module robot.
/// The unit system is mm-based: with masses in kg and g in mm/s^2 the force
/// unit comes out as mN, so the default spring stiffness of 1000 force
/// units per mm equals 1 N/mm.
struct RobotConfig {
    std::array<double, 3> module_roll_rad{0.0, 2.0 * std::numbers::pi / 3.0,
                                          4.0 * std::numbers::pi / 3.0};
    double spring_stiffness_n_per_mm = 1000.0;  // K_s, per module pair of rails
    double spring_preload_mm = 1.5;             // compression at nominal diameter
    double spring_max_travel_mm = 16.0;
    double nominal_compression_mm = 2.0;        // working compression beyond preload
    double sprocket_radius_mm = 20.0;
    double robot_mass_kg = 0.35;
    double friction_coefficient = 0.5;          // mu, Coulomb traction limit
    double rolling_resistance = 0.01;           // C_rr
    double slip_stiffness = 1.0;                // force per unit slip per unit normal force
    double cornering_drag = 0.1;                // intrados scrub drag per N, bends only
    double gravity_mm_s2 = 9810.0;

    void validate() const;
};

/// Per-step contact bookkeeping for the three tracks.
struct ContactState {
    std::array<double, 3> compression_mm{};
    std::array<double, 3> normal_force_n{};
    std::array<double, 3> required_speed_mm_s{};
    std::array<double, 3> actual_speed_mm_s{};
    std::array<double, 3> slip{};
    std::array<bool, 3> traction_exceeded{};
};

/// No-slip track speeds for body speed V_c through a segment. Straights need
/// V_c on every track; elbows scale by the per-track bend factor. The mean
/// over the three modules equals V_c exactly (120-degree spacing).
std::array<double, 3> required_track_speeds(double body_speed_mm_s, const Segment& seg,
                                            const PipeSpec& spec, const RobotConfig& config,
                                            double robot_roll_rad);

/// Spring-rail normal forces N_i = K_s * (preload + compression_i).
/// Throws RangeError if a compression leaves [0, max_travel].
std::array<double, 3> normal_forces(const RobotConfig& config,
                                    const std::array<double, 3>& compression_mm);

/// Coulomb traction limit mu*N.
double traction_limit(double normal_force_n, double friction_coefficient);

/// (actual - required)/required. Zero when both are zero; positive means the
/// track slides (overspeed), negative means it drags.
double slip_ratio(double actual_mm_s, double required_mm_s);

/// Gravity resistance per track, m*g*sin(inclination)/3 (equal split).
double gravity_share_per_track(const RobotConfig& config, const Segment& seg);

/// Resisting load curve seen by one output shaft. Coulomb part: rolling
/// resistance, the climb share, and — in bends — scrub drag on tracks inside
/// the bend line. Viscous part: the slip reaction c_slip*N*r_s mapped into
/// the angular-speed domain at the track's bend-corrected nominal speed.
LoadCurve track_load_curve(double normal_force_n, const Segment& seg, const PipeSpec& spec,
                           const RobotConfig& config, double gravity_share_n,
                           double track_roll_rad, double nominal_body_speed_mm_s);

/// Tangential force the contact patch must transmit: climb share, rolling
/// drag, bend scrub, and the slip reaction at the measured slip. Exceeding
/// traction_limit() means the track saturates (recorded, not an error).
double traction_demand(double normal_force_n, const Segment& seg, const PipeSpec& spec,
                       const RobotConfig& config, double gravity_share_n,
                       double track_roll_rad, double slip);

} // namespace pipeclimb
