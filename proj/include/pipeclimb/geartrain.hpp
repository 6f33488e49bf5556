#pragma once

#include <array>

#include "pipeclimb/errors.hpp"

namespace pipeclimb {

inline constexpr int kTrackCount = 3;

/// Output shafts of the three-output differential, in fixed order.
enum class Track : int { A = 0, B = 1, C = 2 };

inline constexpr std::array<Track, 3> kAllTracks{Track::A, Track::B, Track::C};

constexpr const char* track_name(Track t) {
    switch (t) {
        case Track::A: return "A";
        case Track::B: return "B";
        case Track::C: return "C";
    }
    return "?";
}

/// Monotone speed -> resisting-torque map for one output shaft:
/// tau(w) = coulomb_torque*sign(w) + viscous_coeff*w.
/// A locked curve holds the shaft at zero speed regardless of torque.
struct LoadCurve {
    double coulomb_torque_nmm = 0.0;  // tau0 >= 0
    double viscous_coeff = 0.0;       // c >= 0, N*mm*s/rad
    bool locked = false;

    [[nodiscard]] double torque_at(double omega_rad_s) const noexcept {
        const double sign = omega_rad_s > 0.0 ? 1.0 : (omega_rad_s < 0.0 ? -1.0 : 0.0);
        return coulomb_torque_nmm * sign + viscous_coeff * omega_rad_s;
    }
};

/// Three-output open differential. The kinematic constraint is
/// mean(omega_out) = input_ratio * omega_in; unlocked outputs share a
/// common torque (ring gear drives both side pinions with equal force).
struct ThreeOutputDifferential {
    double input_ratio = 1.0;  // k: output mean per unit input speed
    double stage_ratio = 1.0;  // bevel ratio of each internal two-output stage
};

/// Builds a differential from the worm-side ratio k and the internal
/// stage ratio. Throws ParameterError unless both are positive and finite.
ThreeOutputDifferential compose_three_output(double input_ratio, double stage_ratio);

/// One equilibrium of the gear train.
struct SpeedSolution {
    double input_speed_rad_s = 0.0;
    std::array<double, 3> output_speed_rad_s{};
    std::array<double, 3> output_torque_nmm{};
    double input_torque_nmm = 0.0;
    double residual = 0.0;  // normalized torque-balance residual
    int iterations = 0;
};

/// mean(omega_out) - k*omega_in; zero iff the assignment is admissible.
double kinematic_residual(const ThreeOutputDifferential& diff,
                          const std::array<double, 3>& output_speed_rad_s,
                          double input_speed_rad_s);

/// Load-free solve: locked outputs stand still, the remaining outputs share
/// the input speed equally (symmetry is the only load-free tiebreak).
/// Throws InfeasibleError if all three are locked while the input turns.
SpeedSolution solve_free_speeds(const ThreeOutputDifferential& diff,
                                double input_speed_rad_s,
                                const std::array<bool, 3>& locked = {});

struct SolveOptions {
    double bracket_hint_nmm = 0.0;  // initial upper torque bracket; 0 = auto
    int max_iterations = 10000;
};

/// Loaded solve: finds the common output torque tau* such that the load-curve
/// inverses satisfy the mean constraint, by bisection on the monotone
/// g(tau) = sum_i omega_i(tau) - 3*k*omega_in. Locked outputs are held at
/// zero speed and excluded from the torque balance. Flat curves (c = 0)
/// resolve algebraically; ties at the binding Coulomb torque split the
/// residual speed equally.
SpeedSolution solve_loaded_speeds(const ThreeOutputDifferential& diff,
                                  double input_speed_rad_s,
                                  const std::array<LoadCurve, 3>& loads,
                                  const SolveOptions& options = {});

/// Input torque from the lossless power balance, sum(tau_i*omega_i)/omega_in.
/// Throws ParameterError when omega_in = 0 with nonzero output power.
double input_torque(const SpeedSolution& solution);

} // namespace pipeclimb
