#include "pipeclimb/geartrain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pipeclimb {

namespace {

constexpr double kBalanceTol = 1e-10;

void validate_diff(const ThreeOutputDifferential& diff) {
    if (!std::isfinite(diff.input_ratio) || diff.input_ratio <= 0.0) {
        throw ParameterError("differential input_ratio must be positive and finite");
    }
    if (!std::isfinite(diff.stage_ratio) || diff.stage_ratio <= 0.0) {
        throw ParameterError("differential stage_ratio must be positive and finite");
    }
}

void validate_load(const LoadCurve& load, int index) {
    if (!std::isfinite(load.coulomb_torque_nmm) || load.coulomb_torque_nmm < 0.0 ||
        !std::isfinite(load.viscous_coeff) || load.viscous_coeff < 0.0) {
        std::ostringstream msg;
        msg << "load curve for output " << track_name(static_cast<Track>(index))
            << " is not monotone non-decreasing (tau0=" << load.coulomb_torque_nmm
            << ", c=" << load.viscous_coeff << ")";
        throw ParameterError(msg.str());
    }
}

/// omega(tau) for one unlocked elastic curve (c > 0), forward branch.
double inverse_speed(const LoadCurve& load, double tau) {
    return std::max(0.0, (tau - load.coulomb_torque_nmm) / load.viscous_coeff);
}

} // namespace

ThreeOutputDifferential compose_three_output(double input_ratio, double stage_ratio) {
    ThreeOutputDifferential diff{input_ratio, stage_ratio};
    validate_diff(diff);
    return diff;
}

double kinematic_residual(const ThreeOutputDifferential& diff,
                          const std::array<double, 3>& output_speed_rad_s,
                          double input_speed_rad_s) {
    const double mean = (output_speed_rad_s[0] + output_speed_rad_s[1] + output_speed_rad_s[2]) / 3.0;
    return mean - diff.input_ratio * input_speed_rad_s;
}

SpeedSolution solve_free_speeds(const ThreeOutputDifferential& diff,
                                double input_speed_rad_s,
                                const std::array<bool, 3>& locked) {
    validate_diff(diff);
    if (!std::isfinite(input_speed_rad_s)) {
        throw ParameterError("input speed must be finite");
    }

    const int n_locked = static_cast<int>(locked[0]) + locked[1] + locked[2];
    const double total = 3.0 * diff.input_ratio * input_speed_rad_s;

    SpeedSolution sol;
    sol.input_speed_rad_s = input_speed_rad_s;
    if (n_locked == 3) {
        if (total != 0.0) {
            throw InfeasibleError("all three outputs locked while the input turns");
        }
        return sol;
    }

    const double share = total / (3 - n_locked);
    for (int i = 0; i < kTrackCount; ++i) {
        sol.output_speed_rad_s[i] = locked[i] ? 0.0 : share;
    }
    return sol;
}

SpeedSolution solve_loaded_speeds(const ThreeOutputDifferential& diff,
                                  double input_speed_rad_s,
                                  const std::array<LoadCurve, 3>& loads,
                                  const SolveOptions& options) {
    validate_diff(diff);
    if (!std::isfinite(input_speed_rad_s) || input_speed_rad_s < 0.0) {
        throw ParameterError("input speed must be finite and non-negative");
    }
    for (int i = 0; i < kTrackCount; ++i) {
        validate_load(loads[i], i);
    }

    const double target = 3.0 * diff.input_ratio * input_speed_rad_s;
    const double tol = kBalanceTol * std::max(1.0, target);

    SpeedSolution sol;
    sol.input_speed_rad_s = input_speed_rad_s;

    std::array<int, 3> elastic{};  // unlocked, c > 0
    std::array<int, 3> plastic{};  // unlocked, c == 0
    int n_elastic = 0, n_plastic = 0, n_locked = 0;
    for (int i = 0; i < kTrackCount; ++i) {
        if (loads[i].locked) {
            ++n_locked;
        } else if (loads[i].viscous_coeff > 0.0) {
            elastic[n_elastic++] = i;
        } else {
            plastic[n_plastic++] = i;
        }
    }

    if (n_locked == 3) {
        if (target != 0.0) {
            throw InfeasibleError("all three outputs locked while the input turns");
        }
        return sol;
    }
    if (target == 0.0) {
        return sol;  // rest: every shaft still, no torque transmitted
    }

    const auto elastic_sum = [&](double tau) {
        double sum = 0.0;
        for (int e = 0; e < n_elastic; ++e) {
            sum += inverse_speed(loads[elastic[e]], tau);
        }
        return sum;
    };

    // Bisection on the monotone g(tau) = elastic_sum(tau) - target over a
    // bracket with g(lo) <= 0 <= g(hi).
    const auto bisect = [&](double lo, double hi) {
        int iter = 0;
        while (true) {
            const double mid = 0.5 * (lo + hi);
            const double g = elastic_sum(mid) - target;
            ++iter;
            if (std::abs(g) <= tol) {
                sol.iterations = iter;
                return mid;
            }
            if (iter >= options.max_iterations) {
                std::ostringstream msg;
                msg << "torque balance did not converge after " << iter
                    << " iterations; last bracket [" << lo << ", " << hi << "], residual " << g;
                throw SolverError(msg.str());
            }
            (g < 0.0 ? lo : hi) = mid;
        }
    };

    double tau_star = 0.0;

    if (n_plastic > 0) {
        double tau_bind = std::numeric_limits<double>::infinity();
        for (int p = 0; p < n_plastic; ++p) {
            tau_bind = std::min(tau_bind, loads[plastic[p]].coulomb_torque_nmm);
        }
        const double elastic_at_bind = elastic_sum(tau_bind);
        if (elastic_at_bind < target) {
            // Flat curves bind: tau* sits at their Coulomb torque and the
            // minimum-tau0 outputs absorb the leftover speed equally.
            tau_star = tau_bind;
            int n_sharing = 0;
            for (int p = 0; p < n_plastic; ++p) {
                if (loads[plastic[p]].coulomb_torque_nmm == tau_bind) ++n_sharing;
            }
            const double residual_speed = target - elastic_at_bind;
            for (int p = 0; p < n_plastic; ++p) {
                const int i = plastic[p];
                sol.output_speed_rad_s[i] =
                    (loads[i].coulomb_torque_nmm == tau_bind) ? residual_speed / n_sharing : 0.0;
            }
        } else {
            // The elastic curves reach the target at or below tau_bind and
            // the flat outputs stand still.
            tau_star = bisect(0.0, tau_bind);
        }
    } else {
        if (n_elastic == 0) {
            // Unreachable: target > 0 with every unlocked output flat is the
            // plastic branch; locked-only was handled above.
            throw InfeasibleError("no unlocked output can absorb the input speed");
        }
        double lo = 0.0;
        double hi = options.bracket_hint_nmm > 0.0 ? options.bracket_hint_nmm : 1.0;
        for (int e = 0; e < n_elastic; ++e) {
            hi = std::max(hi, 2.0 * loads[elastic[e]].coulomb_torque_nmm);
        }
        int doublings = 0;
        while (elastic_sum(hi) < target) {
            lo = hi;
            hi *= 2.0;
            if (++doublings > 2048) {
                throw SolverError("could not bracket the torque balance root");
            }
        }
        tau_star = bisect(lo, hi);
    }

    for (int e = 0; e < n_elastic; ++e) {
        const int i = elastic[e];
        sol.output_speed_rad_s[i] = inverse_speed(loads[i], tau_star);
    }
    // Locked shafts still see the gear-side torque tau*; the holding reaction
    // is external to the box.
    for (int i = 0; i < kTrackCount; ++i) {
        sol.output_torque_nmm[i] = tau_star;
    }

    double speed_sum = 0.0, power = 0.0;
    for (int i = 0; i < kTrackCount; ++i) {
        speed_sum += sol.output_speed_rad_s[i];
        power += sol.output_torque_nmm[i] * sol.output_speed_rad_s[i];
    }
    sol.residual = (speed_sum - target) / std::max(1.0, target);
    sol.input_torque_nmm = input_speed_rad_s > 0.0 ? power / input_speed_rad_s : 0.0;
    return sol;
}

double input_torque(const SpeedSolution& solution) {
    double power = 0.0;
    for (int i = 0; i < kTrackCount; ++i) {
        power += solution.output_torque_nmm[i] * solution.output_speed_rad_s[i];
    }
    if (solution.input_speed_rad_s == 0.0) {
        if (power != 0.0) {
            throw ParameterError("input torque undefined: zero input speed with nonzero output power");
        }
        return 0.0;
    }
    return power / solution.input_speed_rad_s;
}

} // namespace pipeclimb
