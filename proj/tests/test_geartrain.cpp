#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pipeclimb/geartrain.hpp"

using namespace pipeclimb;

namespace {

std::array<LoadCurve, 3> elastic_loads(double c0, double c1, double c2, double tau0 = 0.0) {
    return {LoadCurve{tau0, c0}, LoadCurve{tau0, c1}, LoadCurve{tau0, c2}};
}

std::array<LoadCurve, 3> random_loads(std::mt19937& rng) {
    std::uniform_real_distribution<double> c_dist(0.05, 20.0);
    std::uniform_real_distribution<double> tau_dist(0.0, 5.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<LoadCurve, 3> loads{};
    int locked = 0;
    for (auto& load : loads) {
        load.coulomb_torque_nmm = tau_dist(rng);
        const double kind = u(rng);
        if (kind < 0.08) {
            load.viscous_coeff = 0.0;  // flat Coulomb-only curve
        } else if (kind < 0.13 && locked < 2) {
            load.locked = true;
            ++locked;
        } else {
            load.viscous_coeff = c_dist(rng);
        }
    }
    return loads;
}

} // namespace

TEST_CASE("load curve torque is non-decreasing in the forward speed") {
    const LoadCurve curve{2.0, 0.5};
    CHECK(curve.torque_at(0.0) == 0.0);  // static range, no motion transmitted
    double prev = 0.0;
    for (double w : {0.01, 0.1, 1.0, 4.0, 20.0}) {
        const double tau = curve.torque_at(w);
        CHECK(tau >= prev);
        prev = tau;
    }
    CHECK(curve.torque_at(1.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(curve.torque_at(-1.0) == doctest::Approx(-2.5).epsilon(1e-15));
}

TEST_CASE("compose_three_output validates ratios") {
    const auto diff = compose_three_output(1.0, 1.0);
    CHECK(diff.input_ratio == 1.0);
    CHECK_THROWS_AS(compose_three_output(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(compose_three_output(-2.0, 1.0), ParameterError);
    CHECK_THROWS_AS(compose_three_output(1.0, 0.0), ParameterError);

    // k = 0.5 admits the uniform solution at twice the input speed.
    const auto half = compose_three_output(0.5, 1.0);
    CHECK(kinematic_residual(half, {1.0, 1.0, 1.0}, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("kinematic_residual is the mean constraint") {
    const auto diff = compose_three_output(1.0, 1.0);
    CHECK(kinematic_residual(diff, {1.0, 1.0, 1.0}, 1.0) == 0.0);
    CHECK(kinematic_residual(diff, {1.5, 0.75, 0.75}, 1.0) == 0.0);
    CHECK(kinematic_residual(diff, {1.0, 1.0, 1.0}, 2.0) == -1.0);
}

TEST_CASE("solve_free_speeds distributes the input symmetrically") {
    const auto diff = compose_three_output(1.0, 1.0);

    const auto none = solve_free_speeds(diff, 1.0);
    CHECK(none.output_speed_rad_s == std::array<double, 3>{1.0, 1.0, 1.0});

    const auto one = solve_free_speeds(diff, 1.0, {true, false, false});
    CHECK(one.output_speed_rad_s[0] == 0.0);
    CHECK(one.output_speed_rad_s[1] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(one.output_speed_rad_s[2] == doctest::Approx(1.5).epsilon(1e-15));

    const auto two = solve_free_speeds(diff, 1.0, {true, true, false});
    CHECK(two.output_speed_rad_s[2] == doctest::Approx(3.0).epsilon(1e-15));

    CHECK_THROWS_AS(solve_free_speeds(diff, 1.0, {true, true, true}), InfeasibleError);
    // All three locked is fine while the input is still.
    CHECK_NOTHROW(solve_free_speeds(diff, 0.0, {true, true, true}));
}

TEST_CASE("solve_loaded_speeds closed-form cases") {
    const auto diff = compose_three_output(1.0, 1.0);

    SUBCASE("equal loads keep the symmetry") {
        const auto sol = solve_loaded_speeds(diff, 1.0, elastic_loads(1.0, 1.0, 1.0));
        for (double w : sol.output_speed_rad_s) {
            CHECK(w == doctest::Approx(1.0).epsilon(1e-9));
        }
        CHECK(sol.output_torque_nmm[0] == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("doubled viscosity sheds speed to the light outputs") {
        // Equal torque: omega = (tau, tau, tau/2); mean constraint: 2.5*tau = 3.
        const auto sol = solve_loaded_speeds(diff, 1.0, elastic_loads(1.0, 1.0, 2.0));
        CHECK(sol.output_speed_rad_s[0] == doctest::Approx(1.2).epsilon(1e-9));
        CHECK(sol.output_speed_rad_s[1] == doctest::Approx(1.2).epsilon(1e-9));
        CHECK(sol.output_speed_rad_s[2] == doctest::Approx(0.6).epsilon(1e-9));
        CHECK(sol.output_torque_nmm[0] == doctest::Approx(1.2).epsilon(1e-9));
        CHECK(input_torque(sol) == doctest::Approx(3.6).epsilon(1e-9));
    }

    SUBCASE("locked output reduces to the free redistribution") {
        auto loads = elastic_loads(1.0, 1.0, 1.0);
        loads[0].locked = true;
        const auto sol = solve_loaded_speeds(diff, 1.0, loads);
        CHECK(sol.output_speed_rad_s[0] == 0.0);
        CHECK(sol.output_speed_rad_s[1] == doctest::Approx(1.5).epsilon(1e-9));
        CHECK(sol.output_speed_rad_s[2] == doctest::Approx(1.5).epsilon(1e-9));
    }

    SUBCASE("flat curves recover the symmetric split exactly") {
        std::array<LoadCurve, 3> loads{};  // tau0 = 0, c = 0
        loads[0].locked = true;
        const auto sol = solve_loaded_speeds(diff, 1.0, loads);
        CHECK(sol.output_speed_rad_s[1] == 1.5);
        CHECK(sol.output_speed_rad_s[2] == 1.5);
    }

    SUBCASE("rest input gives the rest solution") {
        const auto sol = solve_loaded_speeds(diff, 0.0, elastic_loads(1.0, 2.0, 3.0));
        CHECK(sol.output_speed_rad_s == std::array<double, 3>{0.0, 0.0, 0.0});
        CHECK(sol.input_torque_nmm == 0.0);
    }
}

TEST_CASE("solve_loaded_speeds rejects bad inputs") {
    const auto diff = compose_three_output(1.0, 1.0);
    CHECK_THROWS_AS(solve_loaded_speeds(diff, -1.0, elastic_loads(1, 1, 1)), ParameterError);
    CHECK_THROWS_AS(solve_loaded_speeds(diff, 1.0, elastic_loads(1, 1, -0.5)), ParameterError);
    CHECK_THROWS_AS(solve_loaded_speeds(diff, 1.0, elastic_loads(1, 1, 1, -2.0)), ParameterError);

    auto all_locked = elastic_loads(1, 1, 1);
    for (auto& load : all_locked) load.locked = true;
    CHECK_THROWS_AS(solve_loaded_speeds(diff, 1.0, all_locked), InfeasibleError);
}

TEST_CASE("iteration cap raises a solver error naming the bracket") {
    const auto diff = compose_three_output(1.0, 1.0);
    SolveOptions options;
    options.max_iterations = 2;
    CHECK_THROWS_AS(solve_loaded_speeds(diff, 1.0, elastic_loads(1.0, 1.0, 2.0), options),
                    SolverError);
}

TEST_CASE("input_torque power balance") {
    SpeedSolution sol;
    sol.input_speed_rad_s = 1.0;
    sol.output_speed_rad_s = {1.0, 1.0, 1.0};
    sol.output_torque_nmm = {1.0, 1.0, 1.0};
    CHECK(input_torque(sol) == 3.0);

    sol.output_torque_nmm = {0.0, 0.0, 0.0};
    CHECK(input_torque(sol) == 0.0);

    sol.input_speed_rad_s = 0.0;
    sol.output_torque_nmm = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(input_torque(sol), ParameterError);
}

TEST_CASE("mean constraint and torque equality over randomized loads") {
    const auto diff = compose_three_output(1.0, 1.0);
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> w_dist(0.0, 10.0);

    for (int trial = 0; trial < 2000; ++trial) {
        const auto loads = random_loads(rng);
        const double w_in = w_dist(rng);
        const auto sol = solve_loaded_speeds(diff, w_in, loads);

        const double target = diff.input_ratio * w_in;
        const double residual = kinematic_residual(diff, sol.output_speed_rad_s, w_in);
        CHECK(std::abs(residual) <= 1e-9 * std::max(1.0, target));

        double power = 0.0;
        for (int i = 0; i < 3; ++i) {
            power += sol.output_torque_nmm[i] * sol.output_speed_rad_s[i];
        }
        if (w_in > 0.0) {
            CHECK(sol.input_torque_nmm * w_in ==
                  doctest::Approx(power).epsilon(1e-9));
        }
    }
}

TEST_CASE("monotone redistribution: stiffening one output never helps it") {
    const auto diff = compose_three_output(1.0, 1.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> c_dist(0.1, 10.0);
    std::uniform_real_distribution<double> tau_dist(0.0, 2.0);

    for (int trial = 0; trial < 300; ++trial) {
        auto loads = elastic_loads(c_dist(rng), c_dist(rng), c_dist(rng), 0.0);
        for (auto& load : loads) load.coulomb_torque_nmm = tau_dist(rng);
        const int bumped = trial % 3;

        const auto before = solve_loaded_speeds(diff, 2.0, loads);
        loads[bumped].viscous_coeff *= 1.0 + 0.5 * (1 + trial % 5);
        const auto after = solve_loaded_speeds(diff, 2.0, loads);

        CHECK(after.output_speed_rad_s[bumped] <= before.output_speed_rad_s[bumped] + 1e-9);
        for (int j = 0; j < 3; ++j) {
            if (j != bumped) {
                CHECK(after.output_speed_rad_s[j] >= before.output_speed_rad_s[j] - 1e-9);
            }
        }
    }
}

TEST_CASE("bisection agrees with an exact piecewise-linear solve") {
    // Independent oracle: with elastic curves the speed sum is piecewise
    // linear in tau with kinks at the Coulomb torques, so the balance can be
    // solved exactly segment by segment.
    const auto closed_form = [](const std::array<LoadCurve, 3>& loads, double target) {
        std::array<double, 4> kinks{0.0, loads[0].coulomb_torque_nmm, loads[1].coulomb_torque_nmm,
                                    loads[2].coulomb_torque_nmm};
        std::sort(kinks.begin(), kinks.end());
        const auto sum_at = [&](double tau) {
            double s = 0.0;
            for (const auto& load : loads) {
                s += std::max(0.0, (tau - load.coulomb_torque_nmm) / load.viscous_coeff);
            }
            return s;
        };
        const auto slope_at = [&](double tau) {
            double b = 0.0;
            for (const auto& load : loads) {
                if (load.coulomb_torque_nmm <= tau) b += 1.0 / load.viscous_coeff;
            }
            return b;
        };
        for (std::size_t j = 0; j + 1 < kinks.size(); ++j) {
            if (sum_at(kinks[j + 1]) >= target) {
                const double deficit = target - sum_at(kinks[j]);
                return deficit <= 0.0 ? kinks[j] : kinks[j] + deficit / slope_at(kinks[j]);
            }
        }
        const double last = kinks.back();
        return last + (target - sum_at(last)) / slope_at(last);
    };

    const auto diff = compose_three_output(1.0, 1.0);
    std::mt19937 rng(271828);
    std::uniform_real_distribution<double> c_dist(0.05, 12.0);
    std::uniform_real_distribution<double> tau_dist(0.0, 6.0);
    std::uniform_real_distribution<double> w_dist(0.05, 10.0);

    for (int trial = 0; trial < 400; ++trial) {
        const auto loads = elastic_loads(c_dist(rng), c_dist(rng), c_dist(rng), 0.0);
        auto shifted = loads;
        for (auto& load : shifted) load.coulomb_torque_nmm = tau_dist(rng);
        const double w_in = w_dist(rng);

        const double tau_star = closed_form(shifted, 3.0 * w_in);
        const auto sol = solve_loaded_speeds(diff, w_in, shifted);
        for (int i = 0; i < 3; ++i) {
            const double expected =
                std::max(0.0, (tau_star - shifted[i].coulomb_torque_nmm) / shifted[i].viscous_coeff);
            CHECK(sol.output_speed_rad_s[i] == doctest::Approx(expected).epsilon(1e-7));
        }
    }
}

TEST_CASE("solver is insensitive to the initial bracket") {
    const auto diff = compose_three_output(1.0, 1.0);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> c_dist(0.05, 15.0);
    std::uniform_real_distribution<double> tau_dist(0.0, 4.0);

    for (int trial = 0; trial < 200; ++trial) {
        const auto loads =
            elastic_loads(c_dist(rng), c_dist(rng), c_dist(rng), tau_dist(rng));
        const auto a = solve_loaded_speeds(diff, 3.0, loads, {.bracket_hint_nmm = 0.5});
        const auto b = solve_loaded_speeds(diff, 3.0, loads, {.bracket_hint_nmm = 400.0});
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(a.output_speed_rad_s[i] - b.output_speed_rad_s[i]) < 1e-7);
        }
    }
}

TEST_CASE("permuting the load curves permutes the solution") {
    const auto diff = compose_three_output(1.0, 1.0);
    const auto loads = elastic_loads(0.3, 1.7, 4.2, 0.8);
    const auto base = solve_loaded_speeds(diff, 2.5, loads);

    const std::array<int, 3> perm{2, 0, 1};
    std::array<LoadCurve, 3> permuted{};
    for (int i = 0; i < 3; ++i) {
        permuted[i] = loads[perm[i]];
    }
    const auto sol = solve_loaded_speeds(diff, 2.5, permuted);
    for (int i = 0; i < 3; ++i) {
        CHECK(sol.output_speed_rad_s[i] ==
              doctest::Approx(base.output_speed_rad_s[perm[i]]).epsilon(1e-12));
    }
}
