#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "pipeclimb/pipegeom.hpp"

using namespace pipeclimb;

namespace {

constexpr double kPi = std::numbers::pi;

/// Independent oracle: chord-length sum over the 3-D contact curve of an
/// elbow, Richardson-extrapolated to kill the O(h^2) term. Never uses the
/// closed-form path length.
double arc_length_oracle(const ElbowSegment& elbow, const PipeSpec& spec, double roll) {
    const double beta = roll - elbow.bend_plane_roll_rad;
    const double radial = elbow.bend_radius_mm + spec.inner_radius_mm * std::cos(beta);
    const double axial = spec.inner_radius_mm * std::sin(beta);
    const auto point = [&](double t, std::array<double, 3>& p) {
        p = {radial * std::cos(t), radial * std::sin(t), axial};
    };
    const auto chord_sum = [&](int n) {
        double sum = 0.0;
        std::array<double, 3> prev{}, cur{};
        point(0.0, prev);
        for (int i = 1; i <= n; ++i) {
            point(elbow.bend_angle_rad * i / n, cur);
            sum += std::sqrt((cur[0] - prev[0]) * (cur[0] - prev[0]) +
                             (cur[1] - prev[1]) * (cur[1] - prev[1]) +
                             (cur[2] - prev[2]) * (cur[2] - prev[2]));
            prev = cur;
        }
        return sum;
    };
    const double coarse = chord_sum(4096);
    const double fine = chord_sum(8192);
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace

TEST_CASE("centerline length sums straights and arcs") {
    const PipeSpec spec{20.0};
    const PipeNetwork climb(spec, {StraightSegment{350.0, kPi / 2.0}});
    CHECK(centerline_length(climb) == 350.0);

    const PipeNetwork bend(spec, {ElbowSegment{100.0, kPi / 2.0, 0.0, 0.0}});
    CHECK(centerline_length(bend) == doctest::Approx(157.0796326794897).epsilon(1e-12));

    CHECK_THROWS_AS(PipeNetwork(spec, {}), ParameterError);
}

TEST_CASE("segment validation") {
    const PipeSpec spec{20.0};
    CHECK_THROWS_AS(validate_segment(StraightSegment{0.0, 0.0}, spec), ParameterError);
    CHECK_THROWS_AS(validate_segment(StraightSegment{-5.0, 0.0}, spec), ParameterError);
    CHECK_THROWS_AS(validate_segment(ElbowSegment{15.0, kPi / 2.0, 0.0, 0.0}, spec),
                    ParameterError);  // R <= r self-intersects
    CHECK_THROWS_AS(validate_segment(ElbowSegment{60.0, 0.0, 0.0, 0.0}, spec), ParameterError);
    CHECK_THROWS_AS(validate_segment(ElbowSegment{60.0, 1.5 * kPi, 0.0, 0.0}, spec),
                    ParameterError);
    CHECK_NOTHROW(validate_segment(ElbowSegment{60.0, kPi, 0.0, 0.0}, spec));
}

TEST_CASE("track_path_length matches the stated arcs") {
    const PipeSpec spec{20.0};

    const Segment elbow = ElbowSegment{76.2, kPi / 2.0, 0.0, 0.0};
    CHECK(track_path_length(elbow, spec, 0.0) ==
          doctest::Approx((kPi / 2.0) * 96.2).epsilon(1e-12));

    const Segment straight = StraightSegment{350.0, 0.0};
    CHECK(track_path_length(straight, spec, 0.0) == 350.0);
    CHECK(track_path_length(straight, spec, 1.234) == 350.0);

    // R = 2r: rolls 0/120/240 give factors 1.5/0.75/0.75 of theta*R.
    const Segment tight = ElbowSegment{40.0, kPi / 2.0, 0.0, 0.0};
    const double arc = (kPi / 2.0) * 40.0;
    CHECK(track_path_length(tight, spec, 0.0) == doctest::Approx(1.5 * arc).epsilon(1e-12));
    CHECK(track_path_length(tight, spec, 2.0 * kPi / 3.0) ==
          doctest::Approx(0.75 * arc).epsilon(1e-12));
    CHECK(track_path_length(tight, spec, 4.0 * kPi / 3.0) ==
          doctest::Approx(0.75 * arc).epsilon(1e-12));
}

TEST_CASE("three modules at 120 degrees always average to the centerline arc") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> r_dist(5.0, 40.0);
    std::uniform_real_distribution<double> ratio_dist(1.1, 8.0);
    std::uniform_real_distribution<double> angle_dist(0.05, kPi);
    std::uniform_real_distribution<double> roll_dist(-2.0 * kPi, 2.0 * kPi);

    for (int trial = 0; trial < 500; ++trial) {
        const PipeSpec spec{r_dist(rng)};
        ElbowSegment elbow;
        elbow.bend_radius_mm = spec.inner_radius_mm * ratio_dist(rng);
        elbow.bend_angle_rad = angle_dist(rng);
        elbow.bend_plane_roll_rad = roll_dist(rng);
        const double base_roll = roll_dist(rng);

        double sum = 0.0;
        for (int m = 0; m < 3; ++m) {
            sum += track_path_length(elbow, spec, base_roll + m * 2.0 * kPi / 3.0);
        }
        const double arc = elbow.bend_angle_rad * elbow.bend_radius_mm;
        CHECK(std::abs(sum - 3.0 * arc) <= 1e-12 * 3.0 * arc);
    }
}

TEST_CASE("track_path_length agrees with the chord-sum oracle") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> r_dist(5.0, 40.0);
    std::uniform_real_distribution<double> ratio_dist(1.05, 10.0);
    std::uniform_real_distribution<double> angle_dist(0.05, kPi);
    std::uniform_real_distribution<double> roll_dist(-kPi, kPi);

    for (int trial = 0; trial < 60; ++trial) {
        const PipeSpec spec{r_dist(rng)};
        ElbowSegment elbow;
        elbow.bend_radius_mm = spec.inner_radius_mm * ratio_dist(rng);
        elbow.bend_angle_rad = angle_dist(rng);
        elbow.bend_plane_roll_rad = roll_dist(rng);
        const double roll = roll_dist(rng);

        const double expected = arc_length_oracle(elbow, spec, roll);
        const double actual = track_path_length(elbow, spec, roll);
        CHECK(std::abs(actual - expected) <= 1e-6 * expected);
    }
}

TEST_CASE("path length is extremal on the extrados and intrados") {
    const PipeSpec spec{20.0};
    const ElbowSegment elbow{60.0, kPi / 2.0, 0.7, 0.0};
    const double at_extrados = track_path_length(elbow, spec, 0.7);
    const double at_intrados = track_path_length(elbow, spec, 0.7 + kPi);
    for (double offset : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        const double len = track_path_length(elbow, spec, 0.7 + offset);
        CHECK(len <= at_extrados);
        CHECK(len >= at_intrados);
    }
}

TEST_CASE("segment_at walks the cumulative lengths") {
    const PipeSpec spec{20.0};
    const double arc = (kPi / 2.0) * 76.2;
    const PipeNetwork net(spec, {StraightSegment{350.0, 0.0},
                                 ElbowSegment{76.2, kPi / 2.0, 0.0, 0.0}});

    CHECK(segment_at(net, 0.0).index == 0);
    CHECK(segment_at(net, 0.0).offset_mm == 0.0);

    // Boundaries map to the later segment...
    CHECK(segment_at(net, 350.0).index == 1);
    CHECK(segment_at(net, 350.0).offset_mm == 0.0);

    // ...except the network end.
    const auto end = segment_at(net, 350.0 + arc);
    CHECK(end.index == 1);
    CHECK(end.offset_mm == doctest::Approx(arc).epsilon(1e-12));

    CHECK_THROWS_AS(segment_at(net, -1.0), RangeError);
    CHECK_THROWS_AS(segment_at(net, 350.0 + arc + 1.0), RangeError);
}

TEST_CASE("long_radius_elbow presets R = 3r unless overridden") {
    const PipeSpec spec{20.0};

    const Segment preset = long_radius_elbow(spec, kPi / 2.0, 0.0, 0.0);
    CHECK(std::get<ElbowSegment>(preset).bend_radius_mm == 60.0);

    const Segment wide = long_radius_elbow(spec, kPi / 2.0, 0.0, 0.0, 76.2);
    CHECK(std::get<ElbowSegment>(wide).bend_radius_mm == 76.2);

    const Segment u_piece = long_radius_elbow(spec, kPi, 0.0, 0.0);
    CHECK(std::get<ElbowSegment>(u_piece).bend_angle_rad == kPi);

    CHECK_THROWS_AS(long_radius_elbow(spec, kPi / 2.0, 0.0, 0.0, 10.0), ParameterError);
}
