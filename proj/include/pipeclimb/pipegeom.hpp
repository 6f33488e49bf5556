#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "pipeclimb/errors.hpp"

namespace pipeclimb {

/// Pipe cross-section. inner_radius_mm is the radial distance from the
/// centerline to the track contact line.
struct PipeSpec {
    double inner_radius_mm = 0.0;
};

struct StraightSegment {
    double length_mm = 0.0;
    double inclination_rad = 0.0;  // axis angle from horizontal
};

/// Circular bend. bend_plane_roll_rad orients the bend plane about the pipe
/// axis; a track roll equal to it sits on the extrados (outermost) line.
struct ElbowSegment {
    double bend_radius_mm = 0.0;   // centerline arc radius R
    double bend_angle_rad = 0.0;   // theta in (0, pi]
    double bend_plane_roll_rad = 0.0;
    double inclination_rad = 0.0;
};

using Segment = std::variant<StraightSegment, ElbowSegment>;

[[nodiscard]] inline bool is_elbow(const Segment& seg) {
    return std::holds_alternative<ElbowSegment>(seg);
}

/// Centerline arc length of one segment: L for straights, theta*R for elbows.
double segment_arc_length(const Segment& seg);

double segment_inclination(const Segment& seg);

/// Throws ParameterError if the segment violates its invariants (L > 0;
/// theta in (0, pi]; R > pipe inner radius).
void validate_segment(const Segment& seg, const PipeSpec& spec);

/// Ratio of a track's bend-line speed to the body speed at roll angle
/// `track_roll_rad` about the pipe axis: (R + r*cos(roll - psi))/R.
double bend_speed_factor(const ElbowSegment& elbow, const PipeSpec& spec, double track_roll_rad);

/// Ordered run of pipe segments. Validates on construction: non-empty,
/// every segment valid against the pipe spec.
class PipeNetwork {
public:
    PipeNetwork(PipeSpec spec, std::vector<Segment> segments);

    [[nodiscard]] const PipeSpec& spec() const { return spec_; }
    [[nodiscard]] const std::vector<Segment>& segments() const { return segments_; }
    [[nodiscard]] double total_length_mm() const { return cumulative_.back(); }
    /// Cumulative centerline length at the START of segment i.
    [[nodiscard]] double segment_start_mm(std::size_t i) const { return cumulative_[i]; }

private:
    PipeSpec spec_;
    std::vector<Segment> segments_;
    std::vector<double> cumulative_;  // size segments()+1, strictly increasing
};

/// Total centerline arc length of the network.
double centerline_length(const PipeNetwork& net);

struct SegmentLocation {
    std::size_t index = 0;
    double offset_mm = 0.0;  // along the segment's own centerline
};

/// Segment containing centerline coordinate s. Boundary coordinates map to
/// the later segment, except the network end which maps to the last one.
/// Throws RangeError outside [0, centerline_length].
SegmentLocation segment_at(const PipeNetwork& net, double s_mm);

/// Contact-path length of a track through one segment. Straights are
/// roll-independent; elbows follow the offset arc theta*(R + r*cos(roll - psi)).
double track_path_length(const Segment& seg, const PipeSpec& spec, double track_roll_rad);

/// Convenience preset: elbow with the long-radius rule R = 1.5 * nominal
/// diameter = 3r unless an explicit bend radius is given.
Segment long_radius_elbow(const PipeSpec& spec, double bend_angle_rad,
                          double bend_plane_roll_rad, double inclination_rad,
                          std::optional<double> bend_radius_mm = std::nullopt);

} // namespace pipeclimb
