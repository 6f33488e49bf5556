#include "pipeclimb/pipegeom.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace pipeclimb {

double segment_arc_length(const Segment& seg) {
    if (const auto* s = std::get_if<StraightSegment>(&seg)) {
        return s->length_mm;
    }
    const auto& e = std::get<ElbowSegment>(seg);
    return e.bend_angle_rad * e.bend_radius_mm;
}

double segment_inclination(const Segment& seg) {
    if (const auto* s = std::get_if<StraightSegment>(&seg)) {
        return s->inclination_rad;
    }
    return std::get<ElbowSegment>(seg).inclination_rad;
}

void validate_segment(const Segment& seg, const PipeSpec& spec) {
    if (!std::isfinite(spec.inner_radius_mm) || spec.inner_radius_mm <= 0.0) {
        throw ParameterError("pipe inner radius must be positive");
    }
    if (const auto* s = std::get_if<StraightSegment>(&seg)) {
        if (!std::isfinite(s->length_mm) || s->length_mm <= 0.0) {
            throw ParameterError("straight segment length must be positive");
        }
        if (!std::isfinite(s->inclination_rad)) {
            throw ParameterError("straight segment inclination must be finite");
        }
        return;
    }
    const auto& e = std::get<ElbowSegment>(seg);
    if (!std::isfinite(e.bend_radius_mm) || e.bend_radius_mm <= spec.inner_radius_mm) {
        std::ostringstream msg;
        msg << "elbow bend radius " << e.bend_radius_mm
            << " mm must exceed the pipe inner radius " << spec.inner_radius_mm << " mm";
        throw ParameterError(msg.str());
    }
    if (!std::isfinite(e.bend_angle_rad) || e.bend_angle_rad <= 0.0 ||
        e.bend_angle_rad > std::numbers::pi) {
        throw ParameterError("elbow bend angle must lie in (0, pi]");
    }
    if (!std::isfinite(e.bend_plane_roll_rad) || !std::isfinite(e.inclination_rad)) {
        throw ParameterError("elbow orientation angles must be finite");
    }
}

double bend_speed_factor(const ElbowSegment& elbow, const PipeSpec& spec, double track_roll_rad) {
    const double offset = spec.inner_radius_mm * std::cos(track_roll_rad - elbow.bend_plane_roll_rad);
    return (elbow.bend_radius_mm + offset) / elbow.bend_radius_mm;
}

PipeNetwork::PipeNetwork(PipeSpec spec, std::vector<Segment> segments)
    : spec_(spec), segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw ParameterError("pipe network must contain at least one segment");
    }
    cumulative_.reserve(segments_.size() + 1);
    cumulative_.push_back(0.0);
    for (const Segment& seg : segments_) {
        validate_segment(seg, spec_);
        cumulative_.push_back(cumulative_.back() + segment_arc_length(seg));
    }
}

double centerline_length(const PipeNetwork& net) {
    return net.total_length_mm();
}

SegmentLocation segment_at(const PipeNetwork& net, double s_mm) {
    const double total = net.total_length_mm();
    if (!std::isfinite(s_mm) || s_mm < 0.0 || s_mm > total) {
        std::ostringstream msg;
        msg << "centerline coordinate " << s_mm << " mm outside [0, " << total << "]";
        throw RangeError(msg.str());
    }
    const auto& segs = net.segments();
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        if (s_mm < net.segment_start_mm(i + 1)) {
            return {i, s_mm - net.segment_start_mm(i)};
        }
    }
    return {segs.size() - 1, s_mm - net.segment_start_mm(segs.size() - 1)};
}

double track_path_length(const Segment& seg, const PipeSpec& spec, double track_roll_rad) {
    validate_segment(seg, spec);
    if (const auto* s = std::get_if<StraightSegment>(&seg)) {
        return s->length_mm;
    }
    const auto& e = std::get<ElbowSegment>(seg);
    return e.bend_angle_rad * e.bend_radius_mm * bend_speed_factor(e, spec, track_roll_rad);
}

Segment long_radius_elbow(const PipeSpec& spec, double bend_angle_rad,
                          double bend_plane_roll_rad, double inclination_rad,
                          std::optional<double> bend_radius_mm) {
    ElbowSegment elbow;
    elbow.bend_radius_mm = bend_radius_mm.value_or(3.0 * spec.inner_radius_mm);
    elbow.bend_angle_rad = bend_angle_rad;
    elbow.bend_plane_roll_rad = bend_plane_roll_rad;
    elbow.inclination_rad = inclination_rad;
    Segment seg = elbow;
    validate_segment(seg, spec);
    return seg;
}

} // namespace pipeclimb
