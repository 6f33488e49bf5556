#include "pipeclimb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pipeclimb {

namespace {

void validate_series(const SpeedSeries& series, const char* label) {
    if (series.timestamps_s.empty() || series.timestamps_s.size() != series.values_mm_s.size()) {
        std::ostringstream msg;
        msg << label << " series must be non-empty with matching timestamp/value lengths";
        throw ParameterError(msg.str());
    }
    for (std::size_t i = 1; i < series.timestamps_s.size(); ++i) {
        if (!(series.timestamps_s[i] > series.timestamps_s[i - 1])) {
            std::ostringstream msg;
            msg << label << " series timestamps must be strictly increasing";
            throw ParameterError(msg.str());
        }
    }
}

} // namespace

double ape(const SpeedSeries& sim, const SpeedSeries& ref) {
    validate_series(sim, "simulated");
    validate_series(ref, "reference");
    if (sim.timestamps_s != ref.timestamps_s) {
        throw ParameterError("APE alignment error: series timestamps differ");
    }
    double sum = 0.0;
    const std::size_t n = ref.values_mm_s.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ref.values_mm_s[i];
        const double s = sim.values_mm_s[i];
        if (r == 0.0 && s == 0.0) {
            continue;  // rest sample, contributes 0
        }
        if (r <= 0.0) {
            std::ostringstream msg;
            msg << "APE undefined: non-positive reference value " << r << " at sample " << i;
            throw ParameterError(msg.str());
        }
        sum += std::abs(s - r) / r;
    }
    return 100.0 * sum / static_cast<double>(n);
}

SimSummary summarize(const SimTrace& trace, const PipeNetwork& net) {
    if (trace.records.empty()) {
        throw ParameterError("cannot summarize an empty trace");
    }

    SimSummary summary;
    summary.centerline_length_mm = centerline_length(net);
    const double dt = trace.dt_s;
    summary.total_time_s =
        trace.final_time_s > trace.records.front().t_s ? trace.final_time_s - trace.records.front().t_s
                                                       : 0.0;

    // Group contiguous runs of the same segment index.
    struct Group {
        std::size_t segment_index;
        std::size_t first, last;  // record range, inclusive
    };
    std::vector<Group> groups;
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        if (groups.empty() || groups.back().segment_index != trace.records[i].segment_index) {
            groups.push_back({trace.records[i].segment_index, i, i});
        } else {
            groups.back().last = i;
        }
    }

    std::array<double, 3> full_ape_sum{};
    std::array<std::size_t, 3> full_ape_count{};

    for (const Group& group : groups) {
        SegmentSummary seg;
        const Segment& geometry = net.segments().at(group.segment_index);
        seg.kind = is_elbow(geometry) ? "elbow" : "straight";
        seg.entry_time_s = trace.records[group.first].t_s;
        const std::size_t count = group.last - group.first + 1;
        seg.duration_s = count > 1
                             ? trace.records[group.last].t_s - trace.records[group.first].t_s + dt
                             : (trace.records.size() > 1 ? dt : 0.0);
        seg.exit_time_s = seg.entry_time_s + seg.duration_s;

        std::array<double, 3> speed_sum{};
        std::array<double, 3> err_sum{};
        for (std::size_t i = group.first; i <= group.last; ++i) {
            const TraceRecord& rec = trace.records[i];
            for (int t = 0; t < kTrackCount; ++t) {
                speed_sum[t] += rec.track_speed_mm_s[t];
                seg.max_abs_slip = std::max(seg.max_abs_slip, std::abs(rec.slip[t]));
                const double r = rec.required_speed_mm_s[t];
                const double s = rec.track_speed_mm_s[t];
                double term = 0.0;
                if (r == 0.0 && s == 0.0) {
                    term = 0.0;
                } else if (r <= 0.0) {
                    throw ParameterError("APE undefined: non-positive required speed in trace");
                } else {
                    term = std::abs(s - r) / r;
                }
                err_sum[t] += term;
                full_ape_sum[t] += term;
                ++full_ape_count[t];
            }
        }
        for (int t = 0; t < kTrackCount; ++t) {
            seg.mean_speed_mm_s[t] = speed_sum[t] / static_cast<double>(count);
            seg.ape_pct[t] = 100.0 * err_sum[t] / static_cast<double>(count);
        }
        summary.segments.push_back(std::move(seg));
    }

    double aggregate = 0.0;
    for (int t = 0; t < kTrackCount; ++t) {
        aggregate += 100.0 * full_ape_sum[t] / static_cast<double>(full_ape_count[t]);
        double distance = 0.0;
        for (const TraceRecord& rec : trace.records) {
            distance += rec.track_speed_mm_s[t] * dt;
        }
        summary.track_distance_mm[t] = distance;
    }
    summary.aggregate_ape_pct = aggregate / kTrackCount;
    return summary;
}

} // namespace pipeclimb
