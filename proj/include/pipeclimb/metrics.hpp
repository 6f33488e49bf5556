#pragma once

#include <vector>

#include "pipeclimb/sim.hpp"

namespace pipeclimb {

/// Sampled speed trace with strictly increasing timestamps.
struct SpeedSeries {
    std::vector<double> timestamps_s;
    std::vector<double> values_mm_s;
};

/// Average percentage error (100/n) * sum |sim_i - ref_i| / ref_i.
/// The series must share timestamps exactly. A zero reference sample is
/// allowed only when the simulated sample is also zero (contributes 0).
double ape(const SpeedSeries& sim, const SpeedSeries& ref);

/// Per-segment and aggregate statistics for a trace: per-track APE against
/// the no-slip requirement, mean speeds, durations, peak |slip|, odometers.
/// Traction-violation counts are only known to a live run and stay 0 here.
SimSummary summarize(const SimTrace& trace, const PipeNetwork& net);

} // namespace pipeclimb
