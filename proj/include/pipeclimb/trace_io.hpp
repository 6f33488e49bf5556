#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pipeclimb/sim.hpp"

namespace pipeclimb {

/// Writes content to path via a temp file + rename in the same directory,
/// so re-runs replace outputs atomically.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

inline constexpr const char* kTraceHeader =
    "t_s,s_mm,segment_idx,vA_mm_s,vB_mm_s,vC_mm_s,reqA_mm_s,reqB_mm_s,reqC_mm_s,"
    "slipA,slipB,slipC,NA_N,NB_N,NC_N";

std::string trace_to_csv(const SimTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace);

/// Parses a trace.csv produced by write_trace_csv. dt and the final time are
/// reconstructed from the timestamps.
SimTrace read_trace_csv(const std::filesystem::path& path);

std::string summary_to_json(const SimSummary& summary);
void write_summary_json(const std::filesystem::path& path, const SimSummary& summary);

} // namespace pipeclimb
