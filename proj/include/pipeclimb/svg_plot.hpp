#pragma once

#include <filesystem>
#include <string>

#include "pipeclimb/sim.hpp"

namespace pipeclimb {

/// Per-track speed vs time, solid lines for simulated speeds and dashed for
/// the no-slip requirement.
std::string velocity_svg(const SimTrace& trace, const std::string& title);

void write_velocity_svg(const std::filesystem::path& path, const SimTrace& trace,
                        const std::string& title);

} // namespace pipeclimb
