#pragma once

#include <iosfwd>
#include <span>

#include "hpc/harness.hpp"

namespace hpc {

/// Self-contained SVG heatmap of risk over (N, gamma), one panel per
/// detector: green = risk 0, yellow = 1, red = 2, grey = error cell.
void write_phase_svg(std::span<const PhaseRow> rows, std::ostream& out);

} // namespace hpc
