#pragma once

#include <string>

#include "eslqr/simulation.hpp"

namespace eslqr {

// Fixed-column CSV of the full log: header row, then one row per inner tick
// with every float printed at 9 significant digits. Identical runs produce
// byte-identical files.
void write_csv(const SimLog& log, const std::string& path);

// Human-readable metrics plus Riccati diagnostics.
void write_summary(const SimLog& log, const TrackingMetrics& metrics,
                   const std::string& scenario, const std::string& path);

// Nominal vs. true path in the horizontal plane.
void write_traj_xy_svg(const SimLog& log, const std::string& path);

// ||dp|| and ||dtheta|| over time.
void write_error_norm_svg(const SimLog& log, const std::string& path);

}  // namespace eslqr
