#pragma once

#include <string>

#include "sdcm/sim.hpp"

namespace sdcm {

/// Versioned trajectory CSV header, one row per control tick, floats with
/// 17 significant digits for exact round trips.
extern const char* const kTrajectoryCsvHeader;

std::string trajectory_csv(const TrajectoryLog& log);

/// Summary document: derived constants, eigenvalues, peak CoP, tracking
/// errors, settling times and constraint activations.
std::string summary_json(const TrajectoryLog& log, const SimConfig& config);

/// Two-column (t, value) files for each logged signal, gnuplot friendly.
/// Returns the file names written into dir.
std::vector<std::string> write_plot_data(const TrajectoryLog& log,
                                         const std::string& dir);

}  // namespace sdcm
