// SPDX-License-Identifier: MIT
//
// Canned data sets for the standard plots: phase uncertainty against
// squeezing, phase, and transmissivity for the six heralded operations
// (1/2-photon subtraction, addition, catalysis) plus the thermal and
// vacuum baselines, and (tau, r_sq) success-probability / merit grids
// with the contour levels used in the plots.  Each id writes one CSV and
// a small gnuplot stub next to it.

#pragma once

#include <string>
#include <vector>

#include "ngmzi/errors.hpp"

namespace ngmzi {

/// Known figure identifiers.
const std::vector<std::string>& figure_ids();

/// Generate the data set `id` into `outdir` (created if missing).
/// Returns the list of files written.  Throws ConfigError for an unknown
/// id and IOError on write failure.
std::vector<std::string> figure_command(const std::string& id,
                                        const std::string& outdir);

}  // namespace ngmzi
