// SPDX-License-Identifier: MIT
//
// Batch evaluation over parameter grids, with optional oracle spot checks,
// deterministic ordering and CSV / JSON-lines serialization.
//
// Configuration is a flat key = value text document:
//
//     # axes (at most one of r_sq | lambda, at most one of n_th | kappa);
//     # values are a single number, a comma list, or lo:hi:count
//     r_sq   = 0.05:4:80
//     tau    = 0.9
//     phi    = 0.01
//     kappa  = 1
//     mn     = 0:1, 1:0, 1:1      # heralding pairs m:n
//     out    = sweep.csv          # optional; default stdout
//     format = csv                # csv | jsonl
//     workers = 4
//     verify  = false             # oracle spot checks
//     cutoff  = 45                # oracle per-mode Fock cutoff
//     verify_stride = 17          # check every k-th record when verify=true
//
// Swept axes iterate row-major in declaration order (the last declared
// axis varies fastest); the mn pairs iterate where the mn key is declared.
// Output is bit-stable for a fixed config regardless of worker count.

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ngmzi/errors.hpp"
#include "ngmzi/interferometer.hpp"
#include "ngmzi/ngstate.hpp"

namespace ngmzi {

/// One swept (or fixed) parameter axis, in declaration order.
struct AxisSpec {
    std::string name;            // r_sq | lambda | tau | phi | n_th | kappa | mn
    std::vector<double> values;  // resolved grid (unused for mn)
};

/// Parsed sweep configuration.
struct SweepConfig {
    std::vector<AxisSpec> axes;  // declaration order, mn included as an axis
    std::vector<std::pair<int, int>> mn_pairs = {{0, 0}};
    std::string out_path;        // empty = stdout
    std::string format = "csv";  // csv | jsonl
    int workers = 1;
    bool verify = false;
    int cutoff = 45;
    int verify_stride = 17;
};

/// Parse a configuration document.  Throws ConfigError on malformed input,
/// duplicate/conflicting keys, domain violations, or swept axes with fewer
/// than 2 points declared as ranges.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig parse_sweep_config_file(const std::string& path);

/// One evaluated grid point.  `error` is empty on success; when a point
/// fails (e.g. an empty heralding branch), the record carries the message
/// and NaN values instead of aborting the sweep.
struct SweepRecord {
    std::size_t index = 0;  // position in grid order
    PhaseSensitivityRecord point;
    OpKind op_kind = OpKind::PC;
    double merit_thermal = 0.0;
    double merit_vacuum = 0.0;  // NaN unless kappa = 1/2
    std::string error;
    // Oracle annotations (populated when verify=true on sampled records):
    bool verified = false;
    double dev_probability = 0.0;
    double dev_parity = 0.0;
};

/// Evaluate the full grid.  Records are delivered to `sink` in grid order
/// (workers may compute out of order; delivery is reordered).  Returns the
/// number of records with a non-empty error field.
std::size_t run_sweep(const SweepConfig& config,
                      const std::function<void(const SweepRecord&)>& sink);

/// Convenience: collect all records.
std::vector<SweepRecord> run_sweep_collect(const SweepConfig& config);

/// Serializers.  CSV uses a fixed header with units in the column names
/// (phi_rad, delta_phi_rad; other columns dimensionless), 17 significant
/// digits, and literal inf / nan; JSON lines carry the same fields.
void write_csv_header(std::ostream& out, bool verify_columns);
void write_csv_record(std::ostream& out, const SweepRecord& rec,
                      bool verify_columns);
void write_jsonl_record(std::ostream& out, const SweepRecord& rec);

/// Format one double as CSV does (17 significant digits, inf / nan).
std::string format_number(double value);

}  // namespace ngmzi
