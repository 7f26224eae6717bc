// SPDX-License-Identifier: Apache-2.0
//
// losmimo - line-of-sight MIMO channel design and analysis toolkit
// Copyright (C) 2026 losmimo contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LOSMIMO_SWEEP_HPP
#define LOSMIMO_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "losmimo/capacity.hpp"
#include "losmimo/channel.hpp"

namespace losmimo
{

enum class SweepVariable
{
    distance,
    spacing,
    frequency,
    snr
};

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string &name);

// Parameter sweep over one variable with all other link parameters held
// fixed. The grid is `count` evenly spaced points from start to stop
// inclusive (strictly increasing). Fixed parameters irrelevant to the
// swept variable are ignored; the ones it needs must be present:
//   distance  -> frequency, spacing
//   spacing   -> frequency, distance
//   frequency -> spacing, distance
//   snr       -> frequency, spacing, distance
struct SweepSpec
{
    SweepVariable variable = SweepVariable::distance;
    double start = 0.0; // in the variable's natural unit (m, Hz or dB)
    double stop = 0.0;
    int count = 2;

    std::size_t n = 2; // elements per array
    std::optional<double> frequency_hz;
    std::optional<double> spacing_m;
    std::optional<double> distance_m;
    SnrSpec snr = SnrSpec::from_db(0.0);
    ChannelModel model = ChannelModel::phase_only;
    std::optional<Normalization> norm;  // resolved per model when absent
    std::optional<GainProfile> gains;   // applied after channel construction

    void validate() const;
    Normalization resolved_norm() const;

    // Grid helper: abscissa of row i, start + (stop-start)*i/(count-1).
    double grid_point(int i) const;
};

struct SweepRow
{
    double abscissa = 0.0;
    double capacity_bps_hz = 0.0;
    double orthogonality_defect = 0.0;
    std::vector<double> eigenvalues;
    std::string error; // empty on success; row flagged otherwise
};

struct SweepResult
{
    SweepSpec spec; // fully resolved provenance echo
    std::vector<SweepRow> rows;

    bool any_error() const;
};

// Evaluates one grid point of the sweep (pure).
SweepRow evaluate_sweep_point(const SweepSpec &spec, int index);

// Runs the whole sweep. Rows are independent pure computations; with
// threads > 1 they are evaluated concurrently and assembled in order,
// producing the identical result row-for-row. A degenerate grid point
// (e.g. a non-positive distance) flags its row and the sweep continues.
SweepResult run_sweep(const SweepSpec &spec, unsigned threads = 1);

// --- CSV ------------------------------------------------------------------
//
// Deterministic CSV with '#'-prefixed provenance lines above the header:
//
//   # losmimo sweep v1
//   # variable=distance
//   # start=... stop=... count=...          (one key per line)
//   distance_m,capacity_bps_hz,orthogonality_defect,eigenvalues,status
//   0.00440871263,2.000000,0.0001117,2.00022;1.99978,ok
//
// Lengths and frequencies carry 9 significant digits, capacity 6 decimal
// places; eigenvalues are ';'-joined. Identical input produces identical
// bytes.

std::string sweep_csv(const SweepResult &result);

// Inverse of sweep_csv at the stated precision (used for round-trip
// checks and plotting from saved results).
SweepResult parse_sweep_csv(const std::string &text);

// Column title of the abscissa for a sweep variable ("distance_m", ...).
std::string abscissa_label(SweepVariable v);

} // namespace losmimo

#endif
