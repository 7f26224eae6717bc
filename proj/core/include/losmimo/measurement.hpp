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

#ifndef LOSMIMO_MEASUREMENT_HPP
#define LOSMIMO_MEASUREMENT_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "losmimo/capacity.hpp"
#include "losmimo/channel.hpp"

namespace losmimo
{

// One sample of a VNA-style transmission trace. Magnitude is stored in dB
// (20*log10 of the linear amplitude, i.e. a power ratio in dB) and phase
// in degrees, the native instrument presentation; value() converts to a
// linear complex amplitude.
struct SweepPoint
{
    double frequency_hz = 0.0;
    double magnitude_db = 0.0;
    double phase_deg = 0.0;

    std::complex<double> value() const;
    double power_linear() const; // |value|^2 = 10^(magnitude_db/10)
};

// 1-based transmit/receive element pair.
struct PairIndex
{
    int tx = 0;
    int rx = 0;

    friend bool operator==(const PairIndex &, const PairIndex &) = default;
};

std::string to_string(const PairIndex &pair);

// Complex transmission versus frequency for one antenna pair (or for the
// noise-floor measurement, where the pair is ignored). Frequencies must be
// strictly increasing, at least two points, all values finite.
struct SweepTrace
{
    PairIndex pair;
    std::vector<SweepPoint> points;

    void validate() const;
};

// Optional environment metadata carried in the sweep file header block.
struct SweepMetadata
{
    std::optional<double> temperature_f;
    std::optional<double> humidity_pct;
    std::optional<double> if_bandwidth_hz;
    std::optional<int> averaging;
    std::optional<double> power_dbm;
};

// A full N x N set of sweep traces on one common frequency grid, plus an
// optional shared noise-floor trace. Immutable after construction.
class MeasurementSweep
{
  public:
    // Validates: n >= 1, distance > 0, exactly one trace per (tx, rx) pair,
    // every trace (noise included) on the identical point-by-point grid.
    MeasurementSweep(int n, double distance_m, std::vector<SweepTrace> traces,
                     std::optional<SweepTrace> noise, SweepMetadata metadata = {});

    int n() const { return n_; }
    double distance_m() const { return distance_m_; }
    const SweepMetadata &metadata() const { return metadata_; }
    const std::vector<SweepTrace> &traces() const { return traces_; }
    const std::optional<SweepTrace> &noise() const { return noise_; }
    bool has_noise() const { return noise_.has_value(); }

    const SweepTrace &trace(int tx, int rx) const; // 1-based
    std::vector<double> grid() const;
    int points() const { return static_cast<int>(traces_.front().points.size()); }

    // Index of the grid point nearest to the requested frequency. Throws
    // when the nearest point is farther away than half the local grid step
    // (in particular for frequencies outside the swept span).
    int nearest_point(double frequency_hz) const;

  private:
    int n_;
    double distance_m_;
    std::vector<SweepTrace> traces_; // tx-major order, (1,1), (1,2), ...
    std::optional<SweepTrace> noise_;
    SweepMetadata metadata_;
};

// --- THZSWEEP v1 file format -------------------------------------------
//
//   THZSWEEP v1 n=<N> distance_m=<float> points=<int>
//   # key=value                (optional: temperature_f, humidity_pct,
//                               if_bandwidth_hz, averaging, power_dbm)
//   TRACE tx=<i> rx=<j>        (or: TRACE noise)
//   <frequency_hz> <magnitude_db> <phase_deg>
//   ...                        (exactly `points` lines per trace)
//
// Single-space separated fields, ascending frequencies, period decimal
// separator. serialize_sweep emits the canonical form (shortest
// round-trip float representation, traces in tx-major order, noise last),
// for which serialize(parse(x)) is byte-identical.

// Parses the text of a sweep file. Errors name the offending line and,
// where applicable, the antenna pair.
MeasurementSweep parse_sweep_file(const std::string &text);

// Reads and parses a sweep file from disk; errors are prefixed with the path.
MeasurementSweep load_sweep_file(const std::string &path);

// Canonical serialization (see format notes above).
std::string serialize_sweep(const MeasurementSweep &sweep);

// Writes serialize_sweep(sweep) to a file; throws on I/O failure.
void write_sweep_file(const MeasurementSweep &sweep, const std::string &path);

// --- Analysis ------------------------------------------------------------

// Mean noise power over all noise-trace points with f_lo <= f <= f_hi,
// averaged in the linear power domain and reported in dB. Requires a noise
// trace and a band overlapping the grid.
double noise_floor(const MeasurementSweep &sweep, double f_lo_hz, double f_hi_hz);

struct SnrEstimate
{
    double frequency_hz = 0.0;    // grid frequency actually used
    double signal_power_db = 0.0;
    double noise_power_db = 0.0;
    double snr_db = 0.0;          // signal - noise
};

// SNR of one antenna pair at the grid point nearest to the requested
// frequency: per-point signal power minus per-point noise power, in dB.
SnrEstimate snr_estimate(const MeasurementSweep &sweep, const PairIndex &pair,
                         double frequency_hz);

// Measured channel matrix at the grid point nearest to the requested
// frequency: entry (i,j) is the complex value of trace (tx=i, rx=j).
// Tagged `measured` and carries the carrier of the selected grid point.
ChannelMatrix channel_from_sweeps(const MeasurementSweep &sweep, double frequency_hz);

// SNR policy for measured capacity: either a fixed externally supplied
// value, or an estimate from the embedded noise floor (mean per-pair
// signal power at the selected point minus noise power at that point).
struct SnrPolicy
{
    enum class Kind
    {
        fixed,
        from_noise_floor
    };

    Kind kind = Kind::from_noise_floor;
    SnrSpec fixed_value;

    static SnrPolicy fixed(const SnrSpec &snr);
    static SnrPolicy from_noise_floor();
};

std::string to_string(SnrPolicy::Kind kind);

struct MeasuredCapacity
{
    double frequency_hz = 0.0;        // grid frequency actually used
    CapacityResult result;            // frobenius-normalized capacity
    SnrSpec snr_used;
    double normalization_scale = 1.0; // factor applied to H before Eq. evaluation
    SnrPolicy::Kind snr_policy = SnrPolicy::Kind::fixed;
};

// channel_from_sweeps -> frobenius normalization -> capacity, with the SNR
// resolved per the given policy. Diagnostics record the SNR used and the
// normalization constant.
MeasuredCapacity measured_capacity(const MeasurementSweep &sweep, double frequency_hz,
                                   const SnrPolicy &policy);

// --- Synthetic fixtures ----------------------------------------------------

// Declarative description of a synthetic sweep fixture: a target channel
// matrix held constant across a uniform frequency grid, optionally with a
// flat noise floor placed snr_db below the power of entry (1,1).
struct FixtureSpec
{
    Eigen::MatrixXcd h;                // N x N, no zero entries (dB encoding)
    double f_start_hz = 0.0;
    double f_stop_hz = 0.0;
    int points = 0;                    // >= 2
    double distance_m = 0.0;
    std::optional<double> snr_db;      // embed a noise trace when set
    SweepMetadata metadata;
};

// Builds the in-memory sweep for a fixture spec; write_sweep_file produces
// the canonical file. Entries pass through the same dB/degree encoding the
// file format uses, so a parsed fixture reproduces channel_from_sweeps of
// the built sweep bit-for-bit.
MeasurementSweep build_fixture(const FixtureSpec &spec);

} // namespace losmimo

#endif
