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

#include "losmimo/measurement.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "losmimo/units.hpp"

namespace losmimo
{

namespace
{

[[noreturn]] void fail_at(std::size_t line, const std::string &message)
{
    std::ostringstream msg;
    msg << "line " << line << ": " << message;
    throw std::runtime_error(msg.str());
}

// Strict single-space tokenization; empty tokens (doubled separators,
// leading/trailing spaces) are format violations in canonical files.
std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t begin = 0;
    while (begin <= line.size())
    {
        const std::size_t end = std::min(line.find(' ', begin), line.size());
        fields.push_back(line.substr(begin, end - begin));
        begin = end + 1;
    }
    return fields;
}

double parse_double_field(std::string_view text, std::size_t line, const std::string &what)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        fail_at(line, "malformed " + what + " '" + std::string(text) + "'");
    if (!std::isfinite(value))
        fail_at(line, what + " must be finite, got '" + std::string(text) + "'");
    return value;
}

long parse_int_field(std::string_view text, std::size_t line, const std::string &what)
{
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        fail_at(line, "malformed " + what + " '" + std::string(text) + "'");
    return value;
}

// Accepts "key=value", returns value; the key must match exactly.
std::string_view expect_kv(std::string_view field, std::string_view key, std::size_t line)
{
    if (field.size() <= key.size() + 1 || field.substr(0, key.size()) != key ||
        field[key.size()] != '=')
        fail_at(line, "expected '" + std::string(key) + "=<value>', got '" + std::string(field) +
                          "'");
    return field.substr(key.size() + 1);
}

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

} // namespace

std::complex<double> SweepPoint::value() const
{
    return std::polar(std::pow(10.0, magnitude_db / 20.0), phase_deg * kDegToRad);
}

double SweepPoint::power_linear() const
{
    return std::pow(10.0, magnitude_db / 10.0);
}

std::string to_string(const PairIndex &pair)
{
    std::ostringstream s;
    s << "(" << pair.tx << "," << pair.rx << ")";
    return s.str();
}

void SweepTrace::validate() const
{
    if (points.size() < 2)
        throw std::invalid_argument("SweepTrace: at least two points required");
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const auto &pt = points[i];
        if (!std::isfinite(pt.frequency_hz) || !std::isfinite(pt.magnitude_db) ||
            !std::isfinite(pt.phase_deg))
            throw std::invalid_argument("SweepTrace: non-finite value at point " +
                                        std::to_string(i + 1));
        if (i > 0 && !(pt.frequency_hz > points[i - 1].frequency_hz))
            throw std::invalid_argument("SweepTrace: frequencies must be strictly increasing");
    }
}

MeasurementSweep::MeasurementSweep(int n, double distance_m, std::vector<SweepTrace> traces,
                                   std::optional<SweepTrace> noise, SweepMetadata metadata)
    : n_(n), distance_m_(distance_m), traces_(std::move(traces)), noise_(std::move(noise)),
      metadata_(metadata)
{
    if (n_ < 1)
        throw std::invalid_argument("MeasurementSweep: n must be >= 1");
    if (!(distance_m_ > 0.0) || !std::isfinite(distance_m_))
        throw std::invalid_argument("MeasurementSweep: distance must be finite and > 0");

    const std::size_t expected = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    if (traces_.size() != expected)
    {
        std::ostringstream msg;
        msg << "MeasurementSweep: expected " << expected << " pair traces for n=" << n_
            << ", got " << traces_.size();
        throw std::invalid_argument(msg.str());
    }

    for (auto &t : traces_)
    {
        t.validate();
        if (t.pair.tx < 1 || t.pair.tx > n_ || t.pair.rx < 1 || t.pair.rx > n_)
            throw std::invalid_argument("MeasurementSweep: pair " + to_string(t.pair) +
                                        " out of range for n=" + std::to_string(n_));
    }
    if (noise_)
        noise_->validate();

    // Canonical tx-major order, each pair exactly once.
    std::sort(traces_.begin(), traces_.end(), [](const SweepTrace &a, const SweepTrace &b) {
        return a.pair.tx != b.pair.tx ? a.pair.tx < b.pair.tx : a.pair.rx < b.pair.rx;
    });
    for (int tx = 1; tx <= n_; ++tx)
        for (int rx = 1; rx <= n_; ++rx)
        {
            const auto &got = traces_[static_cast<std::size_t>((tx - 1) * n_ + (rx - 1))].pair;
            if (got != PairIndex{tx, rx})
                throw std::invalid_argument("MeasurementSweep: missing trace for pair " +
                                            to_string({tx, rx}));
        }

    const auto &reference = traces_.front();
    auto check_grid = [&](const SweepTrace &t, const std::string &label) {
        if (t.points.size() != reference.points.size())
            throw std::invalid_argument("MeasurementSweep: trace " + label + " has " +
                                        std::to_string(t.points.size()) + " points but trace " +
                                        to_string(reference.pair) + " has " +
                                        std::to_string(reference.points.size()));
        for (std::size_t i = 0; i < t.points.size(); ++i)
            if (t.points[i].frequency_hz != reference.points[i].frequency_hz)
            {
                std::ostringstream msg;
                msg << "MeasurementSweep: frequency grid mismatch between traces "
                    << to_string(reference.pair) << " and " << label << " at point " << i + 1;
                throw std::invalid_argument(msg.str());
            }
    };
    for (const auto &t : traces_)
        check_grid(t, to_string(t.pair));
    if (noise_)
        check_grid(*noise_, "noise");
}

const SweepTrace &MeasurementSweep::trace(int tx, int rx) const
{
    if (tx < 1 || tx > n_ || rx < 1 || rx > n_)
        throw std::invalid_argument("MeasurementSweep: pair " + to_string({tx, rx}) +
                                    " out of range for n=" + std::to_string(n_));
    return traces_[static_cast<std::size_t>((tx - 1) * n_ + (rx - 1))];
}

std::vector<double> MeasurementSweep::grid() const
{
    std::vector<double> freqs;
    freqs.reserve(traces_.front().points.size());
    for (const auto &pt : traces_.front().points)
        freqs.push_back(pt.frequency_hz);
    return freqs;
}

int MeasurementSweep::nearest_point(double frequency_hz) const
{
    if (!std::isfinite(frequency_hz))
        throw std::invalid_argument("nearest_point: frequency must be finite");

    const auto &pts = traces_.front().points;
    const auto upper = std::lower_bound(
        pts.begin(), pts.end(), frequency_hz,
        [](const SweepPoint &pt, double f) { return pt.frequency_hz < f; });

    int idx;
    if (upper == pts.begin())
        idx = 0;
    else if (upper == pts.end())
        idx = static_cast<int>(pts.size()) - 1;
    else
    {
        const int hi = static_cast<int>(upper - pts.begin());
        const int lo = hi - 1;
        idx = (frequency_hz - pts[lo].frequency_hz <= pts[hi].frequency_hz - frequency_hz) ? lo
                                                                                           : hi;
    }

    // Reject requests farther than half the local grid step from any point.
    const auto step_at = [&](int i) {
        if (i + 1 < static_cast<int>(pts.size()))
            return pts[i + 1].frequency_hz - pts[i].frequency_hz;
        return pts[i].frequency_hz - pts[i - 1].frequency_hz;
    };
    if (std::abs(frequency_hz - pts[idx].frequency_hz) > 0.5 * step_at(idx))
    {
        std::ostringstream msg;
        msg << "frequency " << frequency_hz << " Hz is outside the swept grid ["
            << pts.front().frequency_hz << ", " << pts.back().frequency_hz
            << "] Hz (nearest point beyond half a grid step)";
        throw std::invalid_argument(msg.str());
    }
    return idx;
}

// --- file format -----------------------------------------------------------

MeasurementSweep parse_sweep_file(const std::string &text)
{
    std::vector<std::string_view> lines;
    {
        std::string_view rest = text;
        while (!rest.empty())
        {
            const std::size_t nl = rest.find('\n');
            if (nl == std::string_view::npos)
            {
                lines.push_back(rest); // final line without trailing newline
                break;
            }
            lines.push_back(rest.substr(0, nl));
            rest = rest.substr(nl + 1);
        }
    }
    if (lines.empty())
        fail_at(1, "empty file");

    // Header: THZSWEEP v1 n=<N> distance_m=<float> points=<int>
    std::size_t lineno = 1;
    {
        const auto fields = split_fields(lines[0]);
        if (fields.size() != 5 || fields[0] != "THZSWEEP")
            fail_at(1, "malformed header, expected 'THZSWEEP v1 n=<N> distance_m=<d> points=<p>'");
        if (fields[1] != "v1")
            fail_at(1, "unsupported format version '" + std::string(fields[1]) + "'");
    }
    const auto header = split_fields(lines[0]);
    const long n = parse_int_field(expect_kv(header[2], "n", 1), 1, "n");
    const double distance_m =
        parse_double_field(expect_kv(header[3], "distance_m", 1), 1, "distance_m");
    const long points = parse_int_field(expect_kv(header[4], "points", 1), 1, "points");
    if (n < 1)
        fail_at(1, "n must be >= 1");
    if (points < 2)
        fail_at(1, "points must be >= 2");

    // Optional metadata lines.
    SweepMetadata metadata;
    std::size_t cursor = 1;
    while (cursor < lines.size() && lines[cursor].starts_with("# "))
    {
        lineno = cursor + 1;
        const std::string_view body = lines[cursor].substr(2);
        const std::size_t eq = body.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 >= body.size())
            fail_at(lineno, "malformed metadata line, expected '# key=value'");
        const std::string_view key = body.substr(0, eq);
        const std::string_view value = body.substr(eq + 1);
        if (key == "temperature_f")
            metadata.temperature_f = parse_double_field(value, lineno, "temperature_f");
        else if (key == "humidity_pct")
            metadata.humidity_pct = parse_double_field(value, lineno, "humidity_pct");
        else if (key == "if_bandwidth_hz")
            metadata.if_bandwidth_hz = parse_double_field(value, lineno, "if_bandwidth_hz");
        else if (key == "averaging")
            metadata.averaging = static_cast<int>(parse_int_field(value, lineno, "averaging"));
        else if (key == "power_dbm")
            metadata.power_dbm = parse_double_field(value, lineno, "power_dbm");
        else
            fail_at(lineno, "unknown metadata key '" + std::string(key) + "'");
        ++cursor;
    }

    // Trace blocks.
    std::vector<SweepTrace> traces;
    std::optional<SweepTrace> noise;
    while (cursor < lines.size())
    {
        lineno = cursor + 1;
        if (lines[cursor].empty() && cursor + 1 == lines.size())
            break; // trailing newline at end of file
        const auto fields = split_fields(lines[cursor]);
        if (fields.empty() || fields[0] != "TRACE")
            fail_at(lineno, "expected 'TRACE tx=<i> rx=<j>' or 'TRACE noise', got '" +
                                std::string(lines[cursor]) + "'");

        SweepTrace trace;
        bool is_noise = false;
        if (fields.size() == 2 && fields[1] == "noise")
        {
            is_noise = true;
            if (noise.has_value())
                fail_at(lineno, "duplicate noise trace");
        }
        else if (fields.size() == 3)
        {
            trace.pair.tx = static_cast<int>(parse_int_field(expect_kv(fields[1], "tx", lineno),
                                                             lineno, "tx index"));
            trace.pair.rx = static_cast<int>(parse_int_field(expect_kv(fields[2], "rx", lineno),
                                                             lineno, "rx index"));
            for (const auto &existing : traces)
                if (existing.pair == trace.pair)
                    fail_at(lineno, "duplicate trace for pair " + to_string(trace.pair));
        }
        else
            fail_at(lineno, "malformed TRACE line '" + std::string(lines[cursor]) + "'");
        ++cursor;

        trace.points.reserve(static_cast<std::size_t>(points));
        for (long i = 0; i < points; ++i, ++cursor)
        {
            lineno = cursor + 1;
            if (cursor >= lines.size() || lines[cursor].starts_with("TRACE"))
                fail_at(lineno, "trace " + (is_noise ? std::string("noise") : to_string(trace.pair)) +
                                    " truncated: expected " + std::to_string(points) +
                                    " points, got " + std::to_string(i));
            const auto data = split_fields(lines[cursor]);
            if (data.size() != 3)
                fail_at(lineno, "expected '<frequency_hz> <magnitude_db> <phase_deg>', got '" +
                                    std::string(lines[cursor]) + "'");
            SweepPoint pt;
            pt.frequency_hz = parse_double_field(data[0], lineno, "frequency");
            pt.magnitude_db = parse_double_field(data[1], lineno, "magnitude");
            pt.phase_deg = parse_double_field(data[2], lineno, "phase");
            if (!trace.points.empty() && !(pt.frequency_hz > trace.points.back().frequency_hz))
                fail_at(lineno, "frequencies must be strictly increasing");
            trace.points.push_back(pt);
        }

        if (is_noise)
            noise = std::move(trace);
        else
            traces.push_back(std::move(trace));
    }

    try
    {
        return MeasurementSweep(static_cast<int>(n), distance_m, std::move(traces),
                                std::move(noise), metadata);
    }
    catch (const std::invalid_argument &e)
    {
        throw std::runtime_error(e.what()); // construction errors are data errors here
    }
}

MeasurementSweep load_sweep_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try
    {
        return parse_sweep_file(buffer.str());
    }
    catch (const std::exception &e)
    {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string serialize_sweep(const MeasurementSweep &sweep)
{
    std::string out;
    out += "THZSWEEP v1 n=" + std::to_string(sweep.n()) +
           " distance_m=" + format_double(sweep.distance_m()) +
           " points=" + std::to_string(sweep.points()) + "\n";

    const auto &meta = sweep.metadata();
    if (meta.temperature_f)
        out += "# temperature_f=" + format_double(*meta.temperature_f) + "\n";
    if (meta.humidity_pct)
        out += "# humidity_pct=" + format_double(*meta.humidity_pct) + "\n";
    if (meta.if_bandwidth_hz)
        out += "# if_bandwidth_hz=" + format_double(*meta.if_bandwidth_hz) + "\n";
    if (meta.averaging)
        out += "# averaging=" + std::to_string(*meta.averaging) + "\n";
    if (meta.power_dbm)
        out += "# power_dbm=" + format_double(*meta.power_dbm) + "\n";

    const auto emit_points = [&out](const SweepTrace &t) {
        for (const auto &pt : t.points)
            out += format_double(pt.frequency_hz) + " " + format_double(pt.magnitude_db) + " " +
                   format_double(pt.phase_deg) + "\n";
    };
    for (const auto &t : sweep.traces())
    {
        out += "TRACE tx=" + std::to_string(t.pair.tx) + " rx=" + std::to_string(t.pair.rx) + "\n";
        emit_points(t);
    }
    if (sweep.noise())
    {
        out += "TRACE noise\n";
        emit_points(*sweep.noise());
    }
    return out;
}

void write_sweep_file(const MeasurementSweep &sweep, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open file for writing");
    out << serialize_sweep(sweep);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

// --- analysis ----------------------------------------------------------------

double noise_floor(const MeasurementSweep &sweep, double f_lo_hz, double f_hi_hz)
{
    if (!sweep.has_noise())
        throw std::invalid_argument("noise_floor: sweep has no noise trace");
    if (!(f_lo_hz <= f_hi_hz))
        throw std::invalid_argument("noise_floor: empty band (f_lo > f_hi)");

    double power_sum = 0.0;
    std::size_t count = 0;
    for (const auto &pt : sweep.noise()->points)
        if (pt.frequency_hz >= f_lo_hz && pt.frequency_hz <= f_hi_hz)
        {
            power_sum += pt.power_linear(); // average in the linear power domain
            ++count;
        }
    if (count == 0)
        throw std::invalid_argument("noise_floor: band contains no grid points");
    return 10.0 * std::log10(power_sum / static_cast<double>(count));
}

SnrEstimate snr_estimate(const MeasurementSweep &sweep, const PairIndex &pair,
                         double frequency_hz)
{
    if (!sweep.has_noise())
        throw std::invalid_argument("snr_estimate: sweep has no noise trace");

    const int idx = sweep.nearest_point(frequency_hz);
    const auto &signal = sweep.trace(pair.tx, pair.rx).points[static_cast<std::size_t>(idx)];
    const auto &noise = sweep.noise()->points[static_cast<std::size_t>(idx)];

    SnrEstimate est;
    est.frequency_hz = signal.frequency_hz;
    est.signal_power_db = signal.magnitude_db;
    est.noise_power_db = noise.magnitude_db;
    est.snr_db = est.signal_power_db - est.noise_power_db;
    return est;
}

ChannelMatrix channel_from_sweeps(const MeasurementSweep &sweep, double frequency_hz)
{
    const int idx = sweep.nearest_point(frequency_hz);
    const auto n = static_cast<Eigen::Index>(sweep.n());
    Eigen::MatrixXcd h(n, n);
    for (int tx = 1; tx <= sweep.n(); ++tx)
        for (int rx = 1; rx <= sweep.n(); ++rx)
            h(tx - 1, rx - 1) = sweep.trace(tx, rx).points[static_cast<std::size_t>(idx)].value();

    const double grid_freq =
        sweep.traces().front().points[static_cast<std::size_t>(idx)].frequency_hz;
    return {std::move(h), ChannelModel::measured, Carrier::from_frequency(grid_freq)};
}

SnrPolicy SnrPolicy::fixed(const SnrSpec &snr)
{
    SnrPolicy p;
    p.kind = Kind::fixed;
    p.fixed_value = snr;
    return p;
}

SnrPolicy SnrPolicy::from_noise_floor()
{
    SnrPolicy p;
    p.kind = Kind::from_noise_floor;
    return p;
}

std::string to_string(SnrPolicy::Kind kind)
{
    return kind == SnrPolicy::Kind::fixed ? "fixed" : "from_noise_floor";
}

MeasuredCapacity measured_capacity(const MeasurementSweep &sweep, double frequency_hz,
                                   const SnrPolicy &policy)
{
    const int idx = sweep.nearest_point(frequency_hz);
    const ChannelMatrix h = channel_from_sweeps(sweep, frequency_hz);

    SnrSpec snr = policy.fixed_value;
    if (policy.kind == SnrPolicy::Kind::from_noise_floor)
    {
        if (!sweep.has_noise())
            throw std::invalid_argument("measured_capacity: SNR from noise floor requested "
                                        "but sweep has no noise trace");
        // Mean per-pair signal power at the selected point vs noise power there.
        double signal_power = 0.0;
        for (const auto &t : sweep.traces())
            signal_power += t.points[static_cast<std::size_t>(idx)].power_linear();
        signal_power /= static_cast<double>(sweep.traces().size());
        const double noise_db =
            sweep.noise()->points[static_cast<std::size_t>(idx)].magnitude_db;
        snr = SnrSpec::from_db(10.0 * std::log10(signal_power) - noise_db);
    }

    MeasuredCapacity out;
    out.frequency_hz = h.carrier()->frequency_hz;
    out.normalization_scale = normalize_frobenius(h.entries()).second;
    out.result = capacity(h, snr, Normalization::frobenius);
    out.snr_used = snr;
    out.snr_policy = policy.kind;
    return out;
}

// --- fixtures ----------------------------------------------------------------

MeasurementSweep build_fixture(const FixtureSpec &spec)
{
    const auto n = spec.h.rows();
    if (n == 0 || n != spec.h.cols())
        throw std::invalid_argument("build_fixture: channel matrix must be square and non-empty");
    if (spec.points < 2)
        throw std::invalid_argument("build_fixture: at least two grid points required");
    if (!(spec.f_start_hz > 0.0) || !(spec.f_stop_hz > spec.f_start_hz))
        throw std::invalid_argument("build_fixture: need 0 < f_start < f_stop");

    std::vector<double> grid(static_cast<std::size_t>(spec.points));
    for (int i = 0; i < spec.points; ++i)
    {
        const double t = static_cast<double>(i) / static_cast<double>(spec.points - 1);
        grid[static_cast<std::size_t>(i)] = spec.f_start_hz * (1.0 - t) + spec.f_stop_hz * t;
    }

    std::vector<SweepTrace> traces;
    traces.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (Eigen::Index tx = 0; tx < n; ++tx)
        for (Eigen::Index rx = 0; rx < n; ++rx)
        {
            const std::complex<double> value = spec.h(tx, rx);
            if (std::abs(value) == 0.0)
            {
                std::ostringstream msg;
                msg << "build_fixture: entry (" << tx + 1 << "," << rx + 1
                    << ") is zero and cannot be encoded in dB";
                throw std::invalid_argument(msg.str());
            }
            SweepTrace trace;
            trace.pair = {static_cast<int>(tx) + 1, static_cast<int>(rx) + 1};
            const double mag_db = 20.0 * std::log10(std::abs(value));
            const double phase_deg = std::arg(value) * kRadToDeg;
            for (double f : grid)
                trace.points.push_back({f, mag_db, phase_deg});
            traces.push_back(std::move(trace));
        }

    std::optional<SweepTrace> noise;
    if (spec.snr_db)
    {
        // Flat noise floor placed snr_db below the power of entry (1,1).
        const double reference_db = 20.0 * std::log10(std::abs(spec.h(0, 0)));
        SweepTrace trace;
        trace.pair = {0, 0};
        for (double f : grid)
            trace.points.push_back({f, reference_db - *spec.snr_db, 0.0});
        noise = std::move(trace);
    }

    return MeasurementSweep(static_cast<int>(n), spec.distance_m, std::move(traces),
                            std::move(noise), spec.metadata);
}

} // namespace losmimo
