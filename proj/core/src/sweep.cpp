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

#include "losmimo/sweep.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "losmimo/geometry.hpp"
#include "losmimo/units.hpp"

namespace losmimo
{

std::string to_string(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::distance:
        return "distance";
    case SweepVariable::spacing:
        return "spacing";
    case SweepVariable::frequency:
        return "frequency";
    case SweepVariable::snr:
        return "snr";
    }
    return "unknown";
}

SweepVariable sweep_variable_from_string(const std::string &name)
{
    if (name == "distance")
        return SweepVariable::distance;
    if (name == "spacing")
        return SweepVariable::spacing;
    if (name == "frequency")
        return SweepVariable::frequency;
    if (name == "snr")
        return SweepVariable::snr;
    throw std::invalid_argument("unknown sweep variable '" + name + "'");
}

std::string abscissa_label(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::distance:
        return "distance_m";
    case SweepVariable::spacing:
        return "spacing_m";
    case SweepVariable::frequency:
        return "frequency_hz";
    case SweepVariable::snr:
        return "snr_db";
    }
    return "abscissa";
}

void SweepSpec::validate() const
{
    if (!(start < stop))
        throw std::invalid_argument("SweepSpec: start must be < stop");
    if (count < 2)
        throw std::invalid_argument("SweepSpec: count must be >= 2");
    if (n < 1)
        throw std::invalid_argument("SweepSpec: n must be >= 1");

    const auto need = [this](const std::optional<double> &field, const char *name) {
        if (!field.has_value())
            throw std::invalid_argument(std::string("SweepSpec: ") + name +
                                        " must be fixed for a " + losmimo::to_string(variable) +
                                        " sweep");
        if (!(*field > 0.0) || !std::isfinite(*field))
            throw std::invalid_argument(std::string("SweepSpec: ") + name +
                                        " must be finite and > 0");
    };
    switch (variable)
    {
    case SweepVariable::distance:
        need(frequency_hz, "frequency");
        need(spacing_m, "spacing");
        break;
    case SweepVariable::spacing:
        need(frequency_hz, "frequency");
        need(distance_m, "distance");
        break;
    case SweepVariable::frequency:
        need(spacing_m, "spacing");
        need(distance_m, "distance");
        break;
    case SweepVariable::snr:
        need(frequency_hz, "frequency");
        need(spacing_m, "spacing");
        need(distance_m, "distance");
        break;
    }
    if (gains)
        gains->validate();
}

Normalization SweepSpec::resolved_norm() const
{
    if (norm)
        return *norm;
    // Gains other than 1 turn a phase-only channel into a measured one.
    ChannelModel effective = model;
    if (model == ChannelModel::phase_only && gains && !gains->is_unit())
        effective = ChannelModel::measured;
    return default_normalization(effective);
}

double SweepSpec::grid_point(int i) const
{
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    return start * (1.0 - t) + stop * t;
}

bool SweepResult::any_error() const
{
    for (const auto &row : rows)
        if (!row.error.empty())
            return true;
    return false;
}

SweepRow evaluate_sweep_point(const SweepSpec &spec, int index)
{
    SweepRow row;
    row.abscissa = spec.grid_point(index);
    try
    {
        double frequency = spec.frequency_hz.value_or(0.0);
        double spacing = spec.spacing_m.value_or(0.0);
        double distance = spec.distance_m.value_or(0.0);
        SnrSpec snr = spec.snr;
        switch (spec.variable)
        {
        case SweepVariable::distance:
            distance = row.abscissa;
            break;
        case SweepVariable::spacing:
            spacing = row.abscissa;
            break;
        case SweepVariable::frequency:
            frequency = row.abscissa;
            break;
        case SweepVariable::snr:
            snr = SnrSpec::from_db(row.abscissa);
            break;
        }

        const Carrier carrier = Carrier::from_frequency(frequency);
        const LinkGeometry link = build_parallel_ulas(spec.n, spacing, distance);
        ChannelMatrix h = los_channel(distance_matrix(link), carrier, spec.model);
        if (spec.gains)
            h = apply_gains(h, *spec.gains);

        const CapacityResult cap = capacity(h, snr, spec.resolved_norm());
        row.capacity_bps_hz = cap.bps_per_hz;
        row.orthogonality_defect = cap.orthogonality_defect;
        row.eigenvalues = cap.eigenvalues;
    }
    catch (const std::exception &e)
    {
        row.capacity_bps_hz = std::nan("");
        row.orthogonality_defect = std::nan("");
        row.eigenvalues.clear();
        row.error = e.what();
    }
    return row;
}

SweepResult run_sweep(const SweepSpec &spec, unsigned threads)
{
    spec.validate();

    SweepResult result;
    result.spec = spec;
    result.spec.norm = spec.resolved_norm(); // echo the resolved policy
    result.rows.resize(static_cast<std::size_t>(spec.count));

    if (threads <= 1)
    {
        for (int i = 0; i < spec.count; ++i)
            result.rows[static_cast<std::size_t>(i)] = evaluate_sweep_point(spec, i);
        return result;
    }

    const unsigned workers = std::min(threads, std::thread::hardware_concurrency() > 0
                                                   ? std::thread::hardware_concurrency()
                                                   : 4u);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (int i = static_cast<int>(w); i < spec.count; i += static_cast<int>(workers))
                result.rows[static_cast<std::size_t>(i)] = evaluate_sweep_point(spec, i);
        });
    for (auto &t : pool)
        t.join();
    return result;
}

// --- CSV ---------------------------------------------------------------------

namespace
{

// Error text in a status cell must not collide with the field separators.
std::string sanitize_status(const std::string &message)
{
    std::string out = message;
    for (char &c : out)
        if (c == ',' || c == ';' || c == '\n')
            c = ' ';
    return out;
}

std::string format_row_value(double v, bool fixed6)
{
    if (std::isnan(v))
        return "nan";
    return fixed6 ? format_fixed(v, 6) : format_sig(v, 9);
}

} // namespace

std::string sweep_csv(const SweepResult &result)
{
    const SweepSpec &spec = result.spec;
    std::string out;
    out += "# losmimo sweep v1\n";
    out += "# variable=" + to_string(spec.variable) + "\n";
    out += "# start=" + format_double(spec.start) + "\n";
    out += "# stop=" + format_double(spec.stop) + "\n";
    out += "# count=" + std::to_string(spec.count) + "\n";
    out += "# n=" + std::to_string(spec.n) + "\n";
    if (spec.frequency_hz)
        out += "# frequency_hz=" + format_double(*spec.frequency_hz) + "\n";
    if (spec.spacing_m)
        out += "# spacing_m=" + format_double(*spec.spacing_m) + "\n";
    if (spec.distance_m)
        out += "# distance_m=" + format_double(*spec.distance_m) + "\n";
    out += "# snr_db=" + format_double(spec.snr.db) + "\n";
    out += "# model=" + to_string(spec.model) + "\n";
    out += "# norm=" + to_string(spec.resolved_norm()) + "\n";
    if (spec.gains)
    {
        const auto join = [](const std::vector<double> &gains) {
            std::string s;
            for (std::size_t i = 0; i < gains.size(); ++i)
                s += (i ? ";" : "") + format_double(gains[i]);
            return s;
        };
        out += "# tx_gains=" + join(spec.gains->tx_gains) + "\n";
        out += "# rx_gains=" + join(spec.gains->rx_gains) + "\n";
    }

    out += abscissa_label(spec.variable) + ",capacity_bps_hz,orthogonality_defect,eigenvalues,status\n";
    for (const auto &row : result.rows)
    {
        out += format_sig(row.abscissa, 9);
        out += "," + format_row_value(row.capacity_bps_hz, true);
        out += "," + format_row_value(row.orthogonality_defect, false);
        out += ",";
        for (std::size_t i = 0; i < row.eigenvalues.size(); ++i)
            out += (i ? ";" : "") + format_sig(row.eigenvalues[i], 9);
        out += row.error.empty() ? ",ok" : "," + sanitize_status("error: " + row.error);
        out += "\n";
    }
    return out;
}

namespace
{

double parse_csv_double(const std::string &token, std::size_t line)
{
    if (token == "nan")
        return std::nan("");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw std::runtime_error("sweep CSV line " + std::to_string(line) +
                                 ": malformed number '" + token + "'");
    return v;
}

std::vector<std::string> split_on(const std::string &text, char sep)
{
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (begin <= text.size())
    {
        std::size_t end = text.find(sep, begin);
        if (end == std::string::npos)
            end = text.size();
        parts.emplace_back(text.substr(begin, end - begin));
        begin = end + 1;
    }
    return parts;
}

} // namespace

SweepResult parse_sweep_csv(const std::string &text)
{
    SweepResult result;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;

    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        if (line.starts_with("# "))
        {
            const std::string body = line.substr(2);
            const std::size_t eq = body.find('=');
            if (eq == std::string::npos)
                continue; // banner line
            const std::string key = body.substr(0, eq);
            const std::string value = body.substr(eq + 1);
            if (key == "variable")
                result.spec.variable = sweep_variable_from_string(value);
            else if (key == "start")
                result.spec.start = parse_csv_double(value, lineno);
            else if (key == "stop")
                result.spec.stop = parse_csv_double(value, lineno);
            else if (key == "count")
                result.spec.count = static_cast<int>(parse_csv_double(value, lineno));
            else if (key == "n")
                result.spec.n = static_cast<std::size_t>(parse_csv_double(value, lineno));
            else if (key == "frequency_hz")
                result.spec.frequency_hz = parse_csv_double(value, lineno);
            else if (key == "spacing_m")
                result.spec.spacing_m = parse_csv_double(value, lineno);
            else if (key == "distance_m")
                result.spec.distance_m = parse_csv_double(value, lineno);
            else if (key == "snr_db")
                result.spec.snr = SnrSpec::from_db(parse_csv_double(value, lineno));
            else if (key == "model")
            {
                if (value == "phase_only")
                    result.spec.model = ChannelModel::phase_only;
                else if (value == "amplitude_weighted")
                    result.spec.model = ChannelModel::amplitude_weighted;
                else if (value == "measured")
                    result.spec.model = ChannelModel::measured;
                else
                    throw std::runtime_error("sweep CSV line " + std::to_string(lineno) +
                                             ": unknown model '" + value + "'");
            }
            else if (key == "norm")
                result.spec.norm =
                    value == "frobenius" ? Normalization::frobenius : Normalization::none;
            else if (key == "tx_gains" || key == "rx_gains")
            {
                if (!result.spec.gains)
                    result.spec.gains = GainProfile{};
                auto &target = key == "tx_gains" ? result.spec.gains->tx_gains
                                                 : result.spec.gains->rx_gains;
                target.clear();
                for (const auto &g : split_on(value, ';'))
                    target.push_back(parse_csv_double(g, lineno));
            }
            continue;
        }
        if (!header_seen)
        {
            header_seen = true; // column header row
            continue;
        }

        const auto cells = split_on(line, ',');
        if (cells.size() != 5)
            throw std::runtime_error("sweep CSV line " + std::to_string(lineno) +
                                     ": expected 5 columns, got " + std::to_string(cells.size()));
        SweepRow row;
        row.abscissa = parse_csv_double(cells[0], lineno);
        row.capacity_bps_hz = parse_csv_double(cells[1], lineno);
        row.orthogonality_defect = parse_csv_double(cells[2], lineno);
        if (!cells[3].empty())
            for (const auto &ev : split_on(cells[3], ';'))
                row.eigenvalues.push_back(parse_csv_double(ev, lineno));
        if (cells[4] != "ok")
            row.error = cells[4];
        result.rows.push_back(std::move(row));
    }

    if (!header_seen)
        throw std::runtime_error("sweep CSV: missing header row");
    return result;
}

} // namespace losmimo
