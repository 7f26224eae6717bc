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
//
// losmimo command line front end.
//
//   theory capacity    capacity of one geometry/carrier/SNR point
//   theory sweep       capacity sweep over distance/spacing/frequency/snr
//   design spacing     optimal inter-antenna spacing for a distance
//   design distances   optimal distances for a fixed spacing (p = 0..p_max)
//   measure capacity   capacity from a THZSWEEP measurement file
//   measure snr        per-pair SNR from a THZSWEEP measurement file
//   fixture generate   write a canonical synthetic THZSWEEP file
//
// Exit codes: 0 success, 1 data/runtime error, 2 usage error.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "losmimo/losmimo.hpp"

namespace
{

using namespace losmimo;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

double freq_flag(const std::string &text)
{
    try
    {
        const double hz = parse_frequency(text);
        if (!(hz > 0.0))
            throw UsageError("frequency must be > 0, got '" + text + "'");
        return hz;
    }
    catch (const UsageError &)
    {
        throw;
    }
    catch (const std::exception &e)
    {
        throw UsageError(e.what());
    }
}

double length_flag(const std::string &text)
{
    try
    {
        return parse_length(text);
    }
    catch (const std::exception &e)
    {
        throw UsageError(e.what());
    }
}

double plain_double_flag(const std::string &text, const std::string &what)
{
    try
    {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception &)
    {
        throw UsageError("malformed " + what + " '" + text + "'");
    }
}

std::vector<double> gains_flag(const std::string &text)
{
    std::vector<double> gains;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        gains.push_back(plain_double_flag(item, "gain"));
    if (gains.empty())
        throw UsageError("empty gain list");
    return gains;
}

std::optional<Normalization> norm_flag(const std::string &text)
{
    if (text.empty())
        return std::nullopt; // resolved per model
    if (text == "none")
        return Normalization::none;
    if (text == "frobenius")
        return Normalization::frobenius;
    throw UsageError("--norm must be 'none' or 'frobenius', got '" + text + "'");
}

ChannelModel model_flag(const std::string &text)
{
    if (text == "phase" || text == "phase_only")
        return ChannelModel::phase_only;
    if (text == "amplitude" || text == "amplitude_weighted")
        return ChannelModel::amplitude_weighted;
    throw UsageError("--model must be 'phase' or 'amplitude', got '" + text + "'");
}

// Matrix syntax: rows ';'-separated, entries ','-separated, each entry
// "<re>" or "<re>:<im>". Example 2x2: "1:0,1:0;1:0,-1:0".
Eigen::MatrixXcd matrix_flag(const std::string &text)
{
    std::vector<std::vector<std::complex<double>>> rows;
    std::stringstream row_stream(text);
    std::string row_text;
    while (std::getline(row_stream, row_text, ';'))
    {
        std::vector<std::complex<double>> row;
        std::stringstream entry_stream(row_text);
        std::string entry;
        while (std::getline(entry_stream, entry, ','))
        {
            const std::size_t colon = entry.find(':');
            const double re = plain_double_flag(entry.substr(0, colon), "matrix entry");
            const double im = colon == std::string::npos
                                  ? 0.0
                                  : plain_double_flag(entry.substr(colon + 1), "matrix entry");
            row.emplace_back(re, im);
        }
        if (row.empty())
            throw UsageError("empty matrix row in '" + text + "'");
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw UsageError("empty matrix '" + text + "'");
    const std::size_t n = rows.size();
    Eigen::MatrixXcd h(n, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (rows[i].size() != n)
            throw UsageError("matrix must be square; row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(n));
        for (std::size_t j = 0; j < n; ++j)
            h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return h;
}

void write_output(const std::string &text, const std::string &output_path)
{
    if (output_path.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out)
        throw std::runtime_error(output_path + ": cannot open file for writing");
    out << text;
    if (!out)
        throw std::runtime_error(output_path + ": write failed");
}

std::string join_eigenvalues(const std::vector<double> &eigenvalues)
{
    std::string s;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        s += (i ? ";" : "") + format_sig(eigenvalues[i], 9);
    return s;
}

// --- flag containers ---------------------------------------------------------

struct TheoryFlags
{
    std::string frequency;
    std::string distance;
    std::string spacing;
    double snr_db = 0.0;
    std::string model = "phase";
    std::string norm;
    std::size_t n = 2;
    std::string tx_gains;
    std::string rx_gains;
    std::string output;
};

struct SweepFlags : TheoryFlags
{
    std::string variable;
    std::string start;
    std::string stop;
    int count = 0;
    std::string step;
    unsigned threads = 1;
    std::string plot;
};

struct DesignFlags
{
    std::string frequency;
    std::string distance;
    std::string spacing;
    int p = 0;
    int p_max = 0;
    bool refine = false;
    std::string output;
};

struct MeasureFlags
{
    std::string file;
    std::vector<std::string> frequencies;
    std::optional<double> snr_db;
    int tx = 1;
    int rx = 1;
    std::string output;
};

struct FixtureFlags
{
    std::string output;
    std::string f_start;
    std::string f_stop;
    int points = 0;
    std::string distance;
    std::optional<double> snr_db;
    std::string preset;
    std::string matrix;
};

std::optional<GainProfile> resolve_gains(const TheoryFlags &flags, std::size_t n)
{
    if (flags.tx_gains.empty() && flags.rx_gains.empty())
        return std::nullopt;
    GainProfile gains;
    gains.tx_gains = flags.tx_gains.empty() ? std::vector<double>(n, 1.0)
                                            : gains_flag(flags.tx_gains);
    gains.rx_gains = flags.rx_gains.empty() ? std::vector<double>(n, 1.0)
                                            : gains_flag(flags.rx_gains);
    return gains;
}

// --- subcommand bodies ---------------------------------------------------------

int cmd_theory_capacity(const TheoryFlags &flags)
{
    const Carrier carrier = Carrier::from_frequency(freq_flag(flags.frequency));
    const double distance = length_flag(flags.distance);
    const double spacing = length_flag(flags.spacing);
    const ChannelModel model = model_flag(flags.model);
    const SnrSpec snr = SnrSpec::from_db(flags.snr_db);

    ChannelMatrix h = los_channel(distance_matrix(build_parallel_ulas(flags.n, spacing, distance)),
                                  carrier, model);
    const auto gains = resolve_gains(flags, flags.n);
    if (gains)
        h = apply_gains(h, *gains);
    const Normalization norm = norm_flag(flags.norm).value_or(default_normalization(h.model()));
    const CapacityResult cap = capacity(h, snr, norm);

    std::string out;
    out += "# losmimo theory capacity v1\n";
    out += "# frequency_hz=" + format_double(carrier.frequency_hz) +
           " distance_m=" + format_double(distance) + " spacing_m=" + format_double(spacing) +
           " n=" + std::to_string(flags.n) + " snr_db=" + format_double(snr.db) +
           " model=" + to_string(model) + " norm=" + to_string(norm) + "\n";
    out += "capacity_bps_hz,orthogonality_defect,eigenvalues\n";
    out += format_fixed(cap.bps_per_hz, 6) + "," + format_sig(cap.orthogonality_defect, 9) + "," +
           join_eigenvalues(cap.eigenvalues) + "\n";
    write_output(out, flags.output);
    return 0;
}

int cmd_theory_sweep(const SweepFlags &flags)
{
    SweepSpec spec;
    spec.variable = [&] {
        try
        {
            return sweep_variable_from_string(flags.variable);
        }
        catch (const std::exception &e)
        {
            throw UsageError(e.what());
        }
    }();

    const auto parse_abscissa = [&](const std::string &text) {
        switch (spec.variable)
        {
        case SweepVariable::distance:
        case SweepVariable::spacing:
            return length_flag(text);
        case SweepVariable::frequency:
            return freq_flag(text);
        case SweepVariable::snr:
            return plain_double_flag(text, "snr_db");
        }
        return 0.0;
    };
    spec.start = parse_abscissa(flags.start);
    spec.stop = parse_abscissa(flags.stop);

    if (!flags.step.empty())
    {
        const double step = parse_abscissa(flags.step);
        if (!(step > 0.0))
            throw UsageError("--step must be > 0");
        if (!(spec.start < spec.stop))
            throw UsageError("--start must be < --stop");
        spec.count = static_cast<int>(std::floor((spec.stop - spec.start) / step + 1e-9)) + 1;
        spec.stop = spec.start + step * (spec.count - 1);
        if (spec.count < 2)
            throw UsageError("--step larger than the sweep range");
    }
    else
        spec.count = flags.count > 0 ? flags.count : 200;

    spec.n = flags.n;
    if (!flags.frequency.empty())
        spec.frequency_hz = freq_flag(flags.frequency);
    if (!flags.spacing.empty())
        spec.spacing_m = length_flag(flags.spacing);
    if (!flags.distance.empty())
        spec.distance_m = length_flag(flags.distance);
    spec.snr = SnrSpec::from_db(flags.snr_db);
    spec.model = model_flag(flags.model);
    spec.norm = norm_flag(flags.norm);
    spec.gains = resolve_gains(flags, flags.n);

    try
    {
        spec.validate();
    }
    catch (const std::exception &e)
    {
        throw UsageError(e.what()); // missing/invalid fixed parameters
    }

    const SweepResult result = run_sweep(spec, flags.threads);
    write_output(sweep_csv(result), flags.output);
    if (!flags.plot.empty())
        emit_plot(result, flags.plot);

    if (result.any_error())
    {
        std::cerr << "losmimo: sweep finished with flagged rows (degenerate grid points)\n";
        return 1;
    }
    return 0;
}

std::string design_csv(const std::vector<DesignSolution> &solutions, const std::string &banner)
{
    std::string out;
    out += "# losmimo design v1\n";
    out += "# " + banner + "\n";
    out += "p,spacing_m,distance_m,path_difference_m,residual_m,far_field\n";
    for (const auto &s : solutions)
        out += std::to_string(s.p) + "," + format_sig(s.spacing_m, 9) + "," +
               format_sig(s.distance_m, 9) + "," + format_sig(s.path_difference_m, 9) + "," +
               format_sig(s.residual_m, 9) + "," + (s.far_field ? "true" : "false") + "\n";
    return out;
}

int cmd_design_spacing(const DesignFlags &flags)
{
    const Carrier carrier = Carrier::from_frequency(freq_flag(flags.frequency));
    const double distance = length_flag(flags.distance);
    if (flags.p < 0)
        throw UsageError("-p must be >= 0");

    DesignSolution sol = optimal_spacing(distance, carrier, flags.p);
    if (flags.refine)
        sol = refine_exact(sol, carrier, RefineVariable::spacing);

    write_output(design_csv({sol}, "spacing for distance_m=" + format_double(distance) +
                                       " frequency_hz=" + format_double(carrier.frequency_hz) +
                                       " p=" + std::to_string(flags.p) +
                                       (flags.refine ? " refined=true" : "")),
                 flags.output);
    return 0;
}

int cmd_design_distances(const DesignFlags &flags)
{
    const Carrier carrier = Carrier::from_frequency(freq_flag(flags.frequency));
    const double spacing = length_flag(flags.spacing);
    if (flags.p_max < 0)
        throw UsageError("--p-max must be >= 0");

    std::vector<DesignSolution> solutions = optimal_distances(spacing, carrier, flags.p_max);
    if (flags.refine)
        for (auto &s : solutions)
            s = refine_exact(s, carrier, RefineVariable::distance);

    write_output(design_csv(solutions,
                            "distances for spacing_m=" + format_double(spacing) +
                                " frequency_hz=" + format_double(carrier.frequency_hz) +
                                " p_max=" + std::to_string(flags.p_max) +
                                (flags.refine ? " refined=true" : "")),
                 flags.output);
    return 0;
}

int cmd_measure_capacity(const MeasureFlags &flags)
{
    const MeasurementSweep sweep = load_sweep_file(flags.file);
    const SnrPolicy policy = flags.snr_db ? SnrPolicy::fixed(SnrSpec::from_db(*flags.snr_db))
                                          : SnrPolicy::from_noise_floor();

    std::string out;
    out += "# losmimo measure capacity v1\n";
    out += "# file=" + flags.file + " n=" + std::to_string(sweep.n()) +
           " distance_m=" + format_double(sweep.distance_m()) +
           " snr_policy=" + to_string(policy.kind) + " norm=frobenius\n";
    out += "frequency_hz,snr_db,capacity_bps_hz,orthogonality_defect,eigenvalues,norm_scale,"
           "snr_policy\n";
    for (const auto &freq_text : flags.frequencies)
    {
        const MeasuredCapacity mc = measured_capacity(sweep, freq_flag(freq_text), policy);
        out += format_sig(mc.frequency_hz, 9) + "," + format_fixed(mc.snr_used.db, 6) + "," +
               format_fixed(mc.result.bps_per_hz, 6) + "," +
               format_sig(mc.result.orthogonality_defect, 9) + "," +
               join_eigenvalues(mc.result.eigenvalues) + "," +
               format_sig(mc.normalization_scale, 9) + "," + to_string(mc.snr_policy) + "\n";
    }
    write_output(out, flags.output);
    return 0;
}

int cmd_measure_snr(const MeasureFlags &flags)
{
    const MeasurementSweep sweep = load_sweep_file(flags.file);

    std::string out;
    out += "# losmimo measure snr v1\n";
    out += "# file=" + flags.file + " tx=" + std::to_string(flags.tx) +
           " rx=" + std::to_string(flags.rx) + "\n";
    out += "frequency_hz,signal_power_db,noise_power_db,snr_db\n";
    for (const auto &freq_text : flags.frequencies)
    {
        const SnrEstimate est =
            snr_estimate(sweep, {flags.tx, flags.rx}, freq_flag(freq_text));
        out += format_sig(est.frequency_hz, 9) + "," + format_fixed(est.signal_power_db, 6) +
               "," + format_fixed(est.noise_power_db, 6) + "," + format_fixed(est.snr_db, 6) +
               "\n";
    }
    write_output(out, flags.output);
    return 0;
}

int cmd_fixture_generate(const FixtureFlags &flags)
{
    FixtureSpec spec;
    if (!flags.matrix.empty() && !flags.preset.empty())
        throw UsageError("--matrix and --preset are mutually exclusive");
    if (!flags.matrix.empty())
        spec.h = matrix_flag(flags.matrix);
    else if (flags.preset == "orthogonal")
    {
        spec.h.resize(2, 2);
        spec.h << 1.0, 1.0, 1.0, -1.0;
    }
    else if (flags.preset == "ones")
    {
        spec.h = Eigen::MatrixXcd::Ones(2, 2);
    }
    else if (flags.preset.empty())
        throw UsageError("one of --matrix or --preset is required");
    else
        throw UsageError("unknown preset '" + flags.preset + "' (try: orthogonal, ones)");

    spec.f_start_hz = freq_flag(flags.f_start);
    spec.f_stop_hz = freq_flag(flags.f_stop);
    spec.points = flags.points;
    spec.distance_m = length_flag(flags.distance);
    spec.snr_db = flags.snr_db;
    // Bench defaults mirrored from the measurement campaign conditions.
    spec.metadata.temperature_f = 72.0;
    spec.metadata.humidity_pct = 40.0;
    spec.metadata.if_bandwidth_hz = 1000.0;
    spec.metadata.averaging = 10;
    spec.metadata.power_dbm = 5.0;

    write_sweep_file(build_fixture(spec), flags.output);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"losmimo - LoS MIMO channel design and analysis toolkit"};
    app.require_subcommand(1);

    TheoryFlags theory_flags;
    SweepFlags sweep_flags;
    DesignFlags design_flags;
    MeasureFlags measure_flags;
    FixtureFlags fixture_flags;

    // theory ------------------------------------------------------------------
    auto *theory = app.add_subcommand("theory", "Theoretical channel capacity");
    theory->require_subcommand(1);

    auto *tc = theory->add_subcommand("capacity", "Capacity of one link configuration");
    tc->add_option("-f,--frequency", theory_flags.frequency, "Carrier frequency (Hz, GHz...)")
        ->required();
    tc->add_option("-d,--distance", theory_flags.distance, "Tx-rx distance (m, cm, mm)")
        ->required();
    tc->add_option("-s,--spacing", theory_flags.spacing, "Inter-antenna spacing (m, cm, mm)")
        ->required();
    tc->add_option("-n,--elements", theory_flags.n, "Elements per array");
    tc->add_option("--snr-db", theory_flags.snr_db, "SNR in power dB");
    tc->add_option("--model", theory_flags.model, "Channel model: phase|amplitude");
    tc->add_option("--norm", theory_flags.norm, "Normalization: none|frobenius");
    tc->add_option("--tx-gains", theory_flags.tx_gains, "Per-element tx gains, comma separated");
    tc->add_option("--rx-gains", theory_flags.rx_gains, "Per-element rx gains, comma separated");
    tc->add_option("-o,--output", theory_flags.output, "Write CSV here instead of stdout");

    auto *ts = theory->add_subcommand("sweep", "Capacity sweep over one variable");
    ts->add_option("--variable", sweep_flags.variable,
                   "Swept variable: distance|spacing|frequency|snr")
        ->required();
    ts->add_option("--start", sweep_flags.start, "Sweep start (natural unit)")->required();
    ts->add_option("--stop", sweep_flags.stop, "Sweep stop (natural unit)")->required();
    ts->add_option("--count", sweep_flags.count, "Number of grid points (default 200)");
    ts->add_option("--step", sweep_flags.step, "Grid step instead of --count");
    ts->add_option("-f,--frequency", sweep_flags.frequency, "Fixed carrier frequency");
    ts->add_option("-d,--distance", sweep_flags.distance, "Fixed tx-rx distance");
    ts->add_option("-s,--spacing", sweep_flags.spacing, "Fixed inter-antenna spacing");
    ts->add_option("-n,--elements", sweep_flags.n, "Elements per array");
    ts->add_option("--snr-db", sweep_flags.snr_db, "Fixed SNR in power dB");
    ts->add_option("--model", sweep_flags.model, "Channel model: phase|amplitude");
    ts->add_option("--norm", sweep_flags.norm, "Normalization: none|frobenius");
    ts->add_option("--tx-gains", sweep_flags.tx_gains, "Per-element tx gains");
    ts->add_option("--rx-gains", sweep_flags.rx_gains, "Per-element rx gains");
    ts->add_option("--threads", sweep_flags.threads, "Worker threads for row evaluation");
    ts->add_option("-o,--output", sweep_flags.output, "Write CSV here instead of stdout");
    ts->add_option("--plot", sweep_flags.plot, "Also write an SVG plot to this path");

    // design ------------------------------------------------------------------
    auto *design = app.add_subcommand("design", "Orthogonality design equations");
    design->require_subcommand(1);

    auto *ds = design->add_subcommand("spacing", "Optimal spacing for a distance");
    ds->add_option("-d,--distance", design_flags.distance, "Tx-rx distance")->required();
    ds->add_option("-f,--frequency", design_flags.frequency, "Carrier frequency")->required();
    ds->add_option("-p", design_flags.p, "Solution order p (default 0)");
    ds->add_flag("--refine", design_flags.refine, "Refine with the exact-geometry condition");
    ds->add_option("-o,--output", design_flags.output, "Write CSV here instead of stdout");

    auto *dd = design->add_subcommand("distances", "Optimal distances for a spacing");
    dd->add_option("-s,--spacing", design_flags.spacing, "Inter-antenna spacing")->required();
    dd->add_option("-f,--frequency", design_flags.frequency, "Carrier frequency")->required();
    dd->add_option("--p-max", design_flags.p_max, "Largest solution order (default 0)");
    dd->add_flag("--refine", design_flags.refine, "Refine with the exact-geometry condition");
    dd->add_option("-o,--output", design_flags.output, "Write CSV here instead of stdout");

    // measure -----------------------------------------------------------------
    auto *measure = app.add_subcommand("measure", "Process THZSWEEP measurement files");
    measure->require_subcommand(1);

    auto *mc = measure->add_subcommand("capacity", "Capacity from measured sweeps");
    mc->add_option("file", measure_flags.file, "THZSWEEP input file")->required();
    mc->add_option("-f,--frequency", measure_flags.frequencies, "Evaluation frequency (repeatable)")
        ->required();
    mc->add_option("--snr-db", measure_flags.snr_db,
                   "Fixed SNR in dB (default: estimate from the noise trace)");
    mc->add_option("-o,--output", measure_flags.output, "Write CSV here instead of stdout");

    auto *ms = measure->add_subcommand("snr", "SNR estimate for one antenna pair");
    ms->add_option("file", measure_flags.file, "THZSWEEP input file")->required();
    ms->add_option("-f,--frequency", measure_flags.frequencies, "Evaluation frequency (repeatable)")
        ->required();
    ms->add_option("--tx", measure_flags.tx, "Transmit element index (1-based)");
    ms->add_option("--rx", measure_flags.rx, "Receive element index (1-based)");
    ms->add_option("-o,--output", measure_flags.output, "Write CSV here instead of stdout");

    // fixture -----------------------------------------------------------------
    auto *fixture = app.add_subcommand("fixture", "Synthetic measurement fixtures");
    fixture->require_subcommand(1);

    auto *fg = fixture->add_subcommand("generate", "Write a canonical THZSWEEP file");
    fg->add_option("-o,--output", fixture_flags.output, "Output file path")->required();
    fg->add_option("--f-start", fixture_flags.f_start, "Grid start frequency")->required();
    fg->add_option("--f-stop", fixture_flags.f_stop, "Grid stop frequency")->required();
    fg->add_option("--points", fixture_flags.points, "Grid point count (>= 2)")->required();
    fg->add_option("-d,--distance", fixture_flags.distance, "Recorded tx-rx distance")->required();
    fg->add_option("--snr-db", fixture_flags.snr_db, "Embed a noise trace this many dB down");
    fg->add_option("--preset", fixture_flags.preset, "Channel preset: orthogonal|ones");
    fg->add_option("--matrix", fixture_flags.matrix,
                   "Explicit channel matrix, e.g. \"1:0,1:0;1:0,-1:0\"");

    try
    {
        app.parse(argc, argv);

        if (tc->parsed())
            return cmd_theory_capacity(theory_flags);
        if (ts->parsed())
            return cmd_theory_sweep(sweep_flags);
        if (ds->parsed())
            return cmd_design_spacing(design_flags);
        if (dd->parsed())
            return cmd_design_distances(design_flags);
        if (mc->parsed())
            return cmd_measure_capacity(measure_flags);
        if (ms->parsed())
            return cmd_measure_snr(measure_flags);
        if (fg->parsed())
            return cmd_fixture_generate(fixture_flags);
        return 2;
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 2;
    }
    catch (const UsageError &e)
    {
        std::cerr << "losmimo: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "losmimo: " << e.what() << "\n";
        return 1;
    }
}
