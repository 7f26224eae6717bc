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

#include "losmimo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "losmimo/units.hpp"

namespace losmimo
{

namespace
{

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 44.0;
constexpr double kMarginBottom = 56.0;
constexpr int kTicks = 5;

std::string px(double v)
{
    return format_fixed(v, 2);
}

} // namespace

std::string render_sweep_svg(const SweepResult &result)
{
    std::vector<const SweepRow *> rows;
    for (const auto &row : result.rows)
        if (row.error.empty())
            rows.push_back(&row);
    if (rows.empty())
        throw std::invalid_argument("render_sweep_svg: sweep has no plottable rows");

    double x_min = rows.front()->abscissa, x_max = rows.front()->abscissa;
    double y_min = rows.front()->capacity_bps_hz, y_max = rows.front()->capacity_bps_hz;
    for (const auto *row : rows)
    {
        x_min = std::min(x_min, row->abscissa);
        x_max = std::max(x_max, row->abscissa);
        y_min = std::min(y_min, row->capacity_bps_hz);
        y_max = std::max(y_max, row->capacity_bps_hz);
    }
    if (x_max == x_min)
    {
        x_min -= 0.5;
        x_max += 0.5;
    }
    const double y_pad = (y_max - y_min) > 0.0 ? 0.05 * (y_max - y_min) : 0.5;
    y_min -= y_pad;
    y_max += y_pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto to_x = [&](double v) { return kMarginLeft + (v - x_min) / (x_max - x_min) * plot_w; };
    const auto to_y = [&](double v) {
        return kMarginTop + plot_h - (v - y_min) / (y_max - y_min) * plot_h;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" +
           px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) + " " + px(kHeight) + "\">\n";
    svg += "<rect width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) + "\" fill=\"white\"/>\n";

    const std::string title = "capacity vs " + to_string(result.spec.variable) +
                              " (model=" + to_string(result.spec.model) +
                              ", snr_db=" + format_sig(result.spec.snr.db, 6) + ")";
    svg += "<text x=\"" + px(kWidth / 2.0) + "\" y=\"24.00\" text-anchor=\"middle\" "
           "font-family=\"monospace\" font-size=\"14\">" + title + "</text>\n";

    // Grid lines and tick labels.
    for (int i = 0; i < kTicks; ++i)
    {
        const double tx = x_min + (x_max - x_min) * i / (kTicks - 1);
        const double ty = y_min + (y_max - y_min) * i / (kTicks - 1);
        const double gx = to_x(tx);
        const double gy = to_y(ty);
        svg += "<line x1=\"" + px(gx) + "\" y1=\"" + px(kMarginTop) + "\" x2=\"" + px(gx) +
               "\" y2=\"" + px(kMarginTop + plot_h) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<line x1=\"" + px(kMarginLeft) + "\" y1=\"" + px(gy) + "\" x2=\"" +
               px(kMarginLeft + plot_w) + "\" y2=\"" + px(gy) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + px(gx) + "\" y=\"" + px(kMarginTop + plot_h + 20.0) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" +
               format_sig(tx, 6) + "</text>\n";
        svg += "<text x=\"" + px(kMarginLeft - 8.0) + "\" y=\"" + px(gy + 4.0) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">" +
               format_sig(ty, 6) + "</text>\n";
    }

    // Axes.
    svg += "<line x1=\"" + px(kMarginLeft) + "\" y1=\"" + px(kMarginTop + plot_h) + "\" x2=\"" +
           px(kMarginLeft + plot_w) + "\" y2=\"" + px(kMarginTop + plot_h) +
           "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg += "<line x1=\"" + px(kMarginLeft) + "\" y1=\"" + px(kMarginTop) + "\" x2=\"" +
           px(kMarginLeft) + "\" y2=\"" + px(kMarginTop + plot_h) +
           "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    // Axis labels.
    svg += "<text x=\"" + px(kMarginLeft + plot_w / 2.0) + "\" y=\"" + px(kHeight - 12.0) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">" +
           abscissa_label(result.spec.variable) + "</text>\n";
    svg += "<text x=\"18.00\" y=\"" + px(kMarginTop + plot_h / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
           "transform=\"rotate(-90 18.00 " + px(kMarginTop + plot_h / 2.0) + ")\">" +
           "capacity (bps/Hz)</text>\n";

    // The curve: one vertex per successful row.
    svg += "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (i)
            svg += " ";
        svg += px(to_x(rows[i]->abscissa)) + "," + px(to_y(rows[i]->capacity_bps_hz));
    }
    svg += "\"/>\n";
    svg += "</svg>\n";
    return svg;
}

void emit_plot(const SweepResult &result, const std::string &path)
{
    const std::string svg = render_sweep_svg(result);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open file for writing");
    out << svg;
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

} // namespace losmimo
