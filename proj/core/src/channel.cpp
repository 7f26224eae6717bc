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

#include "losmimo/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace losmimo
{

Carrier Carrier::from_frequency(double hz)
{
    if (!(hz > 0.0) || !std::isfinite(hz))
        throw std::invalid_argument("Carrier: frequency must be finite and > 0");
    Carrier c;
    c.frequency_hz = hz;
    c.wavelength_m = kSpeedOfLight / hz;
    c.wavenumber = 2.0 * std::numbers::pi / c.wavelength_m;
    return c;
}

Carrier Carrier::from_wavelength(double meters)
{
    if (!(meters > 0.0) || !std::isfinite(meters))
        throw std::invalid_argument("Carrier: wavelength must be finite and > 0");
    return from_frequency(kSpeedOfLight / meters);
}

std::string to_string(ChannelModel model)
{
    switch (model)
    {
    case ChannelModel::phase_only:
        return "phase_only";
    case ChannelModel::amplitude_weighted:
        return "amplitude_weighted";
    case ChannelModel::measured:
        return "measured";
    }
    return "unknown";
}

ChannelMatrix::ChannelMatrix(Eigen::MatrixXcd entries, ChannelModel model,
                             std::optional<Carrier> carrier)
    : entries_(std::move(entries)), model_(model), carrier_(carrier)
{
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw std::invalid_argument("ChannelMatrix: entries must be square and non-empty");

    for (Eigen::Index i = 0; i < entries_.rows(); ++i)
        for (Eigen::Index j = 0; j < entries_.cols(); ++j)
        {
            const auto v = entries_(i, j);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            {
                std::ostringstream msg;
                msg << "ChannelMatrix: entry (" << i + 1 << "," << j + 1 << ") is not finite";
                throw std::invalid_argument(msg.str());
            }
            if (model_ == ChannelModel::phase_only && std::abs(std::abs(v) - 1.0) > 1e-12)
            {
                std::ostringstream msg;
                msg << "ChannelMatrix: phase_only entry (" << i + 1 << "," << j + 1
                    << ") has modulus " << std::abs(v) << ", expected 1";
                throw std::invalid_argument(msg.str());
            }
        }

    if (model_ != ChannelModel::measured && !carrier_.has_value())
        throw std::invalid_argument("ChannelMatrix: " + to_string(model_) +
                                    " matrices must carry their carrier");
}

GainProfile GainProfile::uniform(std::size_t n, double gain)
{
    GainProfile g;
    g.tx_gains.assign(n, gain);
    g.rx_gains.assign(n, gain);
    g.validate();
    return g;
}

bool GainProfile::is_unit() const
{
    for (double g : tx_gains)
        if (g != 1.0)
            return false;
    for (double g : rx_gains)
        if (g != 1.0)
            return false;
    return true;
}

bool GainProfile::is_uniform() const
{
    for (double g : tx_gains)
        if (g != tx_gains.front())
            return false;
    for (double g : rx_gains)
        if (g != rx_gains.front())
            return false;
    return true;
}

void GainProfile::validate() const
{
    if (tx_gains.empty() || rx_gains.empty())
        throw std::invalid_argument("GainProfile: gain lists must be non-empty");
    for (double g : tx_gains)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("GainProfile: tx gains must be finite and > 0");
    for (double g : rx_gains)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("GainProfile: rx gains must be finite and > 0");
}

ChannelMatrix los_channel(const DistanceMatrix &d, const Carrier &carrier, ChannelModel model)
{
    if (model == ChannelModel::measured)
        throw std::invalid_argument("los_channel: model must be phase_only or amplitude_weighted");

    const auto n = static_cast<Eigen::Index>(d.size());
    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
        {
            const double dij = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            const std::complex<double> phase = std::polar(1.0, -carrier.wavenumber * dij);
            h(i, j) = model == ChannelModel::phase_only ? phase : phase / dij;
        }
    return {std::move(h), model, carrier};
}

ChannelMatrix apply_gains(const ChannelMatrix &h, const GainProfile &gains)
{
    gains.validate();
    const std::size_t n = h.size();
    if (gains.tx_gains.size() != n || gains.rx_gains.size() != n)
    {
        std::ostringstream msg;
        msg << "apply_gains: gain lengths (" << gains.tx_gains.size() << ","
            << gains.rx_gains.size() << ") do not match channel size " << n;
        throw std::invalid_argument(msg.str());
    }

    Eigen::MatrixXcd out = h.entries();
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j)
            out(i, j) *= gains.tx_gains[static_cast<std::size_t>(i)] *
                         gains.rx_gains[static_cast<std::size_t>(j)];

    ChannelModel model = h.model();
    if (model == ChannelModel::phase_only && !gains.is_unit())
        model = ChannelModel::measured; // unit-modulus invariant no longer holds
    return {std::move(out), model, h.carrier()};
}

Eigen::MatrixXcd gram(const ChannelMatrix &h)
{
    return h.entries() * h.entries().adjoint();
}

} // namespace losmimo
