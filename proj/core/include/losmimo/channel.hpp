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

#ifndef LOSMIMO_CHANNEL_HPP
#define LOSMIMO_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "losmimo/geometry.hpp"

namespace losmimo
{

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact

// Carrier described by frequency [Hz], wavelength [m] and wavenumber
// k = 2*pi/lambda [rad/m]. Wavelength and wavenumber are derived from the
// frequency via lambda = c/f.
struct Carrier
{
    double frequency_hz = 0.0;
    double wavelength_m = 0.0;
    double wavenumber = 0.0;

    static Carrier from_frequency(double hz);
    static Carrier from_wavelength(double meters);
};

enum class ChannelModel
{
    phase_only,         // h_ij = exp(-j*k*d_ij), unit modulus
    amplitude_weighted, // h_ij = exp(-j*k*d_ij)/d_ij, units 1/m
    measured            // entries taken from sweep data or gain-adjusted
};

std::string to_string(ChannelModel model);

// N x N complex channel matrix. Row index = transmit element, column
// index = receive element. phase_only matrices must have unit-modulus
// entries (|h_ij| - 1| <= 1e-12); phase_only and amplitude_weighted
// matrices must carry their carrier.
class ChannelMatrix
{
  public:
    ChannelMatrix(Eigen::MatrixXcd entries, ChannelModel model,
                  std::optional<Carrier> carrier = std::nullopt);

    std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
    const Eigen::MatrixXcd &entries() const { return entries_; }
    ChannelModel model() const { return model_; }
    const std::optional<Carrier> &carrier() const { return carrier_; }

  private:
    Eigen::MatrixXcd entries_;
    ChannelModel model_;
    std::optional<Carrier> carrier_;
};

// Per-element linear amplitude (voltage) factors, all > 0.
struct GainProfile
{
    std::vector<double> tx_gains;
    std::vector<double> rx_gains;

    static GainProfile uniform(std::size_t n, double gain = 1.0);
    bool is_unit() const;    // every gain == 1
    bool is_uniform() const; // gains constant within each array
    void validate() const;
};

// Free-space LoS channel from pairwise distances.
// phase_only:        h_ij = exp(-j*k*d_ij)
// amplitude_weighted: h_ij = exp(-j*k*d_ij)/d_ij
// model must be one of the two constructive tags, not `measured`.
ChannelMatrix los_channel(const DistanceMatrix &d, const Carrier &carrier, ChannelModel model);

// Applies per-element amplitude factors: h'_ij = tx_gains[i] * h_ij * rx_gains[j].
// A phase_only matrix becomes `measured` when any gain differs from 1,
// since the unit-modulus invariant no longer holds.
ChannelMatrix apply_gains(const ChannelMatrix &h, const GainProfile &gains);

// Gram matrix H * H^dagger. Hermitian; its eigenvalues are the sub-channel
// power gains. For phase_only inputs every diagonal entry equals N.
Eigen::MatrixXcd gram(const ChannelMatrix &h);

} // namespace losmimo

#endif
