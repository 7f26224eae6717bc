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

#ifndef LOSMIMO_CAPACITY_HPP
#define LOSMIMO_CAPACITY_HPP

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "losmimo/channel.hpp"

namespace losmimo
{

// Signal-to-noise ratio carried in both representations.
// dB convention is power decibels: linear = 10^(db/10), so "0 dB" -> rho = 1.
struct SnrSpec
{
    double db = 0.0;
    double linear = 1.0;

    static SnrSpec from_db(double db);
    static SnrSpec from_linear(double rho); // rho >= 0
};

// Normalization applied to H before evaluating capacity.
// frobenius rescales H so that ||H||_F^2 = N^2, i.e. average per-entry
// power 1, which makes measured and amplitude-weighted matrices comparable
// to the unit-modulus model. Rejects the all-zero matrix.
enum class Normalization
{
    none,
    frobenius
};

std::string to_string(Normalization norm);

// Policy used when the caller does not pick one explicitly: unit-modulus
// matrices are already normalized, everything else gets frobenius.
Normalization default_normalization(ChannelModel model);

struct CapacityResult
{
    double bps_per_hz = 0.0;
    std::vector<double> eigenvalues;     // Gram eigenvalues, descending, >= 0
    double orthogonality_defect = 0.0;   // in [0, 1]; 0 = orthogonal sub-channels
};

// Shannon capacity of an equal-power N x N MIMO channel,
//     C = log2 det(I_N + (rho/N) * H * H^dagger)  [bps/Hz],
// evaluated on the (possibly normalized) H via an LU determinant.
// The result also carries the Gram eigenvalues and the orthogonality
// defect of the same evaluated matrix.
CapacityResult capacity(const ChannelMatrix &h, const SnrSpec &snr,
                        Normalization norm = Normalization::none);

// Eigenvalue route: C = sum_i log2(1 + (rho/N) * lambda_i) with
// N = eigenvalues.size(). Must agree with the determinant route.
double capacity_from_eigenvalues(std::span<const double> eigenvalues, const SnrSpec &snr);

// Scalar closed form for N=2, expanded directly from the four matrix
// entries with no matrix routine involved. Serves as an independent
// oracle for the general paths (no normalization applied).
double capacity_2x2_closed_form(const ChannelMatrix &h, const SnrSpec &snr);

// ||G - (tr(G)/N) I||_F / ||G||_F with G = H H^dagger. Scale invariant,
//0 iff the sub-channels are orthogonal with equal power, at most 1.
// Throws for the all-zero matrix.
double orthogonality_defect(const ChannelMatrix &h);

// Rescales H so ||H||_F^2 = N^2 and returns {scaled H, scale factor}.
// Throws for the all-zero matrix.
std::pair<Eigen::MatrixXcd, double> normalize_frobenius(const Eigen::MatrixXcd &h);

// Eigenvalues of the Hermitian Gram matrix H H^dagger, sorted descending.
// Round-off negatives above -1e-9 are clamped to zero; anything more
// negative throws.
std::vector<double> gram_eigenvalues(const Eigen::MatrixXcd &h);

} // namespace losmimo

#endif
