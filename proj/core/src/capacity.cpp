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

#include "losmimo/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace losmimo
{

namespace
{

constexpr double kEigenvalueClamp = -1e-9;

double real_log2_det(const Eigen::MatrixXcd &m)
{
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    const std::complex<double> det = lu.determinant();
    if (!(det.real() > 0.0))
    {
        std::ostringstream msg;
        msg << "capacity: determinant of I + (rho/N) H H^dagger is not positive (" << det.real()
            << ")";
        throw std::runtime_error(msg.str());
    }
    return std::log2(det.real());
}

double defect_from_gram(const Eigen::MatrixXcd &g)
{
    const double g_norm = g.norm();
    if (g_norm == 0.0)
        return 0.0; // degenerate all-zero channel; callers reject where it matters
    const auto n = g.rows();
    const double mean_power = g.trace().real() / static_cast<double>(n);
    const Eigen::MatrixXcd centered =
        g - mean_power * Eigen::MatrixXcd::Identity(n, n);
    return std::clamp(centered.norm() / g_norm, 0.0, 1.0);
}

} // namespace

SnrSpec SnrSpec::from_db(double db)
{
    if (std::isnan(db))
        throw std::invalid_argument("SnrSpec: dB value must not be NaN");
    SnrSpec s;
    s.db = db;
    s.linear = std::pow(10.0, db / 10.0);
    return s;
}

SnrSpec SnrSpec::from_linear(double rho)
{
    if (!(rho >= 0.0))
        throw std::invalid_argument("SnrSpec: linear SNR must be >= 0");
    SnrSpec s;
    s.linear = rho;
    s.db = 10.0 * std::log10(rho);
    return s;
}

std::string to_string(Normalization norm)
{
    return norm == Normalization::none ? "none" : "frobenius";
}

Normalization default_normalization(ChannelModel model)
{
    return model == ChannelModel::phase_only ? Normalization::none : Normalization::frobenius;
}

std::pair<Eigen::MatrixXcd, double> normalize_frobenius(const Eigen::MatrixXcd &h)
{
    if (h.rows() == 0 || h.rows() != h.cols())
        throw std::invalid_argument("normalize_frobenius: matrix must be square and non-empty");
    const double fro = h.norm();
    if (fro == 0.0)
        throw std::invalid_argument("normalize_frobenius: all-zero matrix cannot be normalized");
    const double scale = static_cast<double>(h.rows()) / fro;
    return {scale * h, scale};
}

std::vector<double> gram_eigenvalues(const Eigen::MatrixXcd &h)
{
    const Eigen::MatrixXcd g = h * h.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("gram_eigenvalues: eigenvalue decomposition failed");

    std::vector<double> eigs(static_cast<std::size_t>(g.rows()));
    for (Eigen::Index i = 0; i < g.rows(); ++i)
    {
        double lambda = solver.eigenvalues()(i);
        if (lambda < 0.0)
        {
            if (lambda < kEigenvalueClamp)
            {
                std::ostringstream msg;
                msg << "gram_eigenvalues: eigenvalue " << lambda
                    << " is negative beyond round-off tolerance";
                throw std::runtime_error(msg.str());
            }
            lambda = 0.0;
        }
        eigs[static_cast<std::size_t>(i)] = lambda;
    }
    std::sort(eigs.rbegin(), eigs.rend());
    return eigs;
}

CapacityResult capacity(const ChannelMatrix &h, const SnrSpec &snr, Normalization norm)
{
    const Eigen::Index n = static_cast<Eigen::Index>(h.size());
    Eigen::MatrixXcd h_eval = h.entries();
    if (norm == Normalization::frobenius)
        h_eval = normalize_frobenius(h_eval).first;

    const Eigen::MatrixXcd g = h_eval * h_eval.adjoint();
    const double alpha = snr.linear / static_cast<double>(n);

    CapacityResult result;
    result.bps_per_hz =
        real_log2_det(Eigen::MatrixXcd::Identity(n, n) + alpha * g);
    result.eigenvalues = gram_eigenvalues(h_eval);
    result.orthogonality_defect = defect_from_gram(g);
    return result;
}

double capacity_from_eigenvalues(std::span<const double> eigenvalues, const SnrSpec &snr)
{
    if (eigenvalues.empty())
        throw std::invalid_argument("capacity_from_eigenvalues: no eigenvalues given");
    const double alpha = snr.linear / static_cast<double>(eigenvalues.size());
    double bits = 0.0;
    for (double lambda : eigenvalues)
    {
        if (lambda < 0.0)
            throw std::invalid_argument("capacity_from_eigenvalues: negative eigenvalue");
        bits += std::log2(1.0 + alpha * lambda);
    }
    return bits;
}

double capacity_2x2_closed_form(const ChannelMatrix &h, const SnrSpec &snr)
{
    if (h.size() != 2)
        throw std::invalid_argument("capacity_2x2_closed_form: channel must be 2x2");

    // det(I + (rho/2) H H^dagger) expanded from the entries of H alone.
    const std::complex<double> a = h.entries()(0, 0);
    const std::complex<double> b = h.entries()(0, 1);
    const std::complex<double> c = h.entries()(1, 0);
    const std::complex<double> d = h.entries()(1, 1);

    const double g11 = std::norm(a) + std::norm(b);
    const double g22 = std::norm(c) + std::norm(d);
    const std::complex<double> g12 = a * std::conj(c) + b * std::conj(d);

    const double alpha = snr.linear / 2.0;
    const double det =
        (1.0 + alpha * g11) * (1.0 + alpha * g22) - alpha * alpha * std::norm(g12);
    return std::log2(det);
}

double orthogonality_defect(const ChannelMatrix &h)
{
    if (h.entries().norm() == 0.0)
        throw std::invalid_argument("orthogonality_defect: undefined for the all-zero matrix");
    return defect_from_gram(gram(h));
}

} // namespace losmimo
