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

#include "losmimo/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace losmimo
{

bool Point3::is_finite() const
{
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

Point3 operator+(const Point3 &a, const Point3 &b)
{
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}

Point3 operator-(const Point3 &a, const Point3 &b)
{
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

double distance(const Point3 &a, const Point3 &b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

ArrayGeometry::ArrayGeometry(std::vector<Point3> elements) : elements_(std::move(elements))
{
    if (elements_.empty())
        throw std::invalid_argument("ArrayGeometry: at least one element required");

    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (!elements_[i].is_finite())
        {
            std::ostringstream msg;
            msg << "ArrayGeometry: element " << i + 1 << " has a non-finite coordinate";
            throw std::invalid_argument(msg.str());
        }

    for (std::size_t i = 0; i < elements_.size(); ++i)
        for (std::size_t j = i + 1; j < elements_.size(); ++j)
            if (distance(elements_[i], elements_[j]) <= 0.0)
            {
                std::ostringstream msg;
                msg << "ArrayGeometry: elements " << i + 1 << " and " << j + 1 << " coincide";
                throw std::invalid_argument(msg.str());
            }
}

Point3 ArrayGeometry::centroid() const
{
    Point3 c;
    for (const auto &p : elements_)
        c = c + p;
    const double inv = 1.0 / static_cast<double>(elements_.size());
    return {c.x * inv, c.y * inv, c.z * inv};
}

LinkGeometry::LinkGeometry(ArrayGeometry tx, ArrayGeometry rx)
    : tx_(std::move(tx)), rx_(std::move(rx))
{
    if (tx_.size() != rx_.size())
    {
        std::ostringstream msg;
        msg << "LinkGeometry: tx has " << tx_.size() << " elements but rx has " << rx_.size();
        throw std::invalid_argument(msg.str());
    }

    for (std::size_t i = 0; i < tx_.size(); ++i)
        for (std::size_t j = 0; j < rx_.size(); ++j)
            if (distance(tx_.element(i), rx_.element(j)) <= 0.0)
            {
                std::ostringstream msg;
                msg << "LinkGeometry: tx element " << i + 1 << " coincides with rx element "
                    << j + 1;
                throw std::invalid_argument(msg.str());
            }
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries))
{
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw std::invalid_argument("DistanceMatrix: entries must be square and non-empty");

    for (Eigen::Index i = 0; i < entries_.rows(); ++i)
        for (Eigen::Index j = 0; j < entries_.cols(); ++j)
        {
            const double d = entries_(i, j);
            if (!std::isfinite(d) || d <= 0.0)
            {
                std::ostringstream msg;
                msg << "DistanceMatrix: entry (" << i + 1 << "," << j + 1
                    << ") must be finite and > 0, got " << d;
                throw std::invalid_argument(msg.str());
            }
        }
}

LinkGeometry build_parallel_ulas(std::size_t n, double spacing_m, double separation_m)
{
    if (n < 1)
        throw std::invalid_argument("build_parallel_ulas: n must be >= 1");
    if (!(separation_m > 0.0) || !std::isfinite(separation_m))
        throw std::invalid_argument("build_parallel_ulas: separation must be > 0");
    if (n > 1 && (!(spacing_m > 0.0) || !std::isfinite(spacing_m)))
        throw std::invalid_argument("build_parallel_ulas: spacing must be > 0 for n > 1");

    // Elements on the y axis, centered on the boresight, arrays facing
    // each other along +x. Element i of tx faces element i of rx.
    std::vector<Point3> tx;
    std::vector<Point3> rx;
    tx.reserve(n);
    rx.reserve(n);
    const double mid = 0.5 * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double y = (static_cast<double>(i) - mid) * (n > 1 ? spacing_m : 0.0);
        tx.push_back({0.0, y, 0.0});
        rx.push_back({separation_m, y, 0.0});
    }
    return {ArrayGeometry(std::move(tx)), ArrayGeometry(std::move(rx))};
}

DistanceMatrix distance_matrix(const LinkGeometry &g)
{
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            d(i, j) = distance(g.tx().element(static_cast<std::size_t>(i)),
                               g.rx().element(static_cast<std::size_t>(j)));
    return DistanceMatrix(std::move(d));
}

ArrayGeometry transform(const ArrayGeometry &g, const Eigen::Matrix3d &rotation,
                        const Point3 &translation)
{
    const Eigen::Matrix3d defect =
        rotation * rotation.transpose() - Eigen::Matrix3d::Identity();
    if (defect.cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("transform: rotation is not orthonormal (R*R^T != I)");
    if (!translation.is_finite())
        throw std::invalid_argument("transform: translation has a non-finite coordinate");

    std::vector<Point3> out;
    out.reserve(g.size());
    for (const auto &p : g.elements())
    {
        const Eigen::Vector3d q = rotation * Eigen::Vector3d(p.x, p.y, p.z);
        out.push_back({q.x() + translation.x, q.y() + translation.y, q.z() + translation.z});
    }
    return ArrayGeometry(std::move(out));
}

} // namespace losmimo
