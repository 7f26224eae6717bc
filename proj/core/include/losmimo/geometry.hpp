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

#ifndef LOSMIMO_GEOMETRY_HPP
#define LOSMIMO_GEOMETRY_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace losmimo
{

// Cartesian position in meters.
struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool is_finite() const;
};

Point3 operator+(const Point3 &a, const Point3 &b);
Point3 operator-(const Point3 &a, const Point3 &b);

// Euclidean distance between two points in meters.
double distance(const Point3 &a, const Point3 &b);

// One antenna array: an ordered set of element positions.
// Elements are indexed 1..N in all user-facing interfaces and error
// messages; storage is 0-based.
class ArrayGeometry
{
  public:
    // Throws std::invalid_argument if the list is empty, any coordinate is
    // non-finite, or two elements coincide.
    explicit ArrayGeometry(std::vector<Point3> elements);

    std::size_t size() const { return elements_.size(); }
    const Point3 &element(std::size_t i) const { return elements_.at(i); } // 0-based
    const std::vector<Point3> &elements() const { return elements_; }

    Point3 centroid() const;

  private:
    std::vector<Point3> elements_;
};

// A transmit array facing a receive array. Both arrays must have the same
// element count and no transmit element may coincide with a receive element.
class LinkGeometry
{
  public:
    LinkGeometry(ArrayGeometry tx, ArrayGeometry rx);

    std::size_t size() const { return tx_.size(); }
    const ArrayGeometry &tx() const { return tx_; }
    const ArrayGeometry &rx() const { return rx_; }

  private:
    ArrayGeometry tx_;
    ArrayGeometry rx_;
};

// N x N matrix of transmit-to-receive distances in meters.
// Entry (i,j) is the distance from tx element i to rx element j (0-based
// storage). All entries must be strictly positive and finite.
class DistanceMatrix
{
  public:
    // Direct construction, e.g. for synthetic exact-path-difference setups.
    explicit DistanceMatrix(Eigen::MatrixXd entries);

    std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
    double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const Eigen::MatrixXd &entries() const { return entries_; }

  private:
    Eigen::MatrixXd entries_;
};

// Two parallel broadside-aligned uniform linear arrays.
//
// Arrays lie along the y axis and face each other along +x: tx element i is
// at x=0, rx element i at x=separation, both centered on y=0. For n=2 this
// gives d11=d22=separation and d12=d21=sqrt(separation^2 + spacing^2).
//
// spacing  - distance between adjacent elements of one array [m]
// separation - distance between the two array lines [m]
LinkGeometry build_parallel_ulas(std::size_t n, double spacing_m, double separation_m);

// Pairwise tx-to-rx Euclidean distances of a link.
DistanceMatrix distance_matrix(const LinkGeometry &g);

// Rigid-body transform p -> R*p + t applied to every element.
// R must be orthonormal: max |R*R^T - I| <= 1e-12, otherwise throws.
ArrayGeometry transform(const ArrayGeometry &g, const Eigen::Matrix3d &rotation,
                        const Point3 &translation);

} // namespace losmimo

#endif
