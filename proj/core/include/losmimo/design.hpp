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

#ifndef LOSMIMO_DESIGN_HPP
#define LOSMIMO_DESIGN_HPP

#include <vector>

#include "losmimo/channel.hpp"

namespace losmimo
{

// One solution of the 2x2 orthogonality condition
//     |d11 - d12| = (2p+1) * lambda / 4.
// path_difference_m is recomputed from the exact geometry
// sqrt(d^2 + s^2) - d; residual_m is its deviation from the target odd
// quarter-wavelength. far_field marks solutions satisfying d > 10*s,
// inside which the closed forms below are accurate to better than 1%.
struct DesignSolution
{
    double spacing_m = 0.0;
    double distance_m = 0.0;
    int p = 0;
    double path_difference_m = 0.0;
    double residual_m = 0.0;
    bool far_field = true;
};

// Exact excess path length sqrt(d^2 + s^2) - d of the cross antenna pair,
// evaluated in cancellation-free form.
double path_difference(double distance_m, double spacing_m);

// Inter-antenna spacing that makes a 2x2 link at the given distance
// orthogonal: s = sqrt((2p+1) * d * lambda / 2). p = 0 is the paper-table
// case s^2 = d*lambda/2.
DesignSolution optimal_spacing(double distance_m, const Carrier &carrier, int p = 0);

// The family of distances at which a fixed spacing is orthogonal,
// d_p = 2 s^2 / ((2p+1) lambda) for p = 0..p_max, in descending distance
// order. Solutions violating the d > 10*s far-field guard are still
// emitted, flagged with far_field = false.
std::vector<DesignSolution> optimal_distances(double spacing_m, const Carrier &carrier, int p_max);

enum class RefineVariable
{
    spacing,
    distance
};

// Replaces the closed-form (binomially approximated) solution with the
// root of the exact condition sqrt(d^2+s^2) - d = (2p+1)*lambda/4 in the
// chosen variable. Uses a bracketed derivative-free root finder on
// [seed/2, 2*seed] terminating at 1e-14 m interval width; the returned
// residual is below 1e-12 m. Throws when no root is bracketed, which
// happens when the far-field approximation behind the seed has broken
// down (d of the order of s or smaller).
DesignSolution refine_exact(const DesignSolution &solution, const Carrier &carrier,
                            RefineVariable vary);

} // namespace losmimo

#endif
