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

#include "losmimo/design.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace losmimo
{

namespace
{

constexpr double kBracketWidthStop = 1e-14; // m
constexpr double kRefinedResidualMax = 1e-12; // m
constexpr double kFarFieldGuard = 10.0; // flag solutions with d <= guard * s

double quarter_wave_target(int p, const Carrier &carrier)
{
    return (2.0 * p + 1.0) * carrier.wavelength_m / 4.0;
}

bool check_far_field(double distance_m, double spacing_m)
{
    return distance_m > kFarFieldGuard * spacing_m;
}

// Brent's method on a sign-changing bracket [a, b]; stops when the
// bracket width falls below `width_stop`.
double brent_root(const std::function<double(double)> &f, double a, double b, double width_stop)
{
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if (fa * fb > 0.0)
        throw std::invalid_argument("brent_root: no sign change over the bracket");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter)
    {
        if (std::abs(fc) < std::abs(fb))
        {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 0.5 * width_stop + 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b);
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0)
            return b;

        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb))
        {
            d = m; // bisection
            e = m;
        }
        else
        {
            double p, q;
            const double s = fb / fa;
            if (a == c)
            {
                p = 2.0 * m * s; // secant
                q = 1.0 - s;
            }
            else
            {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            else
                p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q)))
            {
                e = d; // accept interpolation
                d = p / q;
            }
            else
            {
                d = m;
                e = m;
            }
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0))
        {
            c = a;
            fc = fa;
        }
    }
    return b;
}

} // namespace

double path_difference(double distance_m, double spacing_m)
{
    // sqrt(d^2 + s^2) - d in cancellation-free form.
    const double hyp = std::sqrt(distance_m * distance_m + spacing_m * spacing_m);
    return spacing_m * spacing_m / (hyp + distance_m);
}

DesignSolution optimal_spacing(double distance_m, const Carrier &carrier, int p)
{
    if (!(distance_m > 0.0) || !std::isfinite(distance_m))
        throw std::invalid_argument("optimal_spacing: distance must be finite and > 0");
    if (p < 0)
        throw std::invalid_argument("optimal_spacing: p must be >= 0");

    DesignSolution sol;
    sol.p = p;
    sol.distance_m = distance_m;
    sol.spacing_m = std::sqrt((2.0 * p + 1.0) * distance_m * carrier.wavelength_m / 2.0);
    sol.path_difference_m = path_difference(distance_m, sol.spacing_m);
    sol.residual_m = std::abs(sol.path_difference_m - quarter_wave_target(p, carrier));
    sol.far_field = check_far_field(distance_m, sol.spacing_m);
    return sol;
}

std::vector<DesignSolution> optimal_distances(double spacing_m, const Carrier &carrier, int p_max)
{
    if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
        throw std::invalid_argument("optimal_distances: spacing must be finite and > 0");
    if (p_max < 0)
        throw std::invalid_argument("optimal_distances: p_max must be >= 0");

    std::vector<DesignSolution> solutions;
    solutions.reserve(static_cast<std::size_t>(p_max) + 1);
    for (int p = 0; p <= p_max; ++p) // ascending p = descending distance
    {
        DesignSolution sol;
        sol.p = p;
        sol.spacing_m = spacing_m;
        sol.distance_m = 2.0 * spacing_m * spacing_m / ((2.0 * p + 1.0) * carrier.wavelength_m);
        sol.path_difference_m = path_difference(sol.distance_m, spacing_m);
        sol.residual_m = std::abs(sol.path_difference_m - quarter_wave_target(p, carrier));
        sol.far_field = check_far_field(sol.distance_m, spacing_m);
        solutions.push_back(sol);
    }
    return solutions;
}

DesignSolution refine_exact(const DesignSolution &solution, const Carrier &carrier,
                            RefineVariable vary)
{
    if (!(solution.spacing_m > 0.0) || !(solution.distance_m > 0.0) || solution.p < 0)
        throw std::invalid_argument("refine_exact: seed solution is not valid");

    const double target = quarter_wave_target(solution.p, carrier);
    const auto mismatch = [&](double x) {
        return vary == RefineVariable::spacing
                   ? path_difference(solution.distance_m, x) - target
                   : path_difference(x, solution.spacing_m) - target;
    };

    const double seed =
        vary == RefineVariable::spacing ? solution.spacing_m : solution.distance_m;
    if (std::abs(mismatch(seed)) < kRefinedResidualMax)
        return solution; // already exact

    const double lo = 0.5 * seed;
    const double hi = 2.0 * seed;
    if (mismatch(lo) * mismatch(hi) > 0.0)
    {
        std::ostringstream msg;
        msg << "refine_exact: no root within [" << lo << ", " << hi
            << "] m; far-field assumption invalid for this seed (distance ~ spacing or smaller)";
        throw std::invalid_argument(msg.str());
    }

    const double root = brent_root(mismatch, lo, hi, kBracketWidthStop);

    DesignSolution refined = solution;
    if (vary == RefineVariable::spacing)
        refined.spacing_m = root;
    else
        refined.distance_m = root;
    refined.path_difference_m = path_difference(refined.distance_m, refined.spacing_m);
    refined.residual_m = std::abs(refined.path_difference_m - target);
    refined.far_field = check_far_field(refined.distance_m, refined.spacing_m);
    return refined;
}

} // namespace losmimo
