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

#ifndef LOSMIMO_SVG_HPP
#define LOSMIMO_SVG_HPP

#include <string>

#include "losmimo/sweep.hpp"

namespace losmimo
{

// Renders a sweep as a single self-contained SVG document: axes, tick
// labels, and one polyline with a vertex per successful row. Output is
// byte-deterministic for identical input. Throws when the result has no
// plottable rows.
std::string render_sweep_svg(const SweepResult &result);

// render_sweep_svg written to a file; throws on I/O failure.
void emit_plot(const SweepResult &result, const std::string &path);

} // namespace losmimo

#endif
