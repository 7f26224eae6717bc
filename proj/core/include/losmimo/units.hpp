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

#ifndef LOSMIMO_UNITS_HPP
#define LOSMIMO_UNITS_HPP

#include <string>

namespace losmimo
{

// Command-line quantity parsing. Plain numbers (scientific notation
// included) are base units; recognized suffixes convert:
//   frequency: Hz, kHz, MHz, GHz, THz     -> Hz
//   length:    m, cm, mm, um              -> m
// Suffixes are case-insensitive. Throws std::invalid_argument on
// malformed input.
double parse_frequency(const std::string &text);
double parse_length(const std::string &text);

// Shortest round-trip decimal representation of a double (std::to_chars).
std::string format_double(double value);

// Fixed-width helpers used by the CSV and SVG emitters.
std::string format_fixed(double value, int decimals);
std::string format_sig(double value, int significant);

} // namespace losmimo

#endif
