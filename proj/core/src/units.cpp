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

#include "losmimo/units.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string_view>

namespace losmimo
{

namespace
{

struct Suffix
{
    std::string_view name; // lowercase
    double factor;
};

double parse_with_suffixes(const std::string &text, std::span<const Suffix> suffixes,
                           const std::string &what)
{
    if (text.empty())
        throw std::invalid_argument("empty " + what);

    double value = 0.0;
    const char *begin = text.data();
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin)
        throw std::invalid_argument("malformed " + what + " '" + text + "'");

    std::string suffix(ptr, end);
    std::transform(suffix.begin(), suffix.end(), suffix.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    if (suffix.empty())
        return value;
    for (const auto &s : suffixes)
        if (suffix == s.name)
            return value * s.factor;
    throw std::invalid_argument("unknown unit '" + std::string(ptr, end) + "' in " + what + " '" +
                                text + "'");
}

} // namespace

double parse_frequency(const std::string &text)
{
    static constexpr std::array<Suffix, 5> suffixes = {{
        {"hz", 1.0},
        {"khz", 1e3},
        {"mhz", 1e6},
        {"ghz", 1e9},
        {"thz", 1e12},
    }};
    const double hz = parse_with_suffixes(text, suffixes, "frequency");
    if (!std::isfinite(hz))
        throw std::invalid_argument("frequency '" + text + "' is not finite");
    return hz;
}

double parse_length(const std::string &text)
{
    static constexpr std::array<Suffix, 4> suffixes = {{
        {"m", 1.0},
        {"cm", 1e-2},
        {"mm", 1e-3},
        {"um", 1e-6},
    }};
    const double meters = parse_with_suffixes(text, suffixes, "length");
    if (!std::isfinite(meters))
        throw std::invalid_argument("length '" + text + "' is not finite");
    return meters;
}

std::string format_double(double value)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return {buf.data(), ptr};
}

std::string format_fixed(double value, int decimals)
{
    std::array<char, 64> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
    return {buf.data(), static_cast<std::size_t>(len)};
}

std::string format_sig(double value, int significant)
{
    std::array<char, 64> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.*g", significant, value);
    return {buf.data(), static_cast<std::size_t>(len)};
}

} // namespace losmimo
