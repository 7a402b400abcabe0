// activeris - active/passive RIS signal models and beamforming optimization
// Copyright (C) 2026 The activeris authors
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

#include "activeris/units.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "activeris/types.hpp"

namespace activeris::units {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool iequals(std::string_view a, std::string_view b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

} // namespace

double parse_quantity(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s.empty())
        throw ConfigError("empty numeric value");

    // std::from_chars for double is available in libstdc++ 11.
    double value = 0.0;
    const char* first = s.data();
    if (*first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
    if (ec != std::errc())
        throw ConfigError("malformed number: '" + std::string(s) + "'");

    const std::string_view unit = trim(std::string_view(ptr, s.data() + s.size() - ptr));
    if (unit.empty())
        return value;
    if (iequals(unit, "W"))
        return value;
    if (iequals(unit, "mW"))
        return value * 1e-3;
    if (iequals(unit, "dBW"))
        return dbw_to_watt(value);
    if (iequals(unit, "dBm"))
        return dbm_to_watt(value);
    if (iequals(unit, "dB"))
        return db_to_linear(value);
    throw ConfigError("unknown unit '" + std::string(unit) + "' in '" + std::string(s) + "'");
}

} // namespace activeris::units
