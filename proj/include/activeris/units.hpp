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

#pragma once

#include <cmath>
#include <string_view>

namespace activeris::units {

// All library math is in linear SI units (W, linear gain); conversions
// happen at the edges through these helpers.

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

inline double dbw_to_watt(double dbw) { return db_to_linear(dbw); }
inline double watt_to_dbw(double watt) { return linear_to_db(watt); }

// Parses "<number>[unit]" where unit is one of W, mW, dBW, dBm, dB or empty.
// Power units yield watts, "dB" yields a linear ratio, no unit passes the
// number through. Throws ConfigError on malformed input.
double parse_quantity(std::string_view text);

} // namespace activeris::units
