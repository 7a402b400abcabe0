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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace activeris {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Base for every error raised by the library. The C API maps each subclass
// onto its own status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Out-of-range argument or mismatched dimensions.
class DomainError : public Error {
public:
    using Error::Error;
};

// The RIS noise floor alone exhausts the reflect-power budget.
class InfeasibleAmplificationError : public Error {
public:
    using Error::Error;
};

// A + lambda*Q stays singular with b outside its range: the QCQP is unbounded.
class RegularizationError : public Error {
public:
    using Error::Error;
};

// Malformed scenario file or CLI value.
class ConfigError : public Error {
public:
    using Error::Error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition)
        throw DomainError(message);
}

} // namespace activeris
