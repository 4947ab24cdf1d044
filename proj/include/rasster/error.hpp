// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The rasster authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rasster {

// Base of every error the library throws. Callers that only care about
// "the request was invalid" can catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidPlan : public Error {
public:
    using Error::Error;
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

class InfeasibleScene : public Error {
public:
    using Error::Error;
};

class CapacityError : public Error {
public:
    using Error::Error;
};

class UndefinedMetric : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class OracleInfeasible : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Thrown by the least-squares refit when the selected columns are
// numerically dependent. Carries the support accepted before the failure.
class NumericalDegeneracy : public Error {
public:
    NumericalDegeneracy(const std::string& what, std::vector<std::size_t> partial)
        : Error(what), partial_support_(std::move(partial)) {}

    const std::vector<std::size_t>& partial_support() const noexcept { return partial_support_; }

private:
    std::vector<std::size_t> partial_support_;
};

} // namespace rasster
