// SPDX-License-Identifier: Apache-2.0
//
// spgamma: coherent Smith-Purcell gamma-ray emission from resonant nuclei
// Copyright (C) 2026 The spgamma authors
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

#ifndef SPGAMMA_ERRORS_HPP
#define SPGAMMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spgamma {

// Base of every exception thrown by the library. The C API maps each
// subclass onto one spg_status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical or physical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// An iterative procedure hit its refinement cap. Carries the last two
// estimates so callers can judge how far off it was.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double previous, double last)
        : Error(what), previous_(previous), last_(last) {}

    double previous() const noexcept { return previous_; }
    double last() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

// Malformed data file. line() is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& detail, int line, const std::string& source = {})
        : Error(format(detail, line, source)), detail_(detail), line_(line) {}

    const std::string& detail() const noexcept { return detail_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& detail, int line, const std::string& source)
    {
        std::string where = source;
        if (line > 0)
            where += (source.empty() ? "line " : ":") + std::to_string(line);
        return where.empty() ? detail : where + ": " + detail;
    }

    std::string detail_;
    int line_;
};

// Lookup of an unknown nuclide or lattice preset.
class NotFoundError : public Error {
public:
    using Error::Error;
};

} // namespace spgamma

#endif
