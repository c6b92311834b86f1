// SPDX-License-Identifier: Apache-2.0
//
// tsnsim: 5G-TSN link simulator for indoor-factory radio environments
// Copyright (C) 2026 The tsnsim authors
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

#ifndef TSNSIM_ERRORS_HPP
#define TSNSIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsnsim {

// Argument outside the mathematical domain of a model function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Model variant that has no definition for the requested quantity (e.g. InF-HH NLOS).
class UnsupportedVariant : public DomainError {
public:
    using DomainError::DomainError;
};

// Invalid scenario or configuration value. `key()` names the offending setting.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string &what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

// Syntax error in a configuration file.
class ParseError : public ConfigError {
public:
    ParseError(std::size_t line, const std::string &what)
        : ConfigError("", "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A broken simulator invariant (event in the past, misuse of a finished HARQ process, ...).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace tsnsim

#endif
