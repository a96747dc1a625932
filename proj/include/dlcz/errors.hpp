// Copyright 2026 The dlczsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlcz {

/// Malformed config text. Carries the 1-based line and column of the problem.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, const std::string &what);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

/// One violated config invariant.
struct Violation {
    std::string key;
    std::string message;

    bool operator==(const Violation &) const = default;
};

/// A config that parsed but violates one or more invariants.
class ValidationError : public std::invalid_argument {
   public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation> &violations() const noexcept { return violations_; }

   private:
    std::vector<Violation> violations_;
};

/// An argument outside the mathematical domain of an operation (p < 0, eta > 1, ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A caller broke a documented precondition on data shape (unsorted stream, span too small).
class ContractViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// A normalized correlation whose denominator vanished.
class UndefinedCorrelation : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure, with the offending path in the message.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace dlcz
