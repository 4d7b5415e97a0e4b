// Copyright 2026 The cointurn Authors.
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

#ifndef COINTURN_ERRORS_HPP_
#define COINTURN_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cointurn {

// Malformed text input. `position` is a 0-based character offset into the
// parsed string (or a 1-based line number for table files, see `line`).
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
      : std::invalid_argument(what), position_(position), line_(line) {}
  std::size_t position() const { return position_; }
  std::size_t line() const { return line_; }

 private:
  std::size_t position_;
  std::size_t line_;
};

// A parameter outside the domain of the model or function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition of an operation does not hold. `index` names the
// first offending step index when one exists.
class PreconditionError : public std::logic_error {
 public:
  PreconditionError(const std::string& what, std::size_t index = 0)
      : std::logic_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// A horizon, path count or other size exceeds an implementation cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace cointurn

#endif  // COINTURN_ERRORS_HPP_
