/*
 * Copyright 2026 The polyddp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef POLYDDP_ERRORS_HPP
#define POLYDDP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyddp {

// Bad shapes, indices, or option values supplied by the caller.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A function was evaluated outside its domain. Carries the offending value.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, double value)
      : std::domain_error(what + " (value " + std::to_string(value) + ")"), value_(value) {}

  double value() const { return value_; }

  // Same error with a location prefix, e.g. "stage 3" or "substep 12".
  DomainError in_context(const std::string& where) const {
    return DomainError(where + ": " + what(), value_, 0);
  }

 private:
  DomainError(const std::string& message, double value, int)
      : std::domain_error(message), value_(value) {}

  double value_;
};

// The requested quantity cannot be represented (e.g. Hessian at order 1).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Scenario file parse/validation failure.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyddp

#endif  // POLYDDP_ERRORS_HPP
