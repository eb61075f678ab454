/*
   Copyright 2026 The kts Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kts {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands belong to different field representations, or a map does not fit its fields.
class ContextError : public Error {
  public:
    using Error::Error;
};

/// Arithmetic outside the domain of an operation (zero divisor, composite characteristic, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A polynomial or tower spec has the wrong degree shape.
class ShapeError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

/// Root extraction would need an ambient field larger than the allowed degree over GF(p).
class BudgetExceeded : public Error {
  public:
    explicit BudgetExceeded(int required_degree)
        : Error("ambient degree " + std::to_string(required_degree) + " exceeds budget"),
          required_degree_(required_degree) {}

    int required_degree() const noexcept { return required_degree_; }

  private:
    int required_degree_;
};

class DegenerateBound : public Error {
  public:
    using Error::Error;
};

}  // namespace kts
