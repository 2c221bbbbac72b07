// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlgames {

/// Unsupported arity, or two objects whose arities disagree.
class ArityError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Variable, qubit or player index outside the valid range.
class IndexError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// A numeric precondition failed (non-finite angle, non-unitary matrix, ...).
class NumericError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Malformed text input. `position()` is the byte offset of the problem.
class ParseError : public std::invalid_argument {
  public:
    ParseError(const std::string &what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)),
          position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

class UnknownVariableError : public ParseError {
  public:
    UnknownVariableError(const std::string &name, std::size_t position)
        : ParseError("unknown variable '" + name + "'", position), name_(name) {}

    [[nodiscard]] const std::string &name() const noexcept { return name_; }

  private:
    std::string name_;
};

} // namespace nlgames
