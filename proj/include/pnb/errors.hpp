#pragma once

#include <stdexcept>
#include <string>

namespace pnb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arity mismatch in composition or comparison.
struct TypeError : Error {
  using Error::Error;
};

/// Malformed input value (unknown place, marking over the wrong net, ...).
struct InputError : Error {
  using Error::Error;
};

/// A configured resource budget was exceeded.
struct BudgetError : Error {
  using Error::Error;
};

/// An operation was called outside its contract.
struct ContractError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(int line, int col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

}  // namespace pnb
