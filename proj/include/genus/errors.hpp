#pragma once

#include <stdexcept>
#include <string>

namespace genus {

// Malformed cycle notation or expression text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration would exceed the configured letter budget.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs that parse but violate an operation's contract
// (ground-set mismatch, non-premap, dimension mismatch, ...).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace genus
