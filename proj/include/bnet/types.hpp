#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bnet {

// Domain and data errors raised by library operations.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by posterior queries whose evidence has zero prior probability.
struct ImpossibleEvidence : Error {
  using Error::Error;
};

/// A discrete variable: a name plus an ordered list of mutually exclusive,
/// exhaustive state labels.
struct Variable {
  std::string name;
  std::vector<std::string> states;

  int cardinality() const { return static_cast<int>(states.size()); }

  // Index of a state label, -1 if unknown.
  int state_index(const std::string& label) const {
    for (std::size_t k = 0; k < states.size(); ++k)
      if (states[k] == label) return static_cast<int>(k);
    return -1;
  }
};

// An ordered set of variables with unique names.
using Domain = std::vector<Variable>;

// Index of a variable by name, -1 if absent.
int domain_index(const Domain& domain, const std::string& name);

// Violations of the Variable/Domain invariants (>=2 states, unique state
// labels, unique variable names). Empty means well formed.
std::vector<std::string> validate_domain(const Domain& domain);

}  // namespace bnet
