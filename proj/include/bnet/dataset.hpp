#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnet/types.hpp"

namespace bnet {

/// Complete discrete cases over a domain. forced[r][i] marks the value in
/// cases[r][i] as set by intervention rather than observed: a forced cell
/// never contributes to its own family's counts, but it still supplies a
/// parent value to its children.
struct Dataset {
  Domain variables;
  std::vector<std::vector<int>> cases;
  std::vector<std::vector<std::uint8_t>> forced;

  std::size_t num_cases() const { return cases.size(); }
  int num_vars() const { return static_cast<int>(variables.size()); }

  // Append a fully observed case.
  void add_case(std::vector<int> states);
  // Append a case with explicit per-cell intervention flags.
  void add_case(std::vector<int> states, std::vector<std::uint8_t> forced_mask);
};

// Shape and range checks; empty means well formed.
std::vector<std::string> validate_dataset(const Dataset& data);

/// A flat contingency table: counts over all joint configurations of the
/// domain, in parent_config_index order (last variable varying fastest).
struct CountsTable {
  Domain variables;
  std::vector<long long> counts;

  long long total() const;
};

std::vector<std::string> validate_counts(const CountsTable& table);

// Replicate each configuration count-many times, in table order.
Dataset expand_counts(const CountsTable& table);

}  // namespace bnet
