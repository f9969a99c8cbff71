#pragma once

#include <span>
#include <vector>

#include "bnet/graph.hpp"

namespace bnet {

/// Conditional probability table for one variable: one probability row over
/// the child's states per configuration of the parents. Rows are ordered by
/// parent_config_index over parent_order.
struct Cpt {
  int child = -1;
  std::vector<int> parent_order;
  std::vector<std::vector<double>> rows;

  // The row matching the parent states found in a full assignment.
  const std::vector<double>& row_for(const DagStructure& s,
                                     std::span<const int> assignment) const;

  std::size_t row_count() const { return rows.size(); }
};

// Row-level checks: entry bounds, normalization within 1e-12, row count
// equal to the product of parent cardinalities.
std::vector<std::string> validate_cpt(const Cpt& cpt, const DagStructure& s);

}  // namespace bnet
