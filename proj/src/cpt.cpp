#include "bnet/cpt.hpp"

#include <cmath>

#include "bnet/indexing.hpp"

namespace bnet {

const std::vector<double>& Cpt::row_for(const DagStructure& s,
                                        std::span<const int> assignment) const {
  std::vector<int> cards, states;
  cards.reserve(parent_order.size());
  states.reserve(parent_order.size());
  for (int p : parent_order) {
    cards.push_back(s.cardinality(p));
    states.push_back(assignment[p]);
  }
  return rows[parent_config_index(cards, states)];
}

std::vector<std::string> validate_cpt(const Cpt& cpt, const DagStructure& s) {
  std::vector<std::string> violations;
  const std::string who = "variable " + s.variables[cpt.child].name;
  std::vector<int> cards;
  for (int p : cpt.parent_order) cards.push_back(s.cardinality(p));
  const std::size_t expected_rows = num_configs(cards);
  if (cpt.rows.size() != expected_rows) {
    violations.push_back(who + ": row count " + std::to_string(cpt.rows.size()) +
                         " != product of parent cardinalities " +
                         std::to_string(expected_rows));
    return violations;
  }
  const std::size_t r = s.variables[cpt.child].states.size();
  for (std::size_t j = 0; j < cpt.rows.size(); ++j) {
    const auto& row = cpt.rows[j];
    if (row.size() != r) {
      violations.push_back(who + ": row " + std::to_string(j) + " has wrong arity");
      continue;
    }
    double sum = 0.0;
    bool bounded = true;
    for (double v : row) {
      sum += v;
      if (v < 0.0 || v > 1.0) bounded = false;
    }
    if (!bounded)
      violations.push_back(who + ": row " + std::to_string(j) +
                           " has entries outside [0,1]");
    if (std::abs(sum - 1.0) > 1e-12)
      violations.push_back(who + ": row " + std::to_string(j) + " not normalized");
  }
  return violations;
}

}  // namespace bnet
