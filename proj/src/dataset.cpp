#include "bnet/dataset.hpp"

#include "bnet/indexing.hpp"

namespace bnet {

void Dataset::add_case(std::vector<int> states) {
  forced.emplace_back(states.size(), 0);
  cases.push_back(std::move(states));
}

void Dataset::add_case(std::vector<int> states,
                       std::vector<std::uint8_t> forced_mask) {
  if (forced_mask.size() != states.size())
    throw Error("add_case: forced mask shape differs from case shape");
  cases.push_back(std::move(states));
  forced.push_back(std::move(forced_mask));
}

std::vector<std::string> validate_dataset(const Dataset& data) {
  std::vector<std::string> violations = validate_domain(data.variables);
  if (data.forced.size() != data.cases.size()) {
    violations.push_back("dataset: forced mask row count differs from case count");
    return violations;
  }
  const std::size_t n = data.variables.size();
  for (std::size_t r = 0; r < data.cases.size(); ++r) {
    if (data.cases[r].size() != n || data.forced[r].size() != n) {
      violations.push_back("dataset: row " + std::to_string(r) + " has wrong width");
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      int s = data.cases[r][i];
      if (s < 0 || s >= data.variables[i].cardinality())
        violations.push_back("dataset: row " + std::to_string(r) + ", variable " +
                             data.variables[i].name + ": state index out of range");
    }
  }
  return violations;
}

long long CountsTable::total() const {
  long long t = 0;
  for (long long c : counts) t += c;
  return t;
}

std::vector<std::string> validate_counts(const CountsTable& table) {
  std::vector<std::string> violations = validate_domain(table.variables);
  std::vector<int> cards;
  for (const auto& v : table.variables) cards.push_back(v.cardinality());
  if (table.counts.size() != num_configs(cards))
    violations.push_back("counts: length " + std::to_string(table.counts.size()) +
                         " != product of cardinalities " +
                         std::to_string(num_configs(cards)));
  for (std::size_t i = 0; i < table.counts.size(); ++i)
    if (table.counts[i] < 0)
      violations.push_back("counts: negative count at entry " + std::to_string(i));
  return violations;
}

Dataset expand_counts(const CountsTable& table) {
  auto violations = validate_counts(table);
  if (!violations.empty()) throw Error("expand_counts: " + violations.front());
  Dataset data;
  data.variables = table.variables;
  std::vector<int> cards;
  for (const auto& v : table.variables) cards.push_back(v.cardinality());
  std::vector<int> config(cards.size(), 0);
  for (std::size_t idx = 0; idx < table.counts.size(); ++idx) {
    for (long long c = 0; c < table.counts[idx]; ++c) data.add_case(config);
    next_config(cards, config);
  }
  return data;
}

}  // namespace bnet
