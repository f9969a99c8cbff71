#include "bnet/types.hpp"

#include <set>

namespace bnet {

int domain_index(const Domain& domain, const std::string& name) {
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (domain[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> validate_domain(const Domain& domain) {
  std::vector<std::string> violations;
  std::set<std::string> names;
  for (const auto& var : domain) {
    if (var.states.size() < 2)
      violations.push_back("variable " + var.name + ": fewer than 2 states");
    std::set<std::string> labels(var.states.begin(), var.states.end());
    if (labels.size() != var.states.size())
      violations.push_back("variable " + var.name + ": duplicate state labels");
    if (!names.insert(var.name).second)
      violations.push_back("variable " + var.name + ": duplicate name in domain");
  }
  return violations;
}

}  // namespace bnet
