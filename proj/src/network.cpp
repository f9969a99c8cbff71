#include "bnet/network.hpp"

#include <algorithm>

#include "bnet/rng.hpp"

namespace bnet {

std::vector<std::string> validate_network(const DiscreteBayesNet& net) {
  std::vector<std::string> violations = validate_structure(net.structure);
  if (net.cpts.size() != net.structure.variables.size()) {
    violations.push_back("network: cpt count does not match domain size");
    return violations;
  }
  for (int i = 0; i < net.size(); ++i) {
    const Cpt& cpt = net.cpts[i];
    const std::string who = "variable " + net.structure.variables[i].name;
    if (cpt.child != i) {
      violations.push_back(who + ": cpt child index mismatch");
      continue;
    }
    std::vector<int> sorted = cpt.parent_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != net.structure.parents[i]) {
      violations.push_back(who + ": cpt parent_order does not match structure parents");
      continue;
    }
    auto row_violations = validate_cpt(cpt, net.structure);
    violations.insert(violations.end(), row_violations.begin(), row_violations.end());
  }
  return violations;
}

double joint_probability(const DiscreteBayesNet& net,
                         std::span<const int> assignment) {
  if (assignment.size() != static_cast<std::size_t>(net.size()))
    throw Error("joint_probability: assignment does not cover every variable");
  double p = 1.0;
  for (int i = 0; i < net.size(); ++i) {
    const auto& row = net.cpts[i].row_for(net.structure, assignment);
    p *= row[assignment[i]];
  }
  return p;
}

DiscreteBayesNet uniform_joint_net(const Domain& domain) {
  DiscreteBayesNet net;
  net.structure = DagStructure(domain);
  net.cpts.resize(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const int r = domain[i].cardinality();
    net.cpts[i].child = static_cast<int>(i);
    net.cpts[i].rows = {std::vector<double>(r, 1.0 / r)};
  }
  return net;
}

std::vector<int> sample_case(const DiscreteBayesNet& net, Rng& rng) {
  auto order = net.structure.topological_order();
  if (!order) throw Error("sample_case: network is cyclic");
  std::vector<int> assignment(net.size(), 0);
  for (int v : *order) {
    const auto& row = net.cpts[v].row_for(net.structure, assignment);
    assignment[v] = rng.sample_discrete(row);
  }
  return assignment;
}

}  // namespace bnet
