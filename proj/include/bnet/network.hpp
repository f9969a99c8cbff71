#pragma once

#include <span>
#include <vector>

#include "bnet/cpt.hpp"
#include "bnet/graph.hpp"

namespace bnet {

/// A discrete directed graphical model: a DAG structure plus one CPT per
/// variable. The implied joint is the product of the per-family rows.
/// Immutable after construction; safe to share across concurrent readers.
struct DiscreteBayesNet {
  DagStructure structure;
  std::vector<Cpt> cpts;

  int size() const { return structure.size(); }
};

// All type invariants: domain, structure, CPT shape/normalization and the
// agreement of each cpt's parent_order with the structure's parent set.
// Each violation names the variable and the rule broken.
std::vector<std::string> validate_network(const DiscreteBayesNet& net);

// p(assignment) = product over families of the matching CPT entries.
// The assignment must cover every variable.
double joint_probability(const DiscreteBayesNet& net,
                         std::span<const int> assignment);

// Net over the same domain with no edges and uniform rows; its implied
// joint is the uniform distribution.
DiscreteBayesNet uniform_joint_net(const Domain& domain);

class Rng;

// Draw one full assignment by sampling each variable given its parents in
// topological order.
std::vector<int> sample_case(const DiscreteBayesNet& net, Rng& rng);

}  // namespace bnet
