#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bnet/network.hpp"

namespace bnet {

struct DecisionVar {
  std::string name;
  std::vector<std::string> alternatives;  // >= 1

  int cardinality() const { return static_cast<int>(alternatives.size()); }
};

/// An influence diagram with all decisions made up front: decision
/// variables (no parents), uncertainty variables whose CPT parents may
/// include decisions, and exactly one deterministic outcome node mapping
/// (all decisions, designated uncertainty parents) to a labeled outcome
/// with a utility.
///
/// Node ids: decisions take 0..d-1 in declaration order, uncertainties
/// d..d+u-1. CPT parent_order and outcome_parents use these ids.
struct InfluenceDiagram {
  std::vector<DecisionVar> decisions;
  Domain uncertainties;
  std::vector<Cpt> cpts;  // one per uncertainty, child = uncertainty id

  std::vector<int> outcome_parents;        // uncertainty node ids
  std::vector<std::string> outcome_map;    // over (decisions..., outcome_parents...)
  std::map<std::string, double> utilities; // outcome label -> utility

  int num_decisions() const { return static_cast<int>(decisions.size()); }
  int num_uncertainties() const { return static_cast<int>(uncertainties.size()); }
  int node_count() const { return num_decisions() + num_uncertainties(); }
  int cardinality(int node_id) const;
  std::string node_name(int node_id) const;
};

// Diagram invariants: acyclic uncertainty subgraph, exactly one outcome
// map entry per configuration, a utility for every outcome label, decisions
// parent-free. Utilities outside [0,1] are reported as warnings by the CLI
// but accepted, since a positive linear transform never changes the choice.
std::vector<std::string> validate_diagram(const InfluenceDiagram& id);

struct MeuResult {
  std::vector<std::vector<int>> assignments;  // all joint decision assignments
  std::vector<double> expected_utility;       // EU per assignment
  int best = -1;                              // argmax, ties to the first
};

// Expected utility of every joint decision assignment, computed from the
// posterior over the outcome's uncertainty parents via the inference
// module. The chosen assignment is the lexicographically first argmax.
MeuResult meu_solve(const InfluenceDiagram& id);

/// A decision tree: decision nodes choose an edge, chance nodes weight
/// their edges with probabilities summing to 1, leaves carry utilities.
struct DecisionTree {
  struct Node;
  using NodePtr = std::unique_ptr<Node>;

  enum class Kind { kDecision, kChance, kLeaf };

  struct Edge {
    std::string label;
    double prob = 0.0;  // chance edges only
    NodePtr child;
  };

  struct Node {
    Kind kind = Kind::kLeaf;
    std::string name;
    double utility = 0.0;  // leaves only
    std::vector<Edge> edges;
  };

  NodePtr root;

  static NodePtr leaf(double utility);
  static NodePtr decision(std::string name,
                          std::vector<std::pair<std::string, NodePtr>> edges);
  static NodePtr chance(std::string name,
                        std::vector<std::tuple<std::string, double, NodePtr>> edges);
};

struct RollbackResult {
  double value = 0.0;
  // Chosen edge label per decision node, keyed by the slash-joined edge
  // path from the root ("" for a root decision).
  std::map<std::string, std::string> policy;
};

// Expectation at chance nodes, maximum at decision nodes (first edge wins
// ties). Throws on malformed trees.
RollbackResult rollback(const DecisionTree& tree);

/// Log scoring rule: the utility of reporting distribution q and observing
/// state x is ln q(x). Proper: truthful reporting maximizes expected score.
/// A zero reported probability at the observed state returns -infinity.
double log_score(std::span<const double> reported, int observed);

}  // namespace bnet
