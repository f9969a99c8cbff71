#pragma once

#include <map>
#include <span>
#include <vector>

#include "bnet/network.hpp"

namespace bnet {

/// A posterior query: joint distribution over `targets` given `evidence`.
/// Targets and evidence must be disjoint.
struct Query {
  std::vector<int> targets;
  std::map<int, int> evidence;
};

/// Joint posterior over the query targets, in target order, probabilities
/// laid out by parent_config_index over the target cardinalities.
struct PosteriorTable {
  std::vector<int> targets;
  std::vector<int> cards;
  std::vector<double> probs;

  double at(std::span<const int> target_states) const;
};

// Exact posterior by full joint enumeration. Throws ImpossibleEvidence when
// the evidence has zero prior probability.
PosteriorTable query_enumeration(const DiscreteBayesNet& net, const Query& query);

// Same distribution computed by variable elimination after pruning factors
// that cannot influence the answer (non-ancestors of targets and evidence).
// Elimination order is a min-degree greedy heuristic; it affects speed only.
PosteriorTable query_eliminate(const DiscreteBayesNet& net, const Query& query);

}  // namespace bnet
