#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "bnet/score.hpp"

namespace bnet {

/// Node constraints on the candidate space: variables forbidden to have
/// parents, variables forbidden to have children, and an optional cap on
/// parent-set size.
struct StructureConstraints {
  std::set<int> no_parents;
  std::set<int> no_children;
  std::optional<int> max_parents;
};

struct SearchOptions {
  std::size_t candidate_cap = 1'000'000;  // exhaustive enumeration cap
  bool parallel = true;
  int greedy_restarts = 10;
};

/// Ranked structure scores. Ranking is non-increasing in log posterior with
/// ties broken lexicographically on the sorted edge list, so reports are
/// byte-stable across runs and thread counts.
struct SearchReport {
  std::vector<StructureScore> ranked;
  std::size_t candidate_count = 0;
  double wall_seconds = 0.0;
};

// Visit every constraint-satisfying DAG over the domain exactly once, in a
// fixed deterministic order (variables ascending, parent sets in increasing
// bitmask order). Candidates are presented as parent-mask vectors.
void enumerate_structures(
    const Domain& domain, const StructureConstraints& constraints,
    const std::function<void(std::span<const std::uint64_t>)>& visit);

// Convenience: materialize the enumeration. Throws Error once more than
// `cap` candidates exist.
std::vector<std::vector<std::uint64_t>> enumerate_structure_masks(
    const Domain& domain, const StructureConstraints& constraints,
    std::size_t cap);

DagStructure structure_from_masks(const Domain& domain,
                                  std::span<const std::uint64_t> masks);

// Score every candidate (uniform structure prior) and return the top k.
// Candidate scoring runs across OpenMP threads when options.parallel is
// set; per-candidate scores do not depend on the thread count and the
// serial path is kept as the reference for the equivalence tests.
SearchReport exhaustive_search(const Dataset& data,
                               const DiscreteBayesNet& prior_net, double ess,
                               const StructureConstraints& constraints,
                               int top_k, const SearchOptions& options = {});

/// Hill climbing over add/delete/reverse single-edge moves, rescoring only
/// the families a move changes. Restart 0 starts from the empty graph, the
/// rest from random constraint-satisfying DAGs drawn from the seed. Returns
/// the distinct local optima ranked like exhaustive_search. This search is
/// an extension for spaces too large to enumerate.
SearchReport greedy_search(const Dataset& data,
                           const DiscreteBayesNet& prior_net, double ess,
                           const StructureConstraints& constraints,
                           std::uint64_t seed,
                           const SearchOptions& options = {});

}  // namespace bnet
