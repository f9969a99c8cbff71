#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bnet/types.hpp"

namespace bnet {

/// A directed acyclic structure over a domain: one parent set per variable.
/// Parent sets are kept sorted ascending.
struct DagStructure {
  Domain variables;
  std::vector<std::vector<int>> parents;

  DagStructure() = default;
  explicit DagStructure(Domain vars)
      : variables(std::move(vars)), parents(variables.size()) {}

  int size() const { return static_cast<int>(variables.size()); }
  int cardinality(int i) const { return variables[i].cardinality(); }

  // Cardinalities of a variable's parents, in parent-set order.
  std::vector<int> parent_cards(int i) const;

  bool has_edge(int parent, int child) const;
  void add_edge(int parent, int child);     // keeps the set sorted
  void remove_edge(int parent, int child);  // no-op if absent

  // Sorted (parent, child) pairs; the repo-wide canonical edge list used
  // for deterministic tie-breaking.
  std::vector<std::pair<int, int>> edges() const;

  // Kahn's algorithm. nullopt iff the graph has a cycle.
  std::optional<std::vector<int>> topological_order() const;
  bool is_acyclic() const { return topological_order().has_value(); }

  // Render edges as "A->B, C->D" using variable names.
  std::string edges_to_string() const;
};

// Violations of the structural invariants: parent indices in range, no
// self-parents, acyclicity. Empty means well formed.
std::vector<std::string> validate_structure(const DagStructure& s);

/// Canonical signature of a structure's Markov equivalence class:
/// the skeleton plus the set of colliders whose parents are non-adjacent.
/// Two structures share a signature iff they encode the same conditional
/// independencies (validated against a d-separation oracle in the tests).
struct EquivalenceSignature {
  std::vector<std::pair<int, int>> skeleton;    // (min,max), sorted
  std::vector<std::array<int, 3>> vstructures;  // (pa_min, pa_max, child), sorted

  friend bool operator==(const EquivalenceSignature&,
                         const EquivalenceSignature&) = default;
  friend auto operator<=>(const EquivalenceSignature&,
                          const EquivalenceSignature&) = default;
};

EquivalenceSignature equivalence_signature(const DagStructure& s);

}  // namespace bnet
