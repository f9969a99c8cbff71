#include "bnet/graph.hpp"

#include <algorithm>
#include <queue>

namespace bnet {

std::vector<int> DagStructure::parent_cards(int i) const {
  std::vector<int> cards;
  cards.reserve(parents[i].size());
  for (int p : parents[i]) cards.push_back(cardinality(p));
  return cards;
}

bool DagStructure::has_edge(int parent, int child) const {
  const auto& ps = parents[child];
  return std::binary_search(ps.begin(), ps.end(), parent);
}

void DagStructure::add_edge(int parent, int child) {
  auto& ps = parents[child];
  auto it = std::lower_bound(ps.begin(), ps.end(), parent);
  if (it == ps.end() || *it != parent) ps.insert(it, parent);
}

void DagStructure::remove_edge(int parent, int child) {
  auto& ps = parents[child];
  auto it = std::lower_bound(ps.begin(), ps.end(), parent);
  if (it != ps.end() && *it == parent) ps.erase(it);
}

std::vector<std::pair<int, int>> DagStructure::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int child = 0; child < size(); ++child)
    for (int p : parents[child]) out.emplace_back(p, child);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<int>> DagStructure::topological_order() const {
  const int n = size();
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> children(n);
  for (int child = 0; child < n; ++child) {
    indegree[child] = static_cast<int>(parents[child].size());
    for (int p : parents[child]) children[p].push_back(child);
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : children[v])
      if (--indegree[c] == 0) ready.push(c);
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

std::string DagStructure::edges_to_string() const {
  std::string out;
  for (const auto& [p, c] : edges()) {
    if (!out.empty()) out += ", ";
    out += variables[p].name + "->" + variables[c].name;
  }
  return out.empty() ? "(empty)" : out;
}

std::vector<std::string> validate_structure(const DagStructure& s) {
  std::vector<std::string> violations = validate_domain(s.variables);
  if (s.parents.size() != s.variables.size()) {
    violations.push_back("structure: parent-set count does not match domain size");
    return violations;
  }
  const int n = s.size();
  bool indices_ok = true;
  for (int i = 0; i < n; ++i) {
    for (int p : s.parents[i]) {
      if (p < 0 || p >= n) {
        violations.push_back("variable " + s.variables[i].name +
                             ": parent index out of range");
        indices_ok = false;
      } else if (p == i) {
        violations.push_back("variable " + s.variables[i].name + ": self-parent");
        indices_ok = false;
      }
    }
  }
  if (indices_ok && !s.is_acyclic())
    violations.push_back("structure: acyclicity violated (no topological order)");
  return violations;
}

EquivalenceSignature equivalence_signature(const DagStructure& s) {
  EquivalenceSignature sig;
  const int n = s.size();
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (int child = 0; child < n; ++child)
    for (int p : s.parents[child]) {
      adjacent[p][child] = adjacent[child][p] = true;
      sig.skeleton.emplace_back(std::min(p, child), std::max(p, child));
    }
  std::sort(sig.skeleton.begin(), sig.skeleton.end());

  // Colliders a -> c <- b with a, b non-adjacent.
  for (int child = 0; child < n; ++child) {
    const auto& ps = s.parents[child];
    for (std::size_t u = 0; u < ps.size(); ++u)
      for (std::size_t v = u + 1; v < ps.size(); ++v)
        if (!adjacent[ps[u]][ps[v]])
          sig.vstructures.push_back({ps[u], ps[v], child});
  }
  std::sort(sig.vstructures.begin(), sig.vstructures.end());
  return sig;
}

}  // namespace bnet
