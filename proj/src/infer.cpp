#include "bnet/infer.hpp"

#include <algorithm>
#include <cmath>

#include "bnet/indexing.hpp"

namespace bnet {

namespace {

void validate_query(const DiscreteBayesNet& net, const Query& query) {
  if (query.targets.empty()) throw Error("query: no target variables");
  const int n = net.size();
  std::vector<bool> is_target(n, false);
  for (int t : query.targets) {
    if (t < 0 || t >= n) throw Error("query: target index out of range");
    if (is_target[t]) throw Error("query: duplicate target");
    is_target[t] = true;
  }
  for (const auto& [v, s] : query.evidence) {
    if (v < 0 || v >= n) throw Error("query: evidence index out of range");
    if (is_target[v]) throw Error("query: targets and evidence must be disjoint");
    if (s < 0 || s >= net.structure.cardinality(v))
      throw Error("query: evidence state out of range for variable " +
                  net.structure.variables[v].name);
  }
}

std::vector<int> target_cards(const DiscreteBayesNet& net, const Query& query) {
  std::vector<int> cards;
  for (int t : query.targets) cards.push_back(net.structure.cardinality(t));
  return cards;
}

PosteriorTable normalized(const Query& query, std::vector<int> cards,
                          std::vector<double> mass) {
  double z = 0.0;
  for (double m : mass) z += m;
  if (!(z > 0.0))
    throw ImpossibleEvidence("query: evidence has zero prior probability");
  for (double& m : mass) m /= z;
  return PosteriorTable{query.targets, std::move(cards), std::move(mass)};
}

// A table over a sorted set of variable ids, last id varying fastest.
struct Factor {
  std::vector<int> vars;
  std::vector<int> cards;
  std::vector<double> values;

  bool scalar() const { return vars.empty(); }
};

Factor restrict_factor(const Factor& f, int var, int state) {
  auto pos_it = std::find(f.vars.begin(), f.vars.end(), var);
  if (pos_it == f.vars.end()) return f;
  const std::size_t pos = static_cast<std::size_t>(pos_it - f.vars.begin());
  Factor out;
  out.vars = f.vars;
  out.vars.erase(out.vars.begin() + pos);
  out.cards = f.cards;
  out.cards.erase(out.cards.begin() + pos);
  out.values.resize(num_configs(out.cards));
  std::vector<int> cfg(out.vars.size(), 0);
  std::vector<int> full(f.vars.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    for (std::size_t t = 0, u = 0; t < f.vars.size(); ++t)
      full[t] = (t == pos) ? state : cfg[u++];
    out.values[i] = f.values[parent_config_index(f.cards, full)];
    next_config(out.cards, cfg);
  }
  return out;
}

Factor multiply(const Factor& a, const Factor& b) {
  Factor out;
  out.vars.resize(a.vars.size() + b.vars.size());
  auto end = std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(),
                            b.vars.end(), out.vars.begin());
  out.vars.resize(static_cast<std::size_t>(end - out.vars.begin()));
  std::vector<std::size_t> a_pos, b_pos;
  for (int v : out.vars) {
    auto ia = std::find(a.vars.begin(), a.vars.end(), v);
    auto ib = std::find(b.vars.begin(), b.vars.end(), v);
    a_pos.push_back(ia == a.vars.end() ? SIZE_MAX : static_cast<std::size_t>(ia - a.vars.begin()));
    b_pos.push_back(ib == b.vars.end() ? SIZE_MAX : static_cast<std::size_t>(ib - b.vars.begin()));
    out.cards.push_back(a_pos.back() != SIZE_MAX ? a.cards[a_pos.back()]
                                                 : b.cards[b_pos.back()]);
  }
  out.values.resize(num_configs(out.cards));
  std::vector<int> cfg(out.vars.size(), 0);
  std::vector<int> a_cfg(a.vars.size()), b_cfg(b.vars.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    for (std::size_t t = 0; t < out.vars.size(); ++t) {
      if (a_pos[t] != SIZE_MAX) a_cfg[a_pos[t]] = cfg[t];
      if (b_pos[t] != SIZE_MAX) b_cfg[b_pos[t]] = cfg[t];
    }
    out.values[i] = a.values[parent_config_index(a.cards, a_cfg)] *
                    b.values[parent_config_index(b.cards, b_cfg)];
    next_config(out.cards, cfg);
  }
  return out;
}

Factor sum_out(const Factor& f, int var) {
  auto pos_it = std::find(f.vars.begin(), f.vars.end(), var);
  if (pos_it == f.vars.end()) return f;
  const std::size_t pos = static_cast<std::size_t>(pos_it - f.vars.begin());
  Factor out;
  out.vars = f.vars;
  out.vars.erase(out.vars.begin() + pos);
  out.cards = f.cards;
  out.cards.erase(out.cards.begin() + pos);
  out.values.assign(num_configs(out.cards), 0.0);
  std::vector<int> cfg(f.vars.size(), 0);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::vector<int> reduced;
    reduced.reserve(out.vars.size());
    for (std::size_t t = 0; t < f.vars.size(); ++t)
      if (t != pos) reduced.push_back(cfg[t]);
    out.values[parent_config_index(out.cards, reduced)] += f.values[i];
    next_config(f.cards, cfg);
  }
  return out;
}

// Variables with a directed path into targets or evidence (inclusive).
// Factors outside this set marginalize to 1 and are dropped whole.
std::vector<bool> ancestral_set(const DiscreteBayesNet& net, const Query& query) {
  const int n = net.size();
  std::vector<bool> keep(n, false);
  std::vector<int> stack;
  auto push = [&](int v) {
    if (!keep[v]) {
      keep[v] = true;
      stack.push_back(v);
    }
  };
  for (int t : query.targets) push(t);
  for (const auto& [v, s] : query.evidence) push(v);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int p : net.structure.parents[v]) push(p);
  }
  return keep;
}

}  // namespace

double PosteriorTable::at(std::span<const int> target_states) const {
  return probs[parent_config_index(cards, target_states)];
}

PosteriorTable query_enumeration(const DiscreteBayesNet& net, const Query& query) {
  validate_query(net, query);
  auto order = net.structure.topological_order();
  if (!order) throw Error("query: network is cyclic");

  std::vector<int> cards = target_cards(net, query);
  std::vector<double> mass(num_configs(cards), 0.0);
  std::vector<int> assignment(net.size(), 0);
  std::vector<int> target_states(query.targets.size());

  // Depth-first walk of the full joint in topological order, fixing
  // evidence values and accumulating the partial product as we descend.
  auto walk = [&](auto&& self, std::size_t depth, double partial) -> void {
    if (depth == order->size()) {
      for (std::size_t t = 0; t < query.targets.size(); ++t)
        target_states[t] = assignment[query.targets[t]];
      mass[parent_config_index(cards, target_states)] += partial;
      return;
    }
    const int v = (*order)[depth];
    const auto& row = net.cpts[v].row_for(net.structure, assignment);
    auto ev = query.evidence.find(v);
    if (ev != query.evidence.end()) {
      assignment[v] = ev->second;
      self(self, depth + 1, partial * row[ev->second]);
      return;
    }
    for (int s = 0; s < net.structure.cardinality(v); ++s) {
      assignment[v] = s;
      self(self, depth + 1, partial * row[s]);
    }
    assignment[v] = 0;
  };
  walk(walk, 0, 1.0);
  return normalized(query, std::move(cards), std::move(mass));
}

PosteriorTable query_eliminate(const DiscreteBayesNet& net, const Query& query) {
  validate_query(net, query);
  if (!net.structure.is_acyclic()) throw Error("query: network is cyclic");

  const std::vector<bool> keep = ancestral_set(net, query);
  std::vector<Factor> factors;
  for (int i = 0; i < net.size(); ++i) {
    if (!keep[i]) continue;
    Factor f;
    f.vars = net.cpts[i].parent_order;
    f.vars.push_back(i);
    std::sort(f.vars.begin(), f.vars.end());
    for (int v : f.vars) f.cards.push_back(net.structure.cardinality(v));
    f.values.resize(num_configs(f.cards));
    // Rewrite the CPT into sorted-scope layout.
    std::vector<int> cfg(f.vars.size(), 0);
    std::vector<int> parent_states(net.cpts[i].parent_order.size());
    std::vector<int> parent_cds = net.structure.parent_cards(i);
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
      int child_state = 0;
      for (std::size_t t = 0; t < f.vars.size(); ++t) {
        if (f.vars[t] == i) {
          child_state = cfg[t];
          continue;
        }
        for (std::size_t u = 0; u < net.cpts[i].parent_order.size(); ++u)
          if (net.cpts[i].parent_order[u] == f.vars[t]) parent_states[u] = cfg[t];
      }
      f.values[idx] =
          net.cpts[i].rows[parent_config_index(parent_cds, parent_states)][child_state];
      next_config(f.cards, cfg);
    }
    for (const auto& [v, s] : query.evidence) f = restrict_factor(f, v, s);
    factors.push_back(std::move(f));
  }

  std::vector<int> hidden;
  for (int v = 0; v < net.size(); ++v) {
    if (!keep[v] || query.evidence.count(v)) continue;
    if (std::find(query.targets.begin(), query.targets.end(), v) ==
        query.targets.end())
      hidden.push_back(v);
  }

  // Min-degree greedy: eliminate the hidden variable that currently touches
  // the fewest other variables across factor scopes.
  while (!hidden.empty()) {
    int best = -1;
    std::size_t best_degree = SIZE_MAX;
    for (int v : hidden) {
      std::vector<int> neighbors;
      for (const auto& f : factors)
        if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end())
          neighbors.insert(neighbors.end(), f.vars.begin(), f.vars.end());
      std::sort(neighbors.begin(), neighbors.end());
      neighbors.erase(std::unique(neighbors.begin(), neighbors.end()),
                      neighbors.end());
      std::size_t degree = neighbors.empty() ? 0 : neighbors.size() - 1;
      if (degree < best_degree || (degree == best_degree && v < best)) {
        best_degree = degree;
        best = v;
      }
    }
    hidden.erase(std::find(hidden.begin(), hidden.end(), best));

    Factor merged;
    merged.values = {1.0};
    std::vector<Factor> rest;
    for (auto& f : factors) {
      if (std::find(f.vars.begin(), f.vars.end(), best) != f.vars.end())
        merged = multiply(merged, f);
      else
        rest.push_back(std::move(f));
    }
    rest.push_back(sum_out(merged, best));
    factors = std::move(rest);
  }

  Factor joint;
  joint.values = {1.0};
  for (const auto& f : factors) joint = multiply(joint, f);

  // Reorder from sorted scope to the query's target order.
  std::vector<int> cards = target_cards(net, query);
  std::vector<double> mass(num_configs(cards), 0.0);
  std::vector<int> cfg(query.targets.size(), 0);
  std::vector<int> sorted_states(joint.vars.size());
  for (std::size_t i = 0; i < mass.size(); ++i) {
    for (std::size_t t = 0; t < joint.vars.size(); ++t) {
      auto it = std::find(query.targets.begin(), query.targets.end(), joint.vars[t]);
      sorted_states[t] = cfg[static_cast<std::size_t>(it - query.targets.begin())];
    }
    mass[i] = joint.values[parent_config_index(joint.cards, sorted_states)];
    next_config(cards, cfg);
  }
  return normalized(query, std::move(cards), std::move(mass));
}

}  // namespace bnet
