#include "bnet/decide.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "bnet/indexing.hpp"
#include "bnet/infer.hpp"

namespace bnet {

int InfluenceDiagram::cardinality(int node_id) const {
  if (node_id < num_decisions()) return decisions[node_id].cardinality();
  return uncertainties[node_id - num_decisions()].cardinality();
}

std::string InfluenceDiagram::node_name(int node_id) const {
  if (node_id < num_decisions()) return decisions[node_id].name;
  return uncertainties[node_id - num_decisions()].name;
}

std::vector<std::string> validate_diagram(const InfluenceDiagram& id) {
  std::vector<std::string> violations;
  const int d = id.num_decisions();
  const int total = id.node_count();

  std::set<std::string> names;
  for (const auto& dec : id.decisions) {
    if (dec.alternatives.empty())
      violations.push_back("decision " + dec.name + ": no alternatives");
    if (!names.insert(dec.name).second)
      violations.push_back("node " + dec.name + ": duplicate name");
  }
  for (const auto& var : id.uncertainties) {
    if (var.states.size() < 2)
      violations.push_back("uncertainty " + var.name + ": fewer than 2 states");
    if (!names.insert(var.name).second)
      violations.push_back("node " + var.name + ": duplicate name");
  }

  if (id.cpts.size() != id.uncertainties.size()) {
    violations.push_back("diagram: cpt count does not match uncertainty count");
    return violations;
  }
  for (int u = 0; u < id.num_uncertainties(); ++u) {
    const Cpt& cpt = id.cpts[u];
    const std::string who = "uncertainty " + id.uncertainties[u].name;
    if (cpt.child != d + u) {
      violations.push_back(who + ": cpt child id mismatch");
      continue;
    }
    std::vector<int> cards;
    bool ids_ok = true;
    for (int p : cpt.parent_order) {
      if (p < 0 || p >= total || p == cpt.child) {
        violations.push_back(who + ": invalid parent id");
        ids_ok = false;
        break;
      }
      cards.push_back(id.cardinality(p));
    }
    if (!ids_ok) continue;
    if (cpt.rows.size() != num_configs(cards)) {
      violations.push_back(who + ": row count != product of parent cardinalities");
      continue;
    }
    const int r = id.uncertainties[u].cardinality();
    for (std::size_t j = 0; j < cpt.rows.size(); ++j) {
      if (static_cast<int>(cpt.rows[j].size()) != r) {
        violations.push_back(who + ": row " + std::to_string(j) + " has wrong arity");
        continue;
      }
      double sum = 0.0;
      for (double v : cpt.rows[j]) sum += v;
      if (std::abs(sum - 1.0) > 1e-12)
        violations.push_back(who + ": row " + std::to_string(j) + " not normalized");
    }
  }

  // Uncertainty-to-uncertainty arcs must form a DAG.
  {
    DagStructure sub;
    sub.variables = id.uncertainties;
    sub.parents.resize(id.uncertainties.size());
    for (int u = 0; u < id.num_uncertainties(); ++u)
      for (int p : id.cpts[u].parent_order)
        if (p >= d) sub.parents[u].push_back(p - d);
    for (auto& ps : sub.parents) std::sort(ps.begin(), ps.end());
    if (!sub.is_acyclic())
      violations.push_back("diagram: uncertainty subgraph has a cycle");
  }

  std::vector<int> outcome_cards;
  for (const auto& dec : id.decisions) outcome_cards.push_back(dec.cardinality());
  bool outcome_ids_ok = true;
  for (int p : id.outcome_parents) {
    if (p < d && p >= 0) {
      violations.push_back("outcome: decision listed among uncertainty parents");
      outcome_ids_ok = false;
    } else if (p < 0 || p >= total) {
      violations.push_back("outcome: invalid parent id");
      outcome_ids_ok = false;
    } else {
      outcome_cards.push_back(id.cardinality(p));
    }
  }
  if (outcome_ids_ok) {
    if (id.outcome_map.size() != num_configs(outcome_cards))
      violations.push_back("outcome: map does not cover every "
                           "(decision, uncertainty-parent) combination");
    for (const auto& label : id.outcome_map)
      if (!id.utilities.count(label))
        violations.push_back("outcome " + label + ": no utility assigned");
  }
  return violations;
}

MeuResult meu_solve(const InfluenceDiagram& id) {
  auto violations = validate_diagram(id);
  if (!violations.empty()) throw Error("meu_solve: " + violations.front());

  const int d = id.num_decisions();
  const int u_count = id.num_uncertainties();
  std::vector<int> dec_cards;
  for (const auto& dec : id.decisions) dec_cards.push_back(dec.cardinality());

  std::vector<int> op_cards;
  for (int p : id.outcome_parents) op_cards.push_back(id.cardinality(p));
  std::vector<int> map_cards = dec_cards;
  map_cards.insert(map_cards.end(), op_cards.begin(), op_cards.end());

  MeuResult result;
  std::vector<int> decision(dec_cards.size(), 0);
  const std::size_t n_assignments = num_configs(dec_cards);
  for (std::size_t a = 0; a < n_assignments; ++a) {
    // Ground the uncertainty network on this decision assignment: decision
    // parents are fixed, so each CPT collapses onto its uncertainty parents.
    DiscreteBayesNet grounded;
    grounded.structure = DagStructure(id.uncertainties);
    grounded.cpts.resize(u_count);
    for (int u = 0; u < u_count; ++u) {
      const Cpt& cpt = id.cpts[u];
      Cpt& out = grounded.cpts[u];
      out.child = u;
      std::vector<int> u_parents, u_cards, full_cards;
      for (int p : cpt.parent_order) {
        full_cards.push_back(id.cardinality(p));
        if (p >= d) {
          u_parents.push_back(p - d);
          u_cards.push_back(id.cardinality(p));
        }
      }
      out.parent_order = u_parents;
      grounded.structure.parents[u] = u_parents;
      std::sort(grounded.structure.parents[u].begin(),
                grounded.structure.parents[u].end());

      out.rows.resize(num_configs(u_cards));
      std::vector<int> u_cfg(u_parents.size(), 0);
      std::vector<int> full_cfg(cpt.parent_order.size());
      for (std::size_t j = 0; j < out.rows.size(); ++j) {
        for (std::size_t t = 0, v = 0; t < cpt.parent_order.size(); ++t)
          full_cfg[t] = (cpt.parent_order[t] < d) ? decision[cpt.parent_order[t]]
                                                  : u_cfg[v++];
        out.rows[j] = cpt.rows[parent_config_index(full_cards, full_cfg)];
        next_config(u_cards, u_cfg);
      }
    }

    // Distribution over the outcome's uncertainty parents, then the
    // expectation of the mapped utilities.
    double eu = 0.0;
    if (id.outcome_parents.empty()) {
      eu = id.utilities.at(id.outcome_map[parent_config_index(dec_cards, decision)]);
    } else {
      Query query;
      for (int p : id.outcome_parents) query.targets.push_back(p - d);
      PosteriorTable posterior = query_eliminate(grounded, query);
      std::vector<int> op_cfg(op_cards.size(), 0);
      std::vector<int> map_cfg(map_cards.size());
      for (std::size_t j = 0; j < posterior.probs.size(); ++j) {
        std::copy(decision.begin(), decision.end(), map_cfg.begin());
        std::copy(op_cfg.begin(), op_cfg.end(), map_cfg.begin() + decision.size());
        eu += posterior.probs[j] *
              id.utilities.at(id.outcome_map[parent_config_index(map_cards, map_cfg)]);
        next_config(op_cards, op_cfg);
      }
    }
    result.assignments.push_back(decision);
    result.expected_utility.push_back(eu);
    if (result.best < 0 || eu > result.expected_utility[result.best])
      result.best = static_cast<int>(a);
    next_config(dec_cards, decision);
  }
  return result;
}

DecisionTree::NodePtr DecisionTree::leaf(double utility) {
  auto node = std::make_unique<Node>();
  node->kind = Kind::kLeaf;
  node->utility = utility;
  return node;
}

DecisionTree::NodePtr DecisionTree::decision(
    std::string name, std::vector<std::pair<std::string, NodePtr>> edges) {
  auto node = std::make_unique<Node>();
  node->kind = Kind::kDecision;
  node->name = std::move(name);
  for (auto& [label, child] : edges)
    node->edges.push_back(Edge{std::move(label), 0.0, std::move(child)});
  return node;
}

DecisionTree::NodePtr DecisionTree::chance(
    std::string name, std::vector<std::tuple<std::string, double, NodePtr>> edges) {
  auto node = std::make_unique<Node>();
  node->kind = Kind::kChance;
  node->name = std::move(name);
  for (auto& [label, prob, child] : edges)
    node->edges.push_back(Edge{std::move(label), prob, std::move(child)});
  return node;
}

namespace {

double roll(const DecisionTree::Node* node, const std::string& path,
            std::map<std::string, std::string>& policy) {
  if (node == nullptr) throw Error("rollback: missing node");
  switch (node->kind) {
    case DecisionTree::Kind::kLeaf:
      return node->utility;
    case DecisionTree::Kind::kChance: {
      if (node->edges.empty()) throw Error("rollback: chance node with no edges");
      double total = 0.0, value = 0.0;
      for (const auto& e : node->edges) {
        total += e.prob;
        value += e.prob *
                 roll(e.child.get(), path.empty() ? e.label : path + "/" + e.label,
                      policy);
      }
      if (std::abs(total - 1.0) > 1e-12)
        throw Error("rollback: chance probabilities do not sum to 1 at " +
                    (path.empty() ? std::string("root") : path));
      return value;
    }
    case DecisionTree::Kind::kDecision: {
      if (node->edges.empty()) throw Error("rollback: decision node with no edges");
      double best = -std::numeric_limits<double>::infinity();
      const std::string* chosen = nullptr;
      for (const auto& e : node->edges) {
        double value = roll(e.child.get(),
                            path.empty() ? e.label : path + "/" + e.label, policy);
        if (value > best) {  // first edge wins ties
          best = value;
          chosen = &e.label;
        }
      }
      policy[path] = *chosen;
      return best;
    }
  }
  throw Error("rollback: unknown node kind");
}

}  // namespace

RollbackResult rollback(const DecisionTree& tree) {
  if (!tree.root) throw Error("rollback: empty tree");
  RollbackResult result;
  result.value = roll(tree.root.get(), "", result.policy);
  return result;
}

double log_score(std::span<const double> reported, int observed) {
  if (observed < 0 || observed >= static_cast<int>(reported.size()))
    throw Error("log_score: observed state out of range");
  double sum = 0.0;
  for (double v : reported) {
    if (v < 0.0) throw Error("log_score: negative reported probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error("log_score: reported distribution is not normalized");
  if (reported[observed] == 0.0)
    return -std::numeric_limits<double>::infinity();
  return std::log(reported[observed]);
}

}  // namespace bnet
