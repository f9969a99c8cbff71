#include "bnet/depnet.hpp"

#include <algorithm>
#include <cmath>

#include "bnet/indexing.hpp"
#include "bnet/rng.hpp"

namespace bnet {

namespace {

std::vector<int> others(int i, int n) {
  std::vector<int> out;
  out.reserve(n - 1);
  for (int j = 0; j < n; ++j)
    if (j != i) out.push_back(j);
  return out;
}

std::vector<int> domain_cards(const Domain& domain) {
  std::vector<int> cards;
  cards.reserve(domain.size());
  for (const auto& v : domain) cards.push_back(v.cardinality());
  return cards;
}

}  // namespace

std::vector<std::string> validate_depnet(const DependencyNetwork& dn) {
  std::vector<std::string> violations = validate_domain(dn.variables);
  if (dn.conditionals.size() != dn.variables.size()) {
    violations.push_back("depnet: conditional count does not match domain size");
    return violations;
  }
  const int n = dn.size();
  for (int i = 0; i < n; ++i) {
    const auto& cpt = dn.conditionals[i];
    const std::string who = "variable " + dn.variables[i].name;
    if (cpt.child != i || cpt.parent_order != others(i, n)) {
      violations.push_back(who + ": conditional must range over all other variables");
      continue;
    }
    std::vector<int> cards;
    for (int p : cpt.parent_order) cards.push_back(dn.variables[p].cardinality());
    if (cpt.rows.size() != num_configs(cards)) {
      violations.push_back(who + ": wrong conditional row count");
      continue;
    }
    for (std::size_t j = 0; j < cpt.rows.size(); ++j) {
      double sum = 0.0;
      bool positive = true;
      for (double v : cpt.rows[j]) {
        sum += v;
        if (!(v > 0.0)) positive = false;
      }
      if (!positive)
        violations.push_back(who + ": row " + std::to_string(j) +
                             " has a non-positive entry");
      if (std::abs(sum - 1.0) > 1e-12)
        violations.push_back(who + ": row " + std::to_string(j) + " not normalized");
    }
  }
  return violations;
}

DependencyNetwork learn_depnet(const Dataset& data, double pseudocount) {
  if (!(pseudocount > 0.0))
    throw Error("learn_depnet: pseudocount must be positive");
  if (data.cases.empty()) throw Error("learn_depnet: zero cases");
  auto violations = validate_dataset(data);
  if (!violations.empty()) throw Error("learn_depnet: " + violations.front());

  const int n = data.num_vars();
  DependencyNetwork dn;
  dn.variables = data.variables;
  dn.conditionals.resize(n);
  for (int i = 0; i < n; ++i) {
    auto& cpt = dn.conditionals[i];
    cpt.child = i;
    cpt.parent_order = others(i, n);
    const int r = data.variables[i].cardinality();
    std::vector<int> cards;
    for (int p : cpt.parent_order) cards.push_back(data.variables[p].cardinality());
    const std::size_t q = num_configs(cards);

    std::vector<double> counts(q * static_cast<std::size_t>(r), 0.0);
    for (const auto& row : data.cases) {
      std::size_t j = 0;
      for (std::size_t t = 0; t < cpt.parent_order.size(); ++t)
        j = j * static_cast<std::size_t>(cards[t]) +
            static_cast<std::size_t>(row[cpt.parent_order[t]]);
      counts[j * r + row[i]] += 1.0;
    }
    cpt.rows.assign(q, std::vector<double>(r));
    for (std::size_t j = 0; j < q; ++j) {
      double total = pseudocount * r;
      for (int k = 0; k < r; ++k) total += counts[j * r + k];
      for (int k = 0; k < r; ++k)
        cpt.rows[j][k] = (counts[j * r + k] + pseudocount) / total;
    }
  }
  return dn;
}

DependencyNetwork depnet_from_bn(const DiscreteBayesNet& net) {
  const int n = net.size();
  DependencyNetwork dn;
  dn.variables = net.structure.variables;
  dn.conditionals.resize(n);
  std::vector<int> assignment(n, 0);
  for (int i = 0; i < n; ++i) {
    auto& cpt = dn.conditionals[i];
    cpt.child = i;
    cpt.parent_order = others(i, n);
    const int r = net.structure.cardinality(i);
    std::vector<int> cards;
    for (int p : cpt.parent_order) cards.push_back(net.structure.cardinality(p));
    const std::size_t q = num_configs(cards);

    cpt.rows.assign(q, std::vector<double>(r));
    std::vector<int> cfg(cpt.parent_order.size(), 0);
    for (std::size_t j = 0; j < q; ++j) {
      for (std::size_t t = 0; t < cpt.parent_order.size(); ++t)
        assignment[cpt.parent_order[t]] = cfg[t];
      double z = 0.0;
      for (int k = 0; k < r; ++k) {
        assignment[i] = k;
        cpt.rows[j][k] = joint_probability(net, assignment);
        z += cpt.rows[j][k];
      }
      if (!(z > 0.0))
        throw Error("depnet_from_bn: zero-probability configuration for variable " +
                    net.structure.variables[i].name);
      for (int k = 0; k < r; ++k) cpt.rows[j][k] /= z;
      next_config(cards, cfg);
    }
  }
  return dn;
}

GibbsResult gibbs_sample(const DependencyNetwork& dn, long sweeps, long burn_in,
                         std::uint64_t seed, VisitOrder order,
                         const std::optional<std::vector<int>>& init) {
  if (burn_in < 0 || sweeps <= burn_in)
    throw Error("gibbs_sample: require sweeps > burn_in >= 0");
  auto violations = validate_depnet(dn);
  if (!violations.empty()) throw Error("gibbs_sample: " + violations.front());

  const int n = dn.size();
  const std::vector<int> cards = domain_cards(dn.variables);
  GibbsResult result;
  result.cards = cards;
  result.joint.assign(num_configs(cards), 0.0);
  result.sweeps = sweeps;
  result.burn_in = burn_in;
  result.seed = seed;
  result.order = order;

  Rng rng(seed);
  std::vector<int> state(n);
  if (init) {
    if (static_cast<int>(init->size()) != n)
      throw Error("gibbs_sample: init has wrong width");
    state = *init;
    for (int i = 0; i < n; ++i)
      if (state[i] < 0 || state[i] >= cards[i])
        throw Error("gibbs_sample: init state out of range");
  } else {
    for (int i = 0; i < n; ++i)
      state[i] = static_cast<int>(rng.next_below(cards[i]));
  }

  std::vector<int> visit(n);
  for (int i = 0; i < n; ++i) visit[i] = i;

  for (long sweep = 0; sweep < sweeps; ++sweep) {
    if (order == VisitOrder::kRandom) rng.shuffle(visit);
    for (int v : visit) {
      const auto& cpt = dn.conditionals[v];
      std::size_t j = 0;
      for (int p : cpt.parent_order)
        j = j * static_cast<std::size_t>(cards[p]) +
            static_cast<std::size_t>(state[p]);
      state[v] = rng.sample_discrete(cpt.rows[j]);
    }
    if (sweep >= burn_in)
      result.joint[parent_config_index(cards, state)] += 1.0;
  }
  const double records = static_cast<double>(sweeps - burn_in);
  for (double& p : result.joint) p /= records;
  return result;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw Error("total_variation: distributions have different supports");
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

std::vector<double> exact_joint(const DiscreteBayesNet& net) {
  const std::vector<int> cards = domain_cards(net.structure.variables);
  std::vector<double> joint(num_configs(cards));
  std::vector<int> cfg(cards.size(), 0);
  for (std::size_t i = 0; i < joint.size(); ++i) {
    joint[i] = joint_probability(net, cfg);
    next_config(cards, cfg);
  }
  return joint;
}

}  // namespace bnet
