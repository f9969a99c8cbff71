// Test-only oracles: independent implementations used to compute or verify
// expected values. Nothing here may call the library path it checks.
#pragma once

#include <cmath>
#include <set>
#include <vector>

#include "bnet/conjugate.hpp"
#include "bnet/dataset.hpp"
#include "bnet/graph.hpp"
#include "bnet/network.hpp"
#include "bnet/rng.hpp"

namespace bnet::testing {

// ---------------------------------------------------------------------------
// d-separation by exhaustive path enumeration (oracle for the
// skeleton+collider equivalence signature).

inline std::set<int> descendants_inclusive(const DagStructure& s, int v) {
  std::set<int> out{v};
  std::vector<int> stack{v};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int child = 0; child < s.size(); ++child)
      if (s.has_edge(cur, child) && out.insert(child).second)
        stack.push_back(child);
  }
  return out;
}

inline bool path_active(const DagStructure& s, const std::vector<int>& path,
                        const std::set<int>& given) {
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const int a = path[i - 1], b = path[i], c = path[i + 1];
    const bool collider = s.has_edge(a, b) && s.has_edge(c, b);
    if (collider) {
      bool opened = false;
      for (int dsc : descendants_inclusive(s, b))
        if (given.count(dsc)) opened = true;
      if (!opened) return false;
    } else if (given.count(b)) {
      return false;
    }
  }
  return true;
}

inline bool d_separated(const DagStructure& s, int x, int y,
                        const std::set<int>& given) {
  const int n = s.size();
  std::vector<std::vector<int>> neighbors(n);
  for (int child = 0; child < n; ++child)
    for (int p : s.parents[child]) {
      neighbors[p].push_back(child);
      neighbors[child].push_back(p);
    }
  std::vector<int> path{x};
  std::vector<bool> used(n, false);
  used[x] = true;
  bool found_active = false;
  auto dfs = [&](auto&& self, int cur) -> void {
    if (found_active) return;
    if (cur == y) {
      if (path_active(s, path, given)) found_active = true;
      return;
    }
    for (int nxt : neighbors[cur]) {
      if (used[nxt]) continue;
      used[nxt] = true;
      path.push_back(nxt);
      self(self, nxt);
      path.pop_back();
      used[nxt] = false;
    }
  };
  dfs(dfs, x);
  return !found_active;
}

// Full conditional-independence fingerprint: the d-separation verdict for
// every variable pair and every conditioning subset of the rest.
inline std::vector<bool> independence_fingerprint(const DagStructure& s) {
  const int n = s.size();
  std::vector<bool> bits;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      std::vector<int> rest;
      for (int v = 0; v < n; ++v)
        if (v != x && v != y) rest.push_back(v);
      for (std::size_t mask = 0; mask < (std::size_t{1} << rest.size()); ++mask) {
        std::set<int> given;
        for (std::size_t t = 0; t < rest.size(); ++t)
          if (mask >> t & 1) given.insert(rest[t]);
        bits.push_back(d_separated(s, x, y, given));
      }
    }
  return bits;
}

// ---------------------------------------------------------------------------
// Closed-form DAG counts (labelled), a(n) = sum_k (-1)^(k+1) C(n,k)
// 2^(k(n-k)) a(n-k).

inline long long dag_count(int n) {
  std::vector<long long> a(n + 1, 0);
  a[0] = 1;
  auto choose = [](int n_, int k_) {
    long long c = 1;
    for (int i = 1; i <= k_; ++i) c = c * (n_ - k_ + i) / i;
    return c;
  };
  for (int m = 1; m <= n; ++m) {
    long long total = 0;
    for (int k = 1; k <= m; ++k) {
      long long term = choose(m, k) * (1LL << (k * (m - k))) * a[m - k];
      total += (k % 2 == 1) ? term : -term;
    }
    a[m] = total;
  }
  return a[n];
}

// ---------------------------------------------------------------------------
// Sequential predictive product: an independent route to the Dirichlet
// marginal likelihood, one observation at a time.

inline double sequential_log_ml(const std::vector<double>& alpha,
                                const std::vector<int>& sequence) {
  std::vector<double> counts(alpha.size(), 0.0);
  double n = 0.0, a_total = 0.0;
  for (double a : alpha) a_total += a;
  double log_ml = 0.0;
  for (int obs : sequence) {
    log_ml += std::log((alpha[obs] + counts[obs]) / (a_total + n));
    counts[obs] += 1.0;
    n += 1.0;
  }
  return log_ml;
}

// ---------------------------------------------------------------------------
// Brute-force network score with a uniform-joint prior: walks the cases in
// order, scoring every unforced child cell with its current posterior
// predictive and then absorbing it. Independent of the tally/lgamma path.

inline double brute_force_log_ml_uniform(const DagStructure& s,
                                         const Dataset& data, double ess) {
  double log_ml = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    const int r = s.cardinality(i);
    std::size_t q = 1;
    for (int p : s.parents[i]) q *= static_cast<std::size_t>(s.cardinality(p));
    const double a_cell = ess / (static_cast<double>(q) * r);
    std::vector<double> counts(q * static_cast<std::size_t>(r), 0.0);
    std::vector<double> row_totals(q, 0.0);
    for (std::size_t c = 0; c < data.cases.size(); ++c) {
      if (data.forced[c][i]) continue;
      std::size_t j = 0;
      for (int p : s.parents[i])
        j = j * static_cast<std::size_t>(s.cardinality(p)) +
            static_cast<std::size_t>(data.cases[c][p]);
      const int k = data.cases[c][i];
      log_ml += std::log((a_cell + counts[j * r + k]) /
                         (a_cell * r + row_totals[j]));
      counts[j * r + k] += 1.0;
      row_totals[j] += 1.0;
    }
  }
  return log_ml;
}

// ---------------------------------------------------------------------------
// Seeded generators for property tests.

inline Domain random_domain(int n, int max_card, Rng& rng) {
  Domain domain;
  for (int i = 0; i < n; ++i) {
    Variable v;
    v.name = "V" + std::to_string(i);
    const int card = 2 + static_cast<int>(rng.next_below(max_card - 1));
    for (int s = 0; s < card; ++s) v.states.push_back("s" + std::to_string(s));
    domain.push_back(std::move(v));
  }
  return domain;
}

inline DagStructure random_structure(const Domain& domain, int max_parents,
                                     Rng& rng) {
  const int n = static_cast<int>(domain.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  DagStructure s(domain);
  for (int t = 1; t < n; ++t) {
    std::vector<int> pool(order.begin(), order.begin() + t);
    rng.shuffle(pool);
    const std::size_t take =
        rng.next_below(std::min<std::size_t>(pool.size(), max_parents) + 1);
    for (std::size_t u = 0; u < take; ++u) s.add_edge(pool[u], order[t]);
  }
  return s;
}

// Strictly positive CPTs: rows drawn from [floor, 1] and normalized.
inline DiscreteBayesNet random_net(const DagStructure& s, Rng& rng,
                                   double floor = 0.05) {
  DiscreteBayesNet net;
  net.structure = s;
  net.cpts.resize(s.size());
  for (int i = 0; i < s.size(); ++i) {
    Cpt& cpt = net.cpts[i];
    cpt.child = i;
    cpt.parent_order = s.parents[i];
    std::size_t q = 1;
    for (int p : s.parents[i]) q *= static_cast<std::size_t>(s.cardinality(p));
    const int r = s.cardinality(i);
    cpt.rows.assign(q, std::vector<double>(r));
    for (auto& row : cpt.rows) {
      double total = 0.0;
      for (double& v : row) {
        v = floor + (1.0 - floor) * rng.next_unit();
        total += v;
      }
      for (double& v : row) v /= total;
    }
  }
  return net;
}

inline Dataset sample_dataset(const DiscreteBayesNet& net, int n_cases,
                              Rng& rng, double forced_prob = 0.0) {
  Dataset data;
  data.variables = net.structure.variables;
  for (int c = 0; c < n_cases; ++c) {
    std::vector<int> row = sample_case(net, rng);
    std::vector<std::uint8_t> forced(row.size(), 0);
    if (forced_prob > 0.0)
      for (std::size_t i = 0; i < row.size(); ++i)
        if (rng.next_unit() < forced_prob) {
          forced[i] = 1;
          // An intervention overrides the sampled value.
          row[i] = static_cast<int>(
              rng.next_below(net.structure.cardinality(static_cast<int>(i))));
        }
    data.add_case(std::move(row), std::move(forced));
  }
  return data;
}

}  // namespace bnet::testing
