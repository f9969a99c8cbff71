#include "bnet/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bnet/rng.hpp"

namespace bnet {

namespace {

using Masks = std::vector<std::uint64_t>;

// True iff `src` has a directed path to `dst` under the given parent masks
// (edges run parent -> child). Walks ancestor sets as bitsets.
bool has_path(const Masks& masks, int src, int dst) {
  std::uint64_t anc = masks[dst];
  for (;;) {
    std::uint64_t grown = anc;
    std::uint64_t scan = anc;
    while (scan) {
      int p = std::countr_zero(scan);
      scan &= scan - 1;
      grown |= masks[p];
    }
    if (grown == anc) break;
    anc = grown;
  }
  return (anc >> src) & 1;
}

std::vector<std::pair<int, int>> edges_from_masks(const Masks& masks) {
  std::vector<std::pair<int, int>> edges;
  for (int c = 0; c < static_cast<int>(masks.size()); ++c) {
    std::uint64_t m = masks[c];
    while (m) {
      int p = std::countr_zero(m);
      m &= m - 1;
      edges.emplace_back(p, c);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

void check_constraints(const Domain& domain,
                       const StructureConstraints& constraints) {
  const int n = static_cast<int>(domain.size());
  for (int v : constraints.no_parents)
    if (v < 0 || v >= n) throw Error("constraints: no_parents index out of range");
  for (int v : constraints.no_children)
    if (v < 0 || v >= n) throw Error("constraints: no_children index out of range");
  if (constraints.max_parents && *constraints.max_parents < 0)
    throw Error("constraints: negative max_parents");
}

struct RankedCandidate {
  double score;
  std::size_t ordinal;
};

SearchReport rank_candidates(const Domain& domain,
                             const std::vector<Masks>& candidates,
                             const std::vector<double>& scores, int top_k,
                             double wall_seconds) {
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::vector<std::pair<int, int>>> keys(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    keys[i] = edges_from_masks(candidates[i]);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return keys[a] < keys[b];
  });

  SearchReport report;
  report.candidate_count = candidates.size();
  report.wall_seconds = wall_seconds;
  const std::size_t k = std::min<std::size_t>(top_k, order.size());
  for (std::size_t i = 0; i < k; ++i) {
    StructureScore ss;
    ss.structure = structure_from_masks(domain, candidates[order[i]]);
    ss.log_ml = scores[order[i]];
    ss.log_prior = 0.0;  // uniform over candidates
    ss.log_posterior_unnormalized = ss.log_ml;
    report.ranked.push_back(std::move(ss));
  }
  return report;
}

}  // namespace

void enumerate_structures(
    const Domain& domain, const StructureConstraints& constraints,
    const std::function<void(std::span<const std::uint64_t>)>& visit) {
  check_constraints(domain, constraints);
  const int n = static_cast<int>(domain.size());
  if (n == 0) {
    visit({});
    return;
  }
  if (n >= 64) throw Error("enumerate_structures: domains are limited to 63 variables");

  std::vector<std::uint64_t> allowed(n, 0);
  for (int i = 0; i < n; ++i) {
    if (constraints.no_parents.count(i)) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i || constraints.no_children.count(j)) continue;
      allowed[i] |= std::uint64_t{1} << j;
    }
  }
  const int max_parents = constraints.max_parents.value_or(n - 1);

  Masks masks(n, 0);
  // Assign parent sets variable by variable; submasks of `allowed` are
  // visited in increasing numeric value, which fixes the enumeration order.
  auto assign = [&](auto&& self, int i) -> void {
    if (i == n) {
      visit(masks);
      return;
    }
    std::uint64_t sub = 0;
    do {
      if (std::popcount(sub) <= max_parents) {
        masks[i] = sub;
        // Only a cycle through i can be new; test whether i is now its own
        // ancestor.
        if (!has_path(masks, i, i)) self(self, i + 1);
      }
      sub = (sub - allowed[i]) & allowed[i];
    } while (sub != 0);
    masks[i] = 0;
  };
  assign(assign, 0);
}

std::vector<std::vector<std::uint64_t>> enumerate_structure_masks(
    const Domain& domain, const StructureConstraints& constraints,
    std::size_t cap) {
  std::vector<Masks> out;
  enumerate_structures(domain, constraints,
                       [&](std::span<const std::uint64_t> masks) {
                         if (out.size() >= cap)
                           throw Error(
                               "enumeration exceeds the candidate cap (" +
                               std::to_string(cap) +
                               "); use greedy search or raise the cap");
                         out.emplace_back(masks.begin(), masks.end());
                       });
  return out;
}

DagStructure structure_from_masks(const Domain& domain,
                                  std::span<const std::uint64_t> masks) {
  DagStructure s(domain);
  for (int c = 0; c < static_cast<int>(masks.size()); ++c) {
    std::uint64_t m = masks[c];
    while (m) {
      int p = std::countr_zero(m);
      m &= m - 1;
      s.parents[c].push_back(p);
    }
  }
  return s;
}

SearchReport exhaustive_search(const Dataset& data,
                               const DiscreteBayesNet& prior_net, double ess,
                               const StructureConstraints& constraints,
                               int top_k, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int n = static_cast<int>(data.variables.size());
  const std::vector<Masks> candidates =
      enumerate_structure_masks(data.variables, constraints, options.candidate_cap);

  // Decomposability: a candidate's score is the sum of its family scores,
  // and far fewer distinct families exist than candidates. Tally and score
  // each distinct family once; that is the expensive, data-parallel part.
  std::vector<std::vector<std::uint64_t>> distinct(n);
  {
    std::vector<std::set<std::uint64_t>> seen(n);
    for (const auto& masks : candidates)
      for (int i = 0; i < n; ++i) seen[i].insert(masks[i]);
    for (int i = 0; i < n; ++i) distinct[i].assign(seen[i].begin(), seen[i].end());
  }
  std::vector<std::pair<int, std::uint64_t>> family_jobs;
  for (int i = 0; i < n; ++i)
    for (std::uint64_t mask : distinct[i]) family_jobs.emplace_back(i, mask);

  std::vector<double> family_scores(family_jobs.size());
#ifdef _OPENMP
  if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(family_jobs.size()); ++j)
      family_scores[j] = family_log_ml_masked(data, prior_net, ess,
                                              family_jobs[j].first,
                                              family_jobs[j].second);
  } else
#endif
  {
    for (std::size_t j = 0; j < family_jobs.size(); ++j)
      family_scores[j] = family_log_ml_masked(data, prior_net, ess,
                                              family_jobs[j].first,
                                              family_jobs[j].second);
  }

  std::vector<std::unordered_map<std::uint64_t, double>> lookup(n);
  for (std::size_t j = 0; j < family_jobs.size(); ++j)
    lookup[family_jobs[j].first].emplace(family_jobs[j].second, family_scores[j]);

  std::vector<double> scores(candidates.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (options.parallel)
#endif
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(candidates.size()); ++c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += lookup[i].at(candidates[c][i]);
    scores[c] = total;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rank_candidates(data.variables, candidates, scores, top_k, wall);
}

namespace {

Masks random_dag(const Domain& domain, const StructureConstraints& constraints,
                 int max_parents, Rng& rng) {
  const int n = static_cast<int>(domain.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  Masks masks(n, 0);
  for (int t = 0; t < n; ++t) {
    const int child = order[t];
    if (constraints.no_parents.count(child)) continue;
    std::vector<int> pool;
    for (int u = 0; u < t; ++u)
      if (!constraints.no_children.count(order[u])) pool.push_back(order[u]);
    rng.shuffle(pool);
    const std::size_t bound =
        std::min<std::size_t>(pool.size(), static_cast<std::size_t>(max_parents));
    const std::size_t take = rng.next_below(bound + 1);
    for (std::size_t u = 0; u < take; ++u)
      masks[child] |= std::uint64_t{1} << pool[u];
  }
  return masks;
}

}  // namespace

SearchReport greedy_search(const Dataset& data,
                           const DiscreteBayesNet& prior_net, double ess,
                           const StructureConstraints& constraints,
                           std::uint64_t seed, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_constraints(data.variables, constraints);
  const int n = static_cast<int>(data.variables.size());
  const int max_parents = constraints.max_parents.value_or(n - 1);
  FamilyScorer scorer(data, prior_net, ess);

  std::size_t states_visited = 0;
  std::vector<std::pair<double, Masks>> optima;

  for (int restart = 0; restart < std::max(1, options.greedy_restarts); ++restart) {
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(restart)));
    Masks masks(n, 0);
    if (restart > 0) masks = random_dag(data.variables, constraints, max_parents, rng);
    double score = scorer.structure_score(masks);
    ++states_visited;

    constexpr double kMinGain = 1e-12;
    for (;;) {
      double best_gain = kMinGain;
      Masks best = masks;
      // Moves in a fixed order; strict > keeps the first best, so the walk
      // is deterministic.
      for (int c = 0; c < n; ++c) {
        if (constraints.no_parents.count(c)) continue;
        const double cur_c = scorer.family_score(c, masks[c]);
        for (int p = 0; p < n; ++p) {
          if (p == c || constraints.no_children.count(p)) continue;
          const std::uint64_t bit = std::uint64_t{1} << p;
          if (masks[c] & bit) continue;
          if (std::popcount(masks[c] | bit) > max_parents) continue;
          if (has_path(masks, c, p)) continue;  // p -> c would close a cycle
          const double gain =
              scorer.family_score(c, masks[c] | bit) - cur_c;
          if (gain > best_gain) {
            best_gain = gain;
            best = masks;
            best[c] |= bit;
          }
        }
      }
      for (int c = 0; c < n; ++c) {
        std::uint64_t m = masks[c];
        const double cur_c = scorer.family_score(c, masks[c]);
        while (m) {
          const int p = std::countr_zero(m);
          m &= m - 1;
          const std::uint64_t bit = std::uint64_t{1} << p;
          // delete p -> c
          {
            const double gain = scorer.family_score(c, masks[c] & ~bit) - cur_c;
            if (gain > best_gain) {
              best_gain = gain;
              best = masks;
              best[c] &= ~bit;
            }
          }
          // reverse p -> c into c -> p
          if (!constraints.no_parents.count(p) && !constraints.no_children.count(c) &&
              std::popcount(masks[p] | (std::uint64_t{1} << c)) <= max_parents) {
            Masks trial = masks;
            trial[c] &= ~bit;
            if (!has_path(trial, p, c)) {
              const double gain =
                  scorer.family_score(c, masks[c] & ~bit) - cur_c +
                  scorer.family_score(p, masks[p] | (std::uint64_t{1} << c)) -
                  scorer.family_score(p, masks[p]);
              if (gain > best_gain) {
                best_gain = gain;
                best = trial;
                best[p] |= std::uint64_t{1} << c;
              }
            }
          }
        }
      }
      if (best == masks) break;
      masks = std::move(best);
      score = scorer.structure_score(masks);
      ++states_visited;
    }
    optima.emplace_back(score, masks);
  }

  std::sort(optima.begin(), optima.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return edges_from_masks(a.second) < edges_from_masks(b.second);
  });
  optima.erase(std::unique(optima.begin(), optima.end(),
                           [](const auto& a, const auto& b) {
                             return a.second == b.second;
                           }),
               optima.end());

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  SearchReport report;
  report.candidate_count = states_visited;
  report.wall_seconds = wall;
  for (const auto& [score, masks] : optima) {
    StructureScore ss;
    ss.structure = structure_from_masks(data.variables, masks);
    ss.log_ml = score;
    ss.log_prior = 0.0;
    ss.log_posterior_unnormalized = score;
    report.ranked.push_back(std::move(ss));
  }
  return report;
}

}  // namespace bnet
