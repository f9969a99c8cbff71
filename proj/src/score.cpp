#include "bnet/score.hpp"

#include <algorithm>
#include <cmath>

#include "bnet/conjugate.hpp"
#include "bnet/indexing.hpp"
#include "bnet/infer.hpp"

namespace bnet {

namespace {

// Bit-exact recognizer for the uniform-joint prior network, for which the
// hyperparameters reduce to the closed form ess / (r_i * q_i).
bool is_uniform_joint(const DiscreteBayesNet& net) {
  for (const auto& cpt : net.cpts) {
    if (!cpt.parent_order.empty() || cpt.rows.size() != 1) return false;
    const double r = static_cast<double>(cpt.rows[0].size());
    for (double v : cpt.rows[0])
      if (v != 1.0 / r) return false;
  }
  return true;
}

// alpha[j * r + k] = ess * p(parents = j, child = k) under the prior net.
std::vector<double> family_bde_alpha(const DiscreteBayesNet& prior_net,
                                     double ess, std::span<const int> parents,
                                     int child, bool uniform_shortcut) {
  const int r = prior_net.structure.cardinality(child);
  std::vector<int> cards;
  for (int p : parents) cards.push_back(prior_net.structure.cardinality(p));
  const std::size_t q = num_configs(cards);

  std::vector<double> alpha(q * static_cast<std::size_t>(r));
  if (uniform_shortcut) {
    const double a = ess / (static_cast<double>(q) * r);
    std::fill(alpha.begin(), alpha.end(), a);
    return alpha;
  }
  Query query;
  query.targets.assign(parents.begin(), parents.end());
  query.targets.push_back(child);
  // Target order (parents..., child) with the last position fastest makes
  // the posterior layout coincide with the alpha layout.
  PosteriorTable joint = query_eliminate(prior_net, query);
  for (std::size_t idx = 0; idx < alpha.size(); ++idx) {
    alpha[idx] = ess * joint.probs[idx];
    if (!(alpha[idx] > 0.0))
      throw Error("bde_hyperparams: prior network assigns zero mass to a "
                  "configuration of variable " +
                  prior_net.structure.variables[child].name);
  }
  return alpha;
}

void check_prior_domain(const DagStructure& structure,
                        const DiscreteBayesNet& prior_net, double ess) {
  if (!(ess > 0.0)) throw Error("bde: equivalent sample size must be positive");
  if (prior_net.structure.variables.size() != structure.variables.size())
    throw Error("bde: prior network domain does not match structure domain");
  for (std::size_t i = 0; i < structure.variables.size(); ++i)
    if (prior_net.structure.variables[i].name != structure.variables[i].name ||
        prior_net.structure.variables[i].cardinality() !=
            structure.variables[i].cardinality())
      throw Error("bde: prior network variable mismatch at position " +
                  std::to_string(i));
}

}  // namespace

double BdePrior::Family::row_total(int j) const {
  double t = 0.0;
  for (int k = 0; k < states; ++k)
    t += alpha[static_cast<std::size_t>(j) * states + k];
  return t;
}

BdePrior bde_hyperparams(const DagStructure& structure,
                         const DiscreteBayesNet& prior_net, double ess,
                         const std::string& provenance) {
  check_prior_domain(structure, prior_net, ess);
  const bool uniform = is_uniform_joint(prior_net);
  BdePrior prior;
  prior.ess = ess;
  prior.provenance = uniform ? "uniform" : provenance;
  prior.families.resize(structure.size());
  for (int i = 0; i < structure.size(); ++i) {
    auto& fam = prior.families[i];
    fam.child = i;
    fam.parent_order = structure.parents[i];
    fam.states = structure.cardinality(i);
    fam.rows = static_cast<int>(num_configs(structure.parent_cards(i)));
    fam.alpha = family_bde_alpha(prior_net, ess, fam.parent_order, i, uniform);
  }
  return prior;
}

double family_log_ml(const FamilyStats& stats, const BdePrior::Family& prior) {
  if (stats.child != prior.child || stats.rows != prior.rows ||
      stats.states != prior.states || stats.parent_order != prior.parent_order)
    throw Error("family_log_ml: stats and prior shapes do not match");
  double log_ml = 0.0;
  for (int j = 0; j < stats.rows; ++j) {
    const double a_j = prior.row_total(j);
    const double n_j = stats.row_total(j);
    if (n_j == 0.0) continue;  // empty rows contribute ln 1
    log_ml += std::lgamma(a_j) - std::lgamma(a_j + n_j);
    for (int k = 0; k < stats.states; ++k) {
      const double a = prior.alpha[static_cast<std::size_t>(j) * prior.states + k];
      log_ml += std::lgamma(a + stats.at(j, k)) - std::lgamma(a);
    }
  }
  return log_ml;
}

double network_log_ml(const DagStructure& structure, const Dataset& data,
                      const DiscreteBayesNet& prior_net, double ess) {
  BdePrior prior = bde_hyperparams(structure, prior_net, ess);
  SufficientStats stats = tally_sufficient_stats(structure, data);
  double log_ml = 0.0;
  for (int i = 0; i < structure.size(); ++i)
    log_ml += family_log_ml(stats.families[i], prior.families[i]);
  return log_ml;
}

double network_log_ml_interventional(const DagStructure& structure,
                                     const Dataset& data,
                                     const DiscreteBayesNet& prior_net,
                                     double ess) {
  // The tally rule already embodies the interventional contract: a forced
  // value carries no information about its own family.
  return network_log_ml(structure, data, prior_net, ess);
}

double prequential_log_ml(const DagStructure& structure, const Dataset& data,
                          const DiscreteBayesNet& prior_net, double ess) {
  auto violations = validate_dataset(data);
  if (!violations.empty()) throw Error("prequential_log_ml: " + violations.front());
  BdePrior prior = bde_hyperparams(structure, prior_net, ess);
  SufficientStats running = tally_sufficient_stats(structure, Dataset{data.variables, {}, {}});

  double log_ml = 0.0;
  std::vector<int> parent_states;
  for (std::size_t c = 0; c < data.cases.size(); ++c) {
    const auto& row = data.cases[c];
    const auto& forced = data.forced[c];
    for (int i = 0; i < structure.size(); ++i) {
      if (forced[i]) continue;  // a forced value predicts nothing
      auto& fam = running.families[i];
      const auto& fprior = prior.families[i];
      std::size_t j = 0;
      for (int p : fam.parent_order)
        j = j * static_cast<std::size_t>(structure.cardinality(p)) +
            static_cast<std::size_t>(row[p]);
      const int k = row[i];
      const double a_jk = fprior.alpha[j * fprior.states + k] + fam.at(static_cast<int>(j), k);
      const double a_j = fprior.row_total(static_cast<int>(j)) + fam.row_total(static_cast<int>(j));
      log_ml += std::log(a_jk / a_j);
      fam.at(static_cast<int>(j), k) += 1.0;
    }
  }
  return log_ml;
}

std::vector<double> normalize_log_posterior(std::span<const double> log_scores) {
  if (log_scores.empty())
    throw Error("normalize_log_posterior: empty candidate list");
  const double shift = *std::max_element(log_scores.begin(), log_scores.end());
  std::vector<double> post(log_scores.size());
  double z = 0.0;
  for (std::size_t i = 0; i < post.size(); ++i) {
    post[i] = std::exp(log_scores[i] - shift);
    z += post[i];
  }
  for (double& p : post) p /= z;
  return post;
}

std::vector<double> structure_posterior(
    const std::vector<DagStructure>& candidates,
    std::span<const double> structure_log_priors, const Dataset& data,
    const DiscreteBayesNet& prior_net, double ess) {
  if (candidates.empty()) throw Error("structure_posterior: no candidates");
  if (structure_log_priors.size() != candidates.size())
    throw Error("structure_posterior: prior vector length mismatch");
  std::vector<double> log_post(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!std::isfinite(structure_log_priors[i]))
      throw Error("structure_posterior: non-finite structure prior");
    log_post[i] =
        structure_log_priors[i] + network_log_ml(candidates[i], data, prior_net, ess);
  }
  return normalize_log_posterior(log_post);
}

double odds_update(double prior_odds, double likelihood_ratio) {
  if (!(prior_odds > 0.0)) throw Error("odds_update: prior odds must be positive");
  if (likelihood_ratio < 0.0)
    throw Error("odds_update: likelihood ratio must be nonnegative");
  return likelihood_ratio * prior_odds;
}

double cf_from_lr(double likelihood_ratio) {
  if (likelihood_ratio < 0.0)
    throw Error("cf_from_lr: likelihood ratio must be nonnegative");
  if (std::isinf(likelihood_ratio)) return 1.0;
  return (likelihood_ratio - 1.0) / (likelihood_ratio + 1.0);
}

std::vector<std::uint64_t> parent_masks(const DagStructure& structure) {
  std::vector<std::uint64_t> masks(structure.size(), 0);
  for (int i = 0; i < structure.size(); ++i)
    for (int p : structure.parents[i]) masks[i] |= std::uint64_t{1} << p;
  return masks;
}

FamilyScorer::FamilyScorer(const Dataset& data,
                           const DiscreteBayesNet& prior_net, double ess)
    : data_(data), prior_net_(prior_net), ess_(ess),
      uniform_prior_(is_uniform_joint(prior_net)), cache_(data.variables.size()) {
  if (data.variables.size() >= 64)
    throw Error("FamilyScorer: domains are limited to 63 variables");
  if (!(ess > 0.0)) throw Error("FamilyScorer: ess must be positive");
}

namespace {

double masked_family_score(const Dataset& data,
                           const DiscreteBayesNet& prior_net, double ess,
                           bool uniform_prior, int child,
                           std::uint64_t parent_mask) {
  std::vector<int> parents;
  for (int p = 0; p < static_cast<int>(data.variables.size()); ++p)
    if (parent_mask >> p & 1) parents.push_back(p);

  const int r = data.variables[child].cardinality();
  std::vector<int> cards;
  for (int p : parents) cards.push_back(data.variables[p].cardinality());
  const std::size_t q = num_configs(cards);

  std::vector<double> counts(q * static_cast<std::size_t>(r), 0.0);
  for (std::size_t c = 0; c < data.cases.size(); ++c) {
    if (data.forced[c][child]) continue;
    const auto& row = data.cases[c];
    std::size_t j = 0;
    for (std::size_t t = 0; t < parents.size(); ++t)
      j = j * static_cast<std::size_t>(cards[t]) +
          static_cast<std::size_t>(row[parents[t]]);
    counts[j * static_cast<std::size_t>(r) + row[child]] += 1.0;
  }

  const std::vector<double> alpha =
      family_bde_alpha(prior_net, ess, parents, child, uniform_prior);
  double log_ml = 0.0;
  for (std::size_t j = 0; j < q; ++j) {
    double n_j = 0.0, a_j = 0.0;
    for (int k = 0; k < r; ++k) {
      n_j += counts[j * r + k];
      a_j += alpha[j * r + k];
    }
    if (n_j == 0.0) continue;
    log_ml += std::lgamma(a_j) - std::lgamma(a_j + n_j);
    for (int k = 0; k < r; ++k)
      log_ml += std::lgamma(alpha[j * r + k] + counts[j * r + k]) -
                std::lgamma(alpha[j * r + k]);
  }
  return log_ml;
}

}  // namespace

double family_log_ml_masked(const Dataset& data,
                            const DiscreteBayesNet& prior_net, double ess,
                            int child, std::uint64_t parent_mask) {
  if (data.variables.size() >= 64)
    throw Error("family_log_ml_masked: domains are limited to 63 variables");
  return masked_family_score(data, prior_net, ess, is_uniform_joint(prior_net),
                             child, parent_mask);
}

double FamilyScorer::family_score(int child, std::uint64_t parent_mask) {
  auto& cache = cache_[child];
  auto hit = cache.find(parent_mask);
  if (hit != cache.end()) return hit->second;
  ++misses_;
  const double log_ml = masked_family_score(data_, prior_net_, ess_,
                                            uniform_prior_, child, parent_mask);
  cache.emplace(parent_mask, log_ml);
  return log_ml;
}

double FamilyScorer::structure_score(std::span<const std::uint64_t> parent_masks) {
  double total = 0.0;
  for (std::size_t i = 0; i < parent_masks.size(); ++i)
    total += family_score(static_cast<int>(i), parent_masks[i]);
  return total;
}

double FamilyScorer::structure_score(const DagStructure& structure) {
  const auto masks = parent_masks(structure);
  return structure_score(masks);
}

}  // namespace bnet
