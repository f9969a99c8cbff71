#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bnet/dataset.hpp"
#include "bnet/network.hpp"
#include "bnet/stats.hpp"

namespace bnet {

/// Dirichlet hyperparameters alpha_ijk for every family of a structure,
/// derived from a prior network and an equivalent sample size:
///   alpha_ijk = ess * p(X_i = k, Pa_i = j)
/// with the joint probability read off the prior network by exact
/// inference. With a uniform-joint prior network this reduces to
/// alpha_ijk = ess / (r_i * q_i). Constructing all family priors from one
/// prior network is what makes scores agree across structures that encode
/// the same independencies, and it gives parameter modularity for free:
/// a family's prior depends only on (child, parent set).
struct BdePrior {
  struct Family {
    int child = -1;
    std::vector<int> parent_order;
    int rows = 0;
    int states = 0;
    std::vector<double> alpha;  // [j * states + k]

    double row_total(int j) const;
  };

  std::vector<Family> families;
  double ess = 0.0;
  std::string provenance;  // "uniform" or the prior network's identity
};

BdePrior bde_hyperparams(const DagStructure& structure,
                         const DiscreteBayesNet& prior_net, double ess,
                         const std::string& provenance = "prior-net");

// Log marginal likelihood of one family: the per-parent-configuration sum
// of Dirichlet marginal likelihoods over the child counts.
double family_log_ml(const FamilyStats& stats, const BdePrior::Family& prior);

/// Log marginal likelihood of the data under a structure,
/// sum over families of family_log_ml on tallied counts. Forced cells
/// contribute nothing to their own family and full parent information to
/// their children, so the same entry point covers observational and
/// interventional records.
double network_log_ml(const DagStructure& structure, const Dataset& data,
                      const DiscreteBayesNet& prior_net, double ess);

// Alias making the interventional contract explicit at call sites that
// score datasets with forced cells.
double network_log_ml_interventional(const DagStructure& structure,
                                     const Dataset& data,
                                     const DiscreteBayesNet& prior_net,
                                     double ess);

/// The same quantity accumulated one case at a time: the sum of one-step
/// predictive log probabilities, updating posterior counts after each case.
/// Identical to network_log_ml for every case order; kept as the second
/// route of the closed-form/sequential cross-check.
double prequential_log_ml(const DagStructure& structure, const Dataset& data,
                          const DiscreteBayesNet& prior_net, double ess);

struct StructureScore {
  DagStructure structure;
  double log_ml = 0.0;
  double log_prior = 0.0;
  double log_posterior_unnormalized = 0.0;  // log_ml + log_prior
};

// Normalized posterior over candidates from unnormalized log scores,
// exponentiated after a max shift.
std::vector<double> normalize_log_posterior(std::span<const double> log_scores);

// Posterior over candidate structures given per-candidate log priors.
std::vector<double> structure_posterior(
    const std::vector<DagStructure>& candidates,
    std::span<const double> structure_log_priors, const Dataset& data,
    const DiscreteBayesNet& prior_net, double ess);

// Odds form of Bayes' rule: posterior odds = likelihood_ratio * prior odds.
double odds_update(double prior_odds, double likelihood_ratio);

// Certainty-factor transform CF = (lr - 1) / (lr + 1), mapping [0, inf)
// monotonically onto [-1, 1).
double cf_from_lr(double likelihood_ratio);

/// Caches family log marginal likelihoods over one (dataset, prior network,
/// ess) context. Parent sets are passed as bitmasks (domain limited to 63
/// variables, far beyond enumeration reach). Instances are single-threaded;
/// parallel search gives each thread its own scorer over the shared
/// immutable inputs.
class FamilyScorer {
 public:
  FamilyScorer(const Dataset& data, const DiscreteBayesNet& prior_net,
               double ess);

  double family_score(int child, std::uint64_t parent_mask);
  double structure_score(std::span<const std::uint64_t> parent_masks);
  double structure_score(const DagStructure& structure);

  std::size_t cache_misses() const { return misses_; }

 private:
  const Dataset& data_;
  const DiscreteBayesNet& prior_net_;
  double ess_;
  bool uniform_prior_;
  std::vector<std::unordered_map<std::uint64_t, double>> cache_;  // per child
  std::size_t misses_ = 0;
};

// Parent masks of a structure, one word per variable.
std::vector<std::uint64_t> parent_masks(const DagStructure& structure);

// The uncached scoring primitive behind FamilyScorer and the exhaustive
// search: log marginal likelihood of one family over the dataset, with the
// parent set given as a bitmask.
double family_log_ml_masked(const Dataset& data,
                            const DiscreteBayesNet& prior_net, double ess,
                            int child, std::uint64_t parent_mask);

}  // namespace bnet
