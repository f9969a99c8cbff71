#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bnet/types.hpp"

namespace bnet {

/// Dirichlet hyperparameters over the states of one discrete variable
/// (Beta is the two-state case). Every alpha must be strictly positive;
/// improper all-zero priors are rejected at construction.
struct DirichletParams {
  std::vector<double> alpha;

  DirichletParams() = default;
  explicit DirichletParams(std::vector<double> a);

  int dim() const { return static_cast<int>(alpha.size()); }
  double total() const;
};

using CountVector = std::vector<double>;

// Posterior hyperparameters: alpha_k + N_k.
DirichletParams update(const DirichletParams& prior, const CountVector& counts);

// Posterior predictive for the next observation:
// p(state k) = (alpha_k + N_k) / (alpha_total + N).
std::vector<double> predictive(const DirichletParams& prior,
                               const CountVector& counts);

/// Log marginal likelihood of the counts under the Dirichlet prior:
///   ln Gamma(a) - ln Gamma(a+N) + sum_k [ln Gamma(a_k+N_k) - ln Gamma(a_k)]
/// with a = sum_k a_k. Equal to the log of the sequential product of
/// one-step predictive probabilities, in any data order.
double log_marginal_likelihood(const DirichletParams& prior,
                               const CountVector& counts);

/// Beta hyperparameters (alpha_heads, alpha_tails) recovered from an
/// assessed p(first = heads) and p(second = heads | first = heads).
/// Requires 0 < p_first < p_second_given_first < 1; anything else admits no
/// finite positive prior and raises an error.
std::pair<double, double> elicit_imagined_data(double p_first,
                                               double p_second_given_first);

}  // namespace bnet
