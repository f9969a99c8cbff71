#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bnet/dataset.hpp"
#include "bnet/network.hpp"

namespace bnet {

/// A dependency network: for each variable, a conditional table given all
/// other variables. The graph is typically cyclic and the conditionals need
/// not be consistent with any single joint; strictly positive entries are
/// required so Gibbs sampling converges.
struct DependencyNetwork {
  Domain variables;
  // conditionals[i]: child = i, parent_order = all other indices ascending,
  // rows over the others' configurations.
  std::vector<Cpt> conditionals;

  int size() const { return static_cast<int>(variables.size()); }
};

std::vector<std::string> validate_depnet(const DependencyNetwork& dn);

// Learn each full conditional independently from complete data, smoothing
// every cell with the pseudocount (which also guarantees positivity).
DependencyNetwork learn_depnet(const Dataset& data, double pseudocount);

// Consistent dependency network of a strictly positive Bayes net: each
// conditional is the exact p(X_i | all others) implied by the joint.
DependencyNetwork depnet_from_bn(const DiscreteBayesNet& net);

enum class VisitOrder { kFixed, kRandom };

/// Empirical joint recorded from a Gibbs chain, plus the settings that
/// produced it. Identical (seed, sweeps, burn_in, order, init) give
/// identical tables.
struct GibbsResult {
  std::vector<int> cards;
  std::vector<double> joint;  // parent_config_index layout, sums to 1
  long sweeps = 0;
  long burn_in = 0;
  std::uint64_t seed = 0;
  VisitOrder order = VisitOrder::kFixed;
};

// Cycle through the variables, resampling each from its conditional given
// the current values of the others; after burn-in, record one assignment
// per sweep. The initial state is drawn from the chain's generator unless
// supplied. Requires sweeps > burn_in >= 0.
GibbsResult gibbs_sample(const DependencyNetwork& dn, long sweeps, long burn_in,
                         std::uint64_t seed, VisitOrder order,
                         const std::optional<std::vector<int>>& init = {});

// Total variation distance between two distributions on the same support.
double total_variation(std::span<const double> p, std::span<const double> q);

// Exact joint of a net as a flat table in parent_config_index layout.
std::vector<double> exact_joint(const DiscreteBayesNet& net);

}  // namespace bnet
