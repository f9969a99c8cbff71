#pragma once

#include <span>
#include <vector>

#include "bnet/dataset.hpp"
#include "bnet/graph.hpp"

namespace bnet {

/// Counts N_ijk for one family: child state k under parent configuration j.
/// Flat layout counts[j * states + k], rows in parent_config_index order.
struct FamilyStats {
  int child = -1;
  std::vector<int> parent_order;
  int rows = 0;
  int states = 0;
  std::vector<double> counts;

  double& at(int j, int k) { return counts[static_cast<std::size_t>(j) * states + k]; }
  double at(int j, int k) const { return counts[static_cast<std::size_t>(j) * states + k]; }
  double row_total(int j) const;
  double total() const;
};

struct SufficientStats {
  std::vector<FamilyStats> families;
};

// Family-level counts for a structure over a dataset. Forced cells are
// skipped for their own family but still read as parent values. The
// parallel entry point partitions cases across OpenMP threads and merges
// per-thread tallies by summation; it is count-identical to the serial
// reference for every input.
SufficientStats tally_sufficient_stats(const DagStructure& structure,
                                       const Dataset& data);
SufficientStats tally_sufficient_stats_serial(const DagStructure& structure,
                                              const Dataset& data);

// Counts for a single family without materializing the rest.
FamilyStats tally_family(const DagStructure& structure, const Dataset& data,
                         int child, std::span<const int> parent_order);

}  // namespace bnet
