#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bnet {

// Number of joint configurations of the given cardinalities.
std::size_t num_configs(std::span<const int> cards);

/// Mixed-radix index of a configuration, with the LAST listed position
/// varying fastest. This convention is fixed repo-wide: CPT rows,
/// sufficient-statistic rows, Dirichlet hyperparameter rows and count-table
/// entries all use it, so the same index always addresses the same
/// configuration. Throws on an out-of-range state.
std::size_t parent_config_index(std::span<const int> cards,
                                std::span<const int> states);

// Inverse of parent_config_index.
std::vector<int> config_from_index(std::span<const int> cards,
                                   std::size_t index);

// Odometer step in the same order (last position fastest).
// Returns false once the sequence wraps around to all zeros.
bool next_config(std::span<const int> cards, std::span<int> states);

}  // namespace bnet
