#include "bnet/indexing.hpp"

#include <stdexcept>
#include <string>

namespace bnet {

std::size_t num_configs(std::span<const int> cards) {
  std::size_t n = 1;
  for (int c : cards) n *= static_cast<std::size_t>(c);
  return n;
}

std::size_t parent_config_index(std::span<const int> cards,
                                std::span<const int> states) {
  if (cards.size() != states.size())
    throw std::out_of_range("parent_config_index: rank mismatch");
  std::size_t index = 0;
  for (std::size_t t = 0; t < cards.size(); ++t) {
    if (states[t] < 0 || states[t] >= cards[t])
      throw std::out_of_range("parent_config_index: state " +
                              std::to_string(states[t]) + " out of range at position " +
                              std::to_string(t));
    index = index * static_cast<std::size_t>(cards[t]) +
            static_cast<std::size_t>(states[t]);
  }
  return index;
}

std::vector<int> config_from_index(std::span<const int> cards,
                                   std::size_t index) {
  std::vector<int> states(cards.size());
  for (std::size_t t = cards.size(); t-- > 0;) {
    states[t] = static_cast<int>(index % static_cast<std::size_t>(cards[t]));
    index /= static_cast<std::size_t>(cards[t]);
  }
  if (index != 0) throw std::out_of_range("config_from_index: index out of range");
  return states;
}

bool next_config(std::span<const int> cards, std::span<int> states) {
  for (std::size_t t = cards.size(); t-- > 0;) {
    if (++states[t] < cards[t]) return true;
    states[t] = 0;
  }
  return false;
}

}  // namespace bnet
