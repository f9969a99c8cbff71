#include "bnet/sewell_shah.hpp"

namespace bnet {

namespace {

// Sewall and Shah (1968) survey of 10,318 Wisconsin high school seniors:
// counts over (SEX, SES, IQ, PE, CP) with the last variable varying
// fastest. Entry 0 is (male, low, low, low, yes).
constexpr long long kCounts[128] = {
    // male
    4,  349, 13, 64, 9,  207, 33,  72,  12, 126, 38,  54,  10, 67,  49,  43,
    2,  232, 27, 84, 7,  201, 64,  95,  12, 115, 93,  92,  17, 79,  119, 59,
    8,  166, 47, 91, 6,  120, 74,  110, 17, 92,  148, 100, 6,  42,  198, 73,
    4,  48,  39, 57, 5,  47,  123, 90,  9,  41,  224, 65,  8,  17,  414, 54,
    // female
    5,  454, 9,  44, 5,  312, 14,  47,  8,  216, 20,  35,  13, 96,  28,  24,
    11, 285, 29, 61, 19, 236, 47,  88,  12, 164, 62,  85,  15, 113, 72,  50,
    7,  163, 36, 72, 13, 193, 75,  90,  12, 174, 91,  100, 20, 81,  142, 77,
    6,  50,  36, 58, 5,  70,  110, 76,  12, 48,  230, 81,  13, 49,  360, 98,
};

CountsTable build_table() {
  CountsTable table;
  table.variables = {
      {"SEX", {"male", "female"}},
      {"SES", {"low", "lower_middle", "upper_middle", "high"}},
      {"IQ", {"low", "lower_middle", "upper_middle", "high"}},
      {"PE", {"low", "high"}},
      {"CP", {"yes", "no"}},
  };
  table.counts.assign(std::begin(kCounts), std::end(kCounts));
  return table;
}

}  // namespace

const CountsTable& sewell_shah_counts() {
  static const CountsTable table = build_table();
  return table;
}

StructureConstraints sewell_shah_constraints() {
  StructureConstraints constraints;
  constraints.no_parents = {0, 1};  // SEX, SES
  constraints.no_children = {4};    // CP
  return constraints;
}

}  // namespace bnet
