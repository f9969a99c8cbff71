#include "bnet/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bnet/indexing.hpp"

namespace bnet {

double FamilyStats::row_total(int j) const {
  double t = 0.0;
  for (int k = 0; k < states; ++k) t += at(j, k);
  return t;
}

double FamilyStats::total() const {
  double t = 0.0;
  for (double c : counts) t += c;
  return t;
}

namespace {

FamilyStats make_family(const DagStructure& structure, int child,
                        std::span<const int> parent_order) {
  FamilyStats f;
  f.child = child;
  f.parent_order.assign(parent_order.begin(), parent_order.end());
  f.states = structure.cardinality(child);
  std::vector<int> cards;
  for (int p : parent_order) cards.push_back(structure.cardinality(p));
  f.rows = static_cast<int>(num_configs(cards));
  f.counts.assign(static_cast<std::size_t>(f.rows) * f.states, 0.0);
  return f;
}

SufficientStats make_stats(const DagStructure& structure) {
  SufficientStats stats;
  stats.families.reserve(structure.size());
  for (int i = 0; i < structure.size(); ++i)
    stats.families.push_back(make_family(structure, i, structure.parents[i]));
  return stats;
}

void check_domains(const DagStructure& structure, const Dataset& data) {
  if (data.variables.size() != structure.variables.size())
    throw Error("tally: dataset domain does not match structure domain");
  for (std::size_t i = 0; i < data.variables.size(); ++i)
    if (data.variables[i].name != structure.variables[i].name ||
        data.variables[i].cardinality() != structure.variables[i].cardinality())
      throw Error("tally: variable mismatch at position " + std::to_string(i) +
                  " (" + data.variables[i].name + ")");
}

// One case into one family. Forced child cells are skipped; forced parents
// still supply their values.
inline void tally_case(FamilyStats& f, const DagStructure& structure,
                       std::span<const int> row, std::span<const uint8_t> forced) {
  if (forced[f.child]) return;
  std::size_t j = 0;
  for (int p : f.parent_order)
    j = j * static_cast<std::size_t>(structure.cardinality(p)) +
        static_cast<std::size_t>(row[p]);
  f.counts[j * f.states + row[f.child]] += 1.0;
}

}  // namespace

SufficientStats tally_sufficient_stats_serial(const DagStructure& structure,
                                              const Dataset& data) {
  check_domains(structure, data);
  SufficientStats stats = make_stats(structure);
  for (std::size_t r = 0; r < data.cases.size(); ++r)
    for (auto& f : stats.families)
      tally_case(f, structure, data.cases[r], data.forced[r]);
  return stats;
}

SufficientStats tally_sufficient_stats(const DagStructure& structure,
                                       const Dataset& data) {
#ifdef _OPENMP
  check_domains(structure, data);
  const std::size_t n_cases = data.cases.size();
  int n_threads = 1;
#pragma omp parallel
  {
#pragma omp single
    n_threads = omp_get_num_threads();
  }
  if (n_threads <= 1 || n_cases < 1024)
    return tally_sufficient_stats_serial(structure, data);

  std::vector<SufficientStats> partial(n_threads, make_stats(structure));
#pragma omp parallel
  {
    SufficientStats& local = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(n_cases); ++r)
      for (auto& f : local.families)
        tally_case(f, structure, data.cases[r], data.forced[r]);
  }
  // Counts are integers, so summation order cannot change the result.
  SufficientStats stats = std::move(partial[0]);
  for (int t = 1; t < n_threads; ++t)
    for (std::size_t i = 0; i < stats.families.size(); ++i)
      for (std::size_t c = 0; c < stats.families[i].counts.size(); ++c)
        stats.families[i].counts[c] += partial[t].families[i].counts[c];
  return stats;
#else
  return tally_sufficient_stats_serial(structure, data);
#endif
}

FamilyStats tally_family(const DagStructure& structure, const Dataset& data,
                         int child, std::span<const int> parent_order) {
  check_domains(structure, data);
  FamilyStats f = make_family(structure, child, parent_order);
  for (std::size_t r = 0; r < data.cases.size(); ++r)
    tally_case(f, structure, data.cases[r], data.forced[r]);
  return f;
}

}  // namespace bnet
