// Benchmark: OpenMP kernels against their serial references.
//
//   tally   - sufficient-statistic counting over a replicated corpus
//   search  - exhaustive scoring of the unconstrained 5-variable DAG space
//
// Usage: bnet_bench [replicas] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bnet/search.hpp"
#include "bnet/sewell_shah.hpp"
#include "bnet/stats.hpp"

using namespace bnet;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

template <typename Fn>
double best_of(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int replicas = argc > 1 ? std::atoi(argv[1]) : 200;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  const Dataset base = expand_counts(sewell_shah_counts());
  Dataset big;
  big.variables = base.variables;
  for (int r = 0; r < replicas; ++r)
    for (std::size_t c = 0; c < base.cases.size(); ++c)
      big.add_case(base.cases[c], base.forced[c]);
  std::printf("tally workload: %zu cases x %d variables\n", big.num_cases(),
              big.num_vars());

  DagStructure structure(big.variables);
  structure.add_edge(0, 3);
  structure.add_edge(1, 2);
  structure.add_edge(1, 3);
  structure.add_edge(1, 4);
  structure.add_edge(3, 2);
  structure.add_edge(2, 4);
  structure.add_edge(3, 4);

  SufficientStats serial_stats, parallel_stats;
  const double tally_serial = best_of(repeats, [&] {
    serial_stats = tally_sufficient_stats_serial(structure, big);
  });
  const double tally_parallel = best_of(repeats, [&] {
    parallel_stats = tally_sufficient_stats(structure, big);
  });
  bool same = true;
  for (std::size_t i = 0; i < serial_stats.families.size(); ++i)
    same = same && serial_stats.families[i].counts == parallel_stats.families[i].counts;
  std::printf("tally    serial %8.4fs  parallel %8.4fs  speedup %5.2fx  %s\n",
              tally_serial, tally_parallel, tally_serial / tally_parallel,
              same ? "counts identical" : "COUNTS DIFFER");

  // Search over the full 5-variable space against the replicated corpus:
  // family tallies dominate, candidate scoring amortizes them via the
  // per-thread caches.
  const DiscreteBayesNet prior = uniform_joint_net(big.variables);
  std::printf("search workload: all 29281 DAGs on 5 variables, %zu cases\n",
              big.num_cases());
  SearchOptions serial_opts;
  serial_opts.parallel = false;
  SearchReport serial_report, parallel_report;
  const double search_serial = best_of(repeats, [&] {
    serial_report = exhaustive_search(big, prior, 5.0, {}, 3, serial_opts);
  });
  const double search_parallel = best_of(repeats, [&] {
    parallel_report = exhaustive_search(big, prior, 5.0, {}, 3);
  });
  same = serial_report.ranked.size() == parallel_report.ranked.size();
  for (std::size_t i = 0; same && i < serial_report.ranked.size(); ++i)
    same = serial_report.ranked[i].log_ml == parallel_report.ranked[i].log_ml &&
           serial_report.ranked[i].structure.edges() ==
               parallel_report.ranked[i].structure.edges();
  std::printf("search   serial %8.4fs  parallel %8.4fs  speedup %5.2fx  %s\n",
              search_serial, search_parallel, search_serial / search_parallel,
              same ? "rankings identical" : "RANKINGS DIFFER");
  return 0;
}
