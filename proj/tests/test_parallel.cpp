// The OpenMP kernels must be result-identical to their serial references.

#include "bnet/search.hpp"
#include "bnet/sewell_shah.hpp"
#include "bnet/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bnet;
using namespace bnet::testing;

TEST_CASE("parallel tally is count-identical to the serial reference") {
  SUBCASE("college-plans corpus") {
    const Dataset data = expand_counts(sewell_shah_counts());
    DagStructure s(data.variables);
    s.add_edge(1, 2);  // SES -> IQ
    s.add_edge(3, 2);  // PE -> IQ
    s.add_edge(0, 3);  // SEX -> PE
    s.add_edge(2, 4);  // IQ -> CP
    const SufficientStats serial = tally_sufficient_stats_serial(s, data);
    const SufficientStats parallel = tally_sufficient_stats(s, data);
    REQUIRE(serial.families.size() == parallel.families.size());
    for (std::size_t i = 0; i < serial.families.size(); ++i)
      CHECK(serial.families[i].counts == parallel.families[i].counts);
  }

  SUBCASE("random datasets with forced cells") {
    Rng rng(171);
    for (int trial = 0; trial < 5; ++trial) {
      const Domain d = random_domain(5, 3, rng);
      const DagStructure s = random_structure(d, 3, rng);
      const DiscreteBayesNet gen = random_net(s, rng);
      const Dataset data = sample_dataset(gen, 5000, rng, 0.15);
      const SufficientStats serial = tally_sufficient_stats_serial(s, data);
      const SufficientStats parallel = tally_sufficient_stats(s, data);
      for (std::size_t i = 0; i < serial.families.size(); ++i)
        CHECK(serial.families[i].counts == parallel.families[i].counts);
    }
  }
}

TEST_CASE("parallel exhaustive search reproduces the serial ranking exactly") {
  const Dataset data = expand_counts(sewell_shah_counts());
  const DiscreteBayesNet uniform = uniform_joint_net(data.variables);
  const StructureConstraints constraints = sewell_shah_constraints();

  SearchOptions serial_opts;
  serial_opts.parallel = false;
  const SearchReport parallel =
      exhaustive_search(data, uniform, 5.0, constraints, 10);
  const SearchReport serial =
      exhaustive_search(data, uniform, 5.0, constraints, 10, serial_opts);

  REQUIRE(parallel.ranked.size() == serial.ranked.size());
  for (std::size_t i = 0; i < parallel.ranked.size(); ++i) {
    CHECK(parallel.ranked[i].log_ml == serial.ranked[i].log_ml);
    CHECK(parallel.ranked[i].structure.edges() ==
          serial.ranked[i].structure.edges());
  }
}
