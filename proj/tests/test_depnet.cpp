#include <cmath>

#include "bnet/depnet.hpp"
#include "bnet/infer.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bnet;
using namespace bnet::testing;

namespace {

DiscreteBayesNet independent_coins() {
  DiscreteBayesNet net;
  net.structure = DagStructure({binary("X"), binary("Y")});
  net.cpts = {Cpt{0, {}, {{0.5, 0.5}}}, Cpt{1, {}, {{0.5, 0.5}}}};
  return net;
}

// X -> Y -> Z with moderate, strictly positive rows.
DiscreteBayesNet chain_xyz() {
  DiscreteBayesNet net;
  net.structure = DagStructure({binary("X"), binary("Y"), binary("Z")});
  net.structure.add_edge(0, 1);
  net.structure.add_edge(1, 2);
  net.cpts = {Cpt{0, {}, {{0.6, 0.4}}},
              Cpt{1, {0}, {{0.7, 0.3}, {0.25, 0.75}}},
              Cpt{2, {1}, {{0.8, 0.2}, {0.35, 0.65}}}};
  return net;
}

// Two binary variables whose hand-built conditionals cannot come from any
// single joint; positive everywhere.
DependencyNetwork inconsistent_pair() {
  DependencyNetwork dn;
  dn.variables = {binary("X"), binary("Y")};
  dn.conditionals = {Cpt{0, {1}, {{0.8, 0.2}, {0.2, 0.8}}},
                     Cpt{1, {0}, {{0.3, 0.7}, {0.6, 0.4}}}};
  return dn;
}

}  // namespace

TEST_CASE("learn_depnet recovers independence and conditionals") {
  Rng rng(111);

  SUBCASE("independent fair bits") {
    const Dataset data = sample_dataset(independent_coins(), 4000, rng);
    const DependencyNetwork dn = learn_depnet(data, 1.0);
    CHECK(validate_depnet(dn).empty());
    for (const auto& cpt : dn.conditionals)
      for (const auto& row : cpt.rows)
        for (double v : row) CHECK(std::abs(v - 0.5) < 0.04);  // ~3 sigma
  }

  SUBCASE("single case stays strictly positive") {
    Dataset data;
    data.variables = {binary("X"), binary("Y")};
    data.add_case({0, 1});
    const DependencyNetwork dn = learn_depnet(data, 1.0);
    CHECK(validate_depnet(dn).empty());
    // Smoothed point estimate: (1 + 1) / (1 + 2) for the observed value.
    CHECK(dn.conditionals[0].rows[1][0] == doctest::Approx(2.0 / 3.0));
    CHECK(dn.conditionals[0].rows[0][0] == doctest::Approx(0.5));
  }

  SUBCASE("recovers a generator conditional") {
    DiscreteBayesNet gen = chain_xy();
    gen.cpts[1].rows = {{0.3, 0.7}, {0.75, 0.25}};
    const Dataset data = sample_dataset(gen, 4000, rng);
    const DependencyNetwork dn = learn_depnet(data, 1.0);
    CHECK(std::abs(dn.conditionals[1].rows[0][1] - 0.7) < 0.05);
    CHECK(std::abs(dn.conditionals[1].rows[1][1] - 0.25) < 0.05);
  }

  SUBCASE("zero cases is an error") {
    Dataset data;
    data.variables = {binary("X"), binary("Y")};
    CHECK_THROWS_AS(learn_depnet(data, 1.0), Error);
    data.add_case({0, 0});
    CHECK_THROWS_AS(learn_depnet(data, 0.0), Error);
  }
}

TEST_CASE("depnet_from_bn produces the exact full conditionals") {
  SUBCASE("independent coins ignore each other") {
    const DependencyNetwork dn = depnet_from_bn(independent_coins());
    for (const auto& cpt : dn.conditionals)
      for (const auto& row : cpt.rows) {
        CHECK(row[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(row[1] == doctest::Approx(0.5).epsilon(1e-14));
      }
  }

  SUBCASE("chain conditionals match the inference module") {
    const DiscreteBayesNet net = chain_xy();
    const DependencyNetwork dn = depnet_from_bn(net);
    for (int y = 0; y < 2; ++y) {
      const PosteriorTable p = query_enumeration(net, Query{{0}, {{1, y}}});
      for (int x = 0; x < 2; ++x)
        CHECK(dn.conditionals[0].rows[y][x] ==
              doctest::Approx(p.probs[x]).epsilon(1e-12));
    }
  }

  SUBCASE("positive three-variable net yields valid conditionals") {
    const DependencyNetwork dn = depnet_from_bn(chain_xyz());
    CHECK(validate_depnet(dn).empty());
  }

  SUBCASE("zero-probability configurations are an error") {
    DiscreteBayesNet net = chain_xy();
    net.cpts[0].rows = {{1.0, 0.0}};
    CHECK_THROWS_AS(depnet_from_bn(net), Error);
  }
}

TEST_CASE("gibbs sampling") {
  SUBCASE("two fair coins converge to uniform") {
    const DependencyNetwork dn = depnet_from_bn(independent_coins());
    const GibbsResult result =
        gibbs_sample(dn, 100000, 1000, 42, VisitOrder::kFixed);
    const std::vector<double> uniform(4, 0.25);
    CHECK(total_variation(result.joint, uniform) < 0.01);
  }

  SUBCASE("identical seeds give identical tables") {
    const DependencyNetwork dn = inconsistent_pair();
    const GibbsResult a = gibbs_sample(dn, 20000, 100, 7, VisitOrder::kRandom);
    const GibbsResult b = gibbs_sample(dn, 20000, 100, 7, VisitOrder::kRandom);
    CHECK(a.joint == b.joint);
    const GibbsResult c = gibbs_sample(dn, 20000, 100, 8, VisitOrder::kRandom);
    CHECK(a.joint != c.joint);
  }

  SUBCASE("consistent depnet converges to the source joint, and error shrinks") {
    const DiscreteBayesNet net = chain_xyz();
    const DependencyNetwork dn = depnet_from_bn(net);
    const std::vector<double> truth = exact_joint(net);
    const GibbsResult coarse = gibbs_sample(dn, 1000, 100, 5, VisitOrder::kFixed);
    const GibbsResult fine = gibbs_sample(dn, 1000000, 1000, 5, VisitOrder::kFixed);
    CHECK(total_variation(fine.joint, truth) < 0.02);
    CHECK(total_variation(fine.joint, truth) < total_variation(coarse.joint, truth));
  }

  SUBCASE("inconsistent-but-positive conditionals still converge") {
    const DependencyNetwork dn = inconsistent_pair();
    const GibbsResult a =
        gibbs_sample(dn, 1000000, 1000, 1, VisitOrder::kFixed,
                     std::vector<int>{0, 0});
    const GibbsResult b =
        gibbs_sample(dn, 1000000, 1000, 2, VisitOrder::kFixed,
                     std::vector<int>{1, 1});
    CHECK(total_variation(a.joint, b.joint) < 0.02);
  }

  SUBCASE("round trip for random positive nets (4 binary variables)") {
    Rng rng(131);
    for (int trial = 0; trial < 2; ++trial) {
      Domain domain;
      for (int i = 0; i < 4; ++i) domain.push_back(binary("G" + std::to_string(i)));
      const DiscreteBayesNet net =
          random_net(random_structure(domain, 2, rng), rng, 0.15);
      const DependencyNetwork dn = depnet_from_bn(net);
      const GibbsResult result =
          gibbs_sample(dn, 1000000, 1000, 1000 + trial, VisitOrder::kFixed);
      CHECK(total_variation(result.joint, exact_joint(net)) < 0.02);
    }
  }

  SUBCASE("argument validation") {
    const DependencyNetwork dn = inconsistent_pair();
    CHECK_THROWS_AS(gibbs_sample(dn, 100, 100, 1, VisitOrder::kFixed), Error);
    CHECK_THROWS_AS(gibbs_sample(dn, 100, -1, 1, VisitOrder::kFixed), Error);
    DependencyNetwork bad = dn;
    bad.conditionals[0].rows[0] = {1.0, 0.0};  // not strictly positive
    CHECK_THROWS_AS(gibbs_sample(bad, 100, 10, 1, VisitOrder::kFixed), Error);
  }
}
