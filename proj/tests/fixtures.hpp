// Shared test fixtures: small hand-built networks and decision problems.
#pragma once

#include "bnet/decide.hpp"
#include "bnet/network.hpp"

namespace bnet::testing {

inline Variable binary(const std::string& name) {
  return Variable{name, {name + "0", name + "1"}};
}

// X -> Y with p(x1) = 0.5, p(y1|x1) = 0.9, p(y1|x0) = 0.1.
// Posterior p(x1 | y1) = 0.45 / 0.5 = 0.9.
inline DiscreteBayesNet chain_xy() {
  DiscreteBayesNet net;
  net.structure = DagStructure({binary("X"), binary("Y")});
  net.structure.add_edge(0, 1);
  net.cpts.resize(2);
  net.cpts[0] = Cpt{0, {}, {{0.5, 0.5}}};
  net.cpts[1] = Cpt{1, {0}, {{0.9, 0.1}, {0.1, 0.9}}};
  return net;
}

// Five-node diagnosis topology F -> G, F -> J, A -> J, S -> J with
// implementer-chosen positive CPTs.
inline DiscreteBayesNet fraud_shape(double prior_a = 0.25, double prior_s = 0.5) {
  DiscreteBayesNet net;
  net.structure = DagStructure(
      {binary("F"), binary("A"), binary("S"), binary("G"), binary("J")});
  net.structure.add_edge(0, 3);  // F -> G
  net.structure.add_edge(0, 4);  // F -> J
  net.structure.add_edge(1, 4);  // A -> J
  net.structure.add_edge(2, 4);  // S -> J
  net.cpts.resize(5);
  net.cpts[0] = Cpt{0, {}, {{0.99, 0.01}}};
  net.cpts[1] = Cpt{1, {}, {{1.0 - prior_a, prior_a}}};
  net.cpts[2] = Cpt{2, {}, {{1.0 - prior_s, prior_s}}};
  net.cpts[3] = Cpt{3, {0}, {{0.8, 0.2}, {0.1, 0.9}}};
  // J | F, A, S: rows over (F, A, S) with S varying fastest.
  net.cpts[4] = Cpt{4, {0, 1, 2},
                    {{0.95, 0.05},
                     {0.90, 0.10},
                     {0.85, 0.15},
                     {0.80, 0.20},
                     {0.40, 0.60},
                     {0.35, 0.65},
                     {0.30, 0.70},
                     {0.25, 0.75}}};
  return net;
}

// The party problem: choose indoors/outdoors before seeing the weather.
// p(sunny) = 0.7, u(out,sun) = 1, u(out,rain) = 0, u(in,.) = 0.8, so
// EU(outdoors) = 0.7 and EU(indoors) = 0.8.
inline InfluenceDiagram party_problem() {
  InfluenceDiagram id;
  id.decisions = {{"Location", {"outdoors", "indoors"}}};
  id.uncertainties = {Variable{"Weather", {"sunny", "rainy"}}};
  id.cpts = {Cpt{1, {}, {{0.7, 0.3}}}};
  id.outcome_parents = {1};
  id.outcome_map = {"out_sun", "out_rain", "in_sun", "in_rain"};
  id.utilities = {{"out_sun", 1.0}, {"out_rain", 0.0}, {"in_sun", 0.8},
                  {"in_rain", 0.8}};
  return id;
}

// The party problem unrolled as a decision tree (full form).
inline DecisionTree party_tree() {
  DecisionTree tree;
  tree.root = DecisionTree::decision(
      "Location",
      [] {
        std::vector<std::pair<std::string, DecisionTree::NodePtr>> edges;
        edges.emplace_back("outdoors",
                           DecisionTree::chance("Weather", [] {
                             std::vector<std::tuple<std::string, double,
                                                    DecisionTree::NodePtr>> e;
                             e.emplace_back("sunny", 0.7, DecisionTree::leaf(1.0));
                             e.emplace_back("rainy", 0.3, DecisionTree::leaf(0.0));
                             return e;
                           }()));
        edges.emplace_back("indoors",
                           DecisionTree::chance("Weather", [] {
                             std::vector<std::tuple<std::string, double,
                                                    DecisionTree::NodePtr>> e;
                             e.emplace_back("sunny", 0.7, DecisionTree::leaf(0.8));
                             e.emplace_back("rainy", 0.3, DecisionTree::leaf(0.8));
                             return e;
                           }()));
        return edges;
      }());
  return tree;
}

// Simplified form: the indoor branch collapses to a single leaf because its
// utility does not depend on the weather.
inline DecisionTree party_tree_simplified() {
  DecisionTree tree;
  tree.root = DecisionTree::decision(
      "Location",
      [] {
        std::vector<std::pair<std::string, DecisionTree::NodePtr>> edges;
        edges.emplace_back("outdoors",
                           DecisionTree::chance("Weather", [] {
                             std::vector<std::tuple<std::string, double,
                                                    DecisionTree::NodePtr>> e;
                             e.emplace_back("sunny", 0.7, DecisionTree::leaf(1.0));
                             e.emplace_back("rainy", 0.3, DecisionTree::leaf(0.0));
                             return e;
                           }()));
        edges.emplace_back("indoors", DecisionTree::leaf(0.8));
        return edges;
      }());
  return tree;
}

}  // namespace bnet::testing
