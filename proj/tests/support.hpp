#ifndef EVPROP_TESTS_SUPPORT_HPP
#define EVPROP_TESTS_SUPPORT_HPP

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "evprop/belief.hpp"
#include "evprop/network.hpp"

namespace evprop::testing {

/// Network with every node's parameters set to `params`.
inline HeteroNetwork make_network(const Frame& frame, std::size_t nodes,
                                  std::vector<TypedEdge> edges, NodeParams params = {1.0, 1.0}) {
  std::vector<std::pair<NodeId, NodeParams>> ns;
  for (std::size_t i = 0; i < nodes; ++i) ns.emplace_back(static_cast<NodeId>(i), params);
  return HeteroNetwork(frame, std::move(ns), std::move(edges));
}

inline ProbDistribution random_distribution(const Frame& frame, std::mt19937_64& rng) {
  std::exponential_distribution<double> draw(1.0);
  std::bernoulli_distribution zero(0.15);
  Eigen::VectorXd v(static_cast<Eigen::Index>(frame.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = zero(rng) ? 0.0 : draw(rng);
  if (v.sum() == 0.0) v(0) = 1.0;
  return ProbDistribution(frame, v / v.sum());
}

/// Random BBA with a few focal sets and no mass on the empty set.
inline MassFunction random_mass(const Frame& frame, std::mt19937_64& rng) {
  std::uniform_int_distribution<Subset> set(1, frame.full_set());
  std::uniform_int_distribution<int> count(1, 5);
  std::exponential_distribution<double> draw(1.0);
  std::map<Subset, double> raw;
  const int k = count(rng);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    const double w = draw(rng);
    raw[set(rng)] += w;
    total += w;
  }
  for (auto& [s, w] : raw) w /= total;
  return MassFunction(frame, raw);
}

}  // namespace evprop::testing

#endif  // EVPROP_TESTS_SUPPORT_HPP
