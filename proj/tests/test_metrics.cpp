#include <cmath>
#include <random>

#include "doctest.h"

#include "evprop/error.hpp"
#include "evprop/metrics.hpp"
#include "graph_oracle.hpp"
#include "support.hpp"

using namespace evprop;

TEST_CASE("directed 3-cycle") {
  const auto net = testing::make_network(Frame::default_link_types(), 3,
                                         {{0, 1, 0}, {1, 2, 1}, {2, 0, 2}});
  const auto m = compute_metrics(net);
  CHECK(m.vertex_count == 3);
  CHECK(m.edge_count == 3);
  CHECK(m.max_geodesic == 2);
  const auto c = compute_centralities(net);
  // Each node is the midpoint of exactly one 2-hop geodesic.
  CHECK(c.betweenness(0) == 1.0);
  CHECK(c.betweenness(1) == 1.0);
  CHECK(c.betweenness(2) == 1.0);
  CHECK(std::abs(c.closeness(0) - 0.75) < 1e-12);
  CHECK((c.eigenvector.array() - 1.0).abs().maxCoeff() < 1e-9);
}

TEST_CASE("single edge") {
  const auto net = testing::make_network(Frame::default_link_types(), 2, {{0, 1, 3}});
  const auto m = compute_metrics(net);
  CHECK(m.max_geodesic == 1);
  CHECK(m.mean_betweenness == 0.0);
  CHECK(std::abs(m.mean_closeness - 0.5) < 1e-12);
}

TEST_CASE("parallel typed edges collapse and isolated nodes count") {
  const auto net = testing::make_network(Frame::default_link_types(), 3, {{0, 1, 0}, {0, 1, 1}});
  const auto m = compute_metrics(net);
  CHECK(m.vertex_count == 3);
  CHECK(m.edge_count == 2);
  CHECK(m.max_geodesic == 1);
  CHECK(simple_adjacency(net)[0].size() == 1);
}

TEST_CASE("empty network is rejected") {
  CHECK_THROWS_AS(compute_metrics(HeteroNetwork()), InputError);
}

TEST_CASE("metrics agree with the path-enumeration oracle on small digraphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [n, arcs] = testing::random_small_graph(rng);
    const auto net = testing::typed_network(n, arcs, rng);
    const auto c = compute_centralities(net);
    const auto oracle = testing::brute_force_metrics(n, arcs);
    CHECK(c.max_geodesic == oracle.max_geodesic);
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(std::abs(c.betweenness(static_cast<Eigen::Index>(v)) - oracle.betweenness[v]) < 1e-9);
      CHECK(std::abs(c.closeness(static_cast<Eigen::Index>(v)) - oracle.closeness[v]) < 1e-9);
    }
    if (n > 1 && testing::weakly_connected(n, arcs) && !arcs.empty()) {
      const Eigen::VectorXd perron = testing::perron_vector(n, arcs);
      CHECK((c.eigenvector - perron).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}
