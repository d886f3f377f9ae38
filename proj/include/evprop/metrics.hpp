#ifndef EVPROP_METRICS_HPP
#define EVPROP_METRICS_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "evprop/network.hpp"

namespace evprop {

/// Structural summary of a network. Centralities are computed on the
/// underlying directed simple graph: link types are ignored, parallel
/// edges collapse and self loops are dropped.
struct NetworkMetrics {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  /// Longest finite shortest path over ordered pairs.
  std::size_t max_geodesic = 0;
  double mean_betweenness = 0.0;
  double mean_closeness = 0.0;
  double mean_eigenvector = 0.0;
};

/// Per-node centralities, indexed like HeteroNetwork::node_ids().
struct Centralities {
  std::size_t max_geodesic = 0;
  /// Unnormalized shortest-path betweenness.
  Eigen::VectorXd betweenness;
  /// Harmonic closeness: sum of 1/d(v,u) over reachable u, over n-1.
  Eigen::VectorXd closeness;
  /// Dominant eigenvector of the symmetrized adjacency, scaled to unit max.
  Eigen::VectorXd eigenvector;
};

/// Simple-graph out-adjacency by node index, ascending.
std::vector<std::vector<std::size_t>> simple_adjacency(const HeteroNetwork& net);

Centralities compute_centralities(const HeteroNetwork& net);

/// Throws InputError for an empty network.
NetworkMetrics compute_metrics(const HeteroNetwork& net);

}  // namespace evprop

#endif  // EVPROP_METRICS_HPP
