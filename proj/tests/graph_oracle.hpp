#ifndef EVPROP_TESTS_GRAPH_ORACLE_HPP
#define EVPROP_TESTS_GRAPH_ORACLE_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "evprop/frame.hpp"
#include "evprop/network.hpp"

namespace evprop::testing {

/// Brute-force structural measures from explicit enumeration of every
/// simple path between every ordered pair.
struct OracleMetrics {
  std::size_t max_geodesic = 0;
  std::vector<double> betweenness;
  std::vector<double> closeness;
};

inline OracleMetrics brute_force_metrics(std::size_t n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [s, t] : arcs) {
    if (s != t) adj[s][t] = true;
  }
  OracleMetrics out;
  out.betweenness.assign(n, 0.0);
  out.closeness.assign(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> path{s};
      std::vector<bool> on(n, false);
      on[s] = true;
      std::function<void(std::size_t)> walk = [&](std::size_t u) {
        if (u == t) {
          paths.push_back(path);
          return;
        }
        for (std::size_t w = 0; w < n; ++w) {
          if (adj[u][w] && !on[w]) {
            on[w] = true;
            path.push_back(w);
            walk(w);
            path.pop_back();
            on[w] = false;
          }
        }
      };
      walk(s);
      if (paths.empty()) continue;
      std::size_t shortest = std::numeric_limits<std::size_t>::max();
      for (const auto& p : paths) shortest = std::min(shortest, p.size() - 1);
      out.max_geodesic = std::max(out.max_geodesic, shortest);
      if (n > 1) out.closeness[s] += 1.0 / static_cast<double>(shortest) / static_cast<double>(n - 1);
      std::vector<int> through(n, 0);
      int total = 0;
      for (const auto& p : paths) {
        if (p.size() - 1 != shortest) continue;
        ++total;
        for (std::size_t k = 1; k + 1 < p.size(); ++k) through[p[k]]++;
      }
      for (std::size_t v = 0; v < n; ++v) out.betweenness[v] += static_cast<double>(through[v]) / total;
    }
  }
  return out;
}

/// Perron vector of the symmetrized adjacency via a dense eigensolver,
/// scaled to unit max. Only meaningful for connected graphs.
inline Eigen::VectorXd perron_vector(std::size_t n, const std::vector<std::pair<int, int>>& arcs) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (auto [s, t] : arcs) {
    if (s != t) a(s, t) = a(t, s) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  Eigen::VectorXd v = solver.eigenvectors().col(a.rows() - 1).cwiseAbs();
  return v / v.maxCoeff();
}

inline bool weakly_connected(std::size_t n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto [s, t] : arcs) parent[find(s)] = find(t);
  for (std::size_t i = 1; i < n; ++i) {
    if (find(i) != find(0)) return false;
  }
  return true;
}

/// Random digraph on 1..6 nodes, possibly with parallel typed arcs.
inline std::pair<std::size_t, std::vector<std::pair<int, int>>> random_small_graph(std::mt19937_64& rng) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
  const double density = std::uniform_real_distribution<double>(0.1, 0.8)(rng);
  std::bernoulli_distribution keep(density);
  std::vector<std::pair<int, int>> arcs;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s != t && keep(rng)) arcs.emplace_back(static_cast<int>(s), static_cast<int>(t));
    }
  }
  return {n, arcs};
}

/// Typed network from arcs; every arc gets a random type and, sometimes, a
/// parallel arc of another type.
inline HeteroNetwork typed_network(std::size_t n, const std::vector<std::pair<int, int>>& arcs,
                                   std::mt19937_64& rng) {
  const Frame f = Frame::default_link_types();
  std::uniform_int_distribution<std::size_t> type(0, 3);
  std::bernoulli_distribution parallel(0.2);
  std::vector<TypedEdge> edges;
  for (auto [s, t] : arcs) {
    const std::size_t k = type(rng);
    edges.push_back({static_cast<NodeId>(s), static_cast<NodeId>(t), k});
    if (parallel(rng)) edges.push_back({static_cast<NodeId>(s), static_cast<NodeId>(t), (k + 1) % 4});
  }
  std::vector<std::pair<NodeId, NodeParams>> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.emplace_back(static_cast<NodeId>(i), NodeParams{});
  return HeteroNetwork(f, nodes, edges);
}

}  // namespace evprop::testing

#endif  // EVPROP_TESTS_GRAPH_ORACLE_HPP
