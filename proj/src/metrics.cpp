#include "evprop/metrics.hpp"

#include <algorithm>
#include <queue>
#include <stack>

#include "evprop/error.hpp"

namespace evprop {

namespace {

constexpr double kEigenTolerance = 1e-10;
constexpr int kEigenMaxIterations = 100000;

// Power iteration on (A + A^T)_binary + I from the all-ones vector. The
// shift makes the iteration matrix primitive on each component so the
// normalized iterate converges even for bipartite structure.
Eigen::VectorXd eigenvector_centrality(const std::vector<std::vector<std::size_t>>& adj) {
  const auto n = static_cast<Eigen::Index>(adj.size());
  Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (std::size_t v : adj[static_cast<std::size_t>(u)]) {
      sym(u, static_cast<Eigen::Index>(v)) = 1.0;
      sym(static_cast<Eigen::Index>(v), u) = 1.0;
    }
  }
  sym += Eigen::MatrixXd::Identity(n, n);

  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  for (int it = 0; it < kEigenMaxIterations; ++it) {
    Eigen::VectorXd next = sym * x;
    next /= next.maxCoeff();
    const double change = (next - x).cwiseAbs().maxCoeff();
    x = std::move(next);
    if (change < kEigenTolerance) break;
  }
  return x;
}

}  // namespace

std::vector<std::vector<std::size_t>> simple_adjacency(const HeteroNetwork& net) {
  std::vector<std::vector<std::size_t>> adj(net.node_count());
  for (std::size_t u = 0; u < net.node_count(); ++u) {
    for (const auto& arc : net.arcs_at(u)) {
      if (arc.target != u && (adj[u].empty() || adj[u].back() != arc.target)) {
        adj[u].push_back(arc.target);
      }
    }
  }
  return adj;
}

Centralities compute_centralities(const HeteroNetwork& net) {
  const auto adj = simple_adjacency(net);
  const std::size_t n = adj.size();
  Centralities c;
  c.betweenness = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  c.closeness = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));

  // Brandes: BFS from each source, then back-propagate pair dependencies.
  std::vector<long> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1L);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    std::stack<std::size_t> order;
    std::queue<std::size_t> frontier;
    dist[s] = 0;
    sigma[s] = 1.0;
    frontier.push(s);
    double harmonic = 0.0;
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      order.push(v);
      if (v != s) {
        harmonic += 1.0 / static_cast<double>(dist[v]);
        c.max_geodesic = std::max(c.max_geodesic, static_cast<std::size_t>(dist[v]));
      }
      for (std::size_t w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    if (n > 1) c.closeness(static_cast<Eigen::Index>(s)) = harmonic / static_cast<double>(n - 1);
    while (!order.empty()) {
      const std::size_t w = order.top();
      order.pop();
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) c.betweenness(static_cast<Eigen::Index>(w)) += delta[w];
    }
  }

  c.eigenvector = eigenvector_centrality(adj);
  return c;
}

NetworkMetrics compute_metrics(const HeteroNetwork& net) {
  if (net.node_count() == 0) throw InputError("cannot compute metrics of an empty network");
  const Centralities c = compute_centralities(net);
  NetworkMetrics m;
  m.vertex_count = net.node_count();
  m.edge_count = net.edge_count();
  m.max_geodesic = c.max_geodesic;
  m.mean_betweenness = c.betweenness.mean();
  m.mean_closeness = c.closeness.mean();
  m.mean_eigenvector = c.eigenvector.mean();
  return m;
}

}  // namespace evprop
