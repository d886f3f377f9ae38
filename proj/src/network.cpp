#include "evprop/network.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <tuple>

#include "csv.hpp"
#include "evprop/error.hpp"

namespace evprop {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

std::vector<std::pair<NodeId, NodeParams>> default_params(const std::vector<NodeId>& ids,
                                                          const NodeParamDefaults& defaults) {
  if (!in_unit_interval(defaults.relay_probability) || !in_unit_interval(defaults.tendency_min) ||
      !in_unit_interval(defaults.tendency_max) || defaults.tendency_min > defaults.tendency_max) {
    throw InputError("node parameter defaults must lie in [0,1] with tendency_min <= tendency_max");
  }
  std::mt19937_64 rng(defaults.seed);
  std::uniform_real_distribution<double> tendency(defaults.tendency_min, defaults.tendency_max);
  std::vector<std::pair<NodeId, NodeParams>> out;
  out.reserve(ids.size());
  for (NodeId id : ids) {
    const double t = defaults.tendency_min == defaults.tendency_max ? defaults.tendency_min
                                                                    : tendency(rng);
    out.emplace_back(id, NodeParams{defaults.relay_probability, t});
  }
  return out;
}

}  // namespace

HeteroNetwork::HeteroNetwork(Frame frame, std::vector<std::pair<NodeId, NodeParams>> nodes,
                             std::vector<TypedEdge> edges)
    : frame_(std::move(frame)), edges_(std::move(edges)) {
  std::sort(nodes.begin(), nodes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [id, p] : nodes) {
    if (!ids_.empty() && ids_.back() == id) {
      throw InputError("node " + std::to_string(id) + " listed twice");
    }
    if (!in_unit_interval(p.relay_probability) || !in_unit_interval(p.tendency)) {
      throw InputError("node " + std::to_string(id) + " has parameters outside [0,1]");
    }
    index_.emplace(id, ids_.size());
    ids_.push_back(id);
    params_.push_back(p);
  }

  adjacency_.resize(ids_.size());
  std::set<std::tuple<NodeId, NodeId, std::size_t>> seen;
  for (const auto& e : edges_) {
    auto s = index_.find(e.source);
    auto t = index_.find(e.target);
    if (s == index_.end() || t == index_.end()) {
      throw InputError("edge " + std::to_string(e.source) + "->" + std::to_string(e.target) +
                       " has a dangling endpoint");
    }
    if (e.link_type >= frame_.size()) {
      throw InputError("edge " + std::to_string(e.source) + "->" + std::to_string(e.target) +
                       " has a link type outside the frame");
    }
    if (!seen.emplace(e.source, e.target, e.link_type).second) {
      throw InputError("duplicate edge " + std::to_string(e.source) + "->" +
                       std::to_string(e.target) + " of type " + frame_.label(e.link_type));
    }
    adjacency_[s->second].push_back({t->second, e.link_type});
  }
  for (auto& arcs : adjacency_) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
      return std::tie(a.target, a.link_type) < std::tie(b.target, b.link_type);
    });
  }
}

std::size_t HeteroNetwork::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown node " + std::to_string(id));
  return it->second;
}

std::vector<NodeId> HeteroNetwork::out_neighbors(NodeId id, std::size_t link_type) const {
  std::vector<NodeId> out;
  for (const Arc& a : adjacency_[index_of(id)]) {
    if (a.link_type == link_type) out.push_back(ids_[a.target]);
  }
  return out;
}

std::vector<NodeId> HeteroNetwork::out_neighbors(NodeId id, const std::string& link_type) const {
  return out_neighbors(id, frame_.require_index(link_type));
}

HeteroNetwork read_edge_list(std::istream& edges_in, const Frame& frame, std::istream* params_in,
                             const NodeParamDefaults& defaults) {
  if (frame.empty()) throw InputError("network frame is empty");
  std::vector<TypedEdge> edges;
  std::vector<std::string> f;
  csv::Reader edge_reader(edges_in, "edge list");
  if (edge_reader.expect_header({"source", "target", "link_type"})) {
    while (edge_reader.next(f)) {
      if (f.size() != 3) edge_reader.fail("expected 3 fields, found " + std::to_string(f.size()));
      const auto type = frame.index_of(f[2]);
      if (!type) edge_reader.fail("unknown link type '" + f[2] + "'");
      edges.push_back({edge_reader.parse_number<NodeId>(f[0], "source node"),
                       edge_reader.parse_number<NodeId>(f[1], "target node"), *type});
    }
  }

  std::vector<std::pair<NodeId, NodeParams>> nodes;
  if (params_in != nullptr) {
    csv::Reader reader(*params_in, "node params");
    if (reader.expect_header({"node", "relay_probability", "tendency"})) {
      while (reader.next(f)) {
        if (f.size() != 3) reader.fail("expected 3 fields, found " + std::to_string(f.size()));
        NodeParams p{reader.parse_number<double>(f[1], "relay_probability"),
                     reader.parse_number<double>(f[2], "tendency")};
        if (!in_unit_interval(p.relay_probability) || !in_unit_interval(p.tendency)) {
          reader.fail("node parameters must lie in [0,1]");
        }
        nodes.emplace_back(reader.parse_number<NodeId>(f[0], "node"), p);
      }
    }
  } else {
    std::set<NodeId> ids;
    for (const auto& e : edges) {
      ids.insert(e.source);
      ids.insert(e.target);
    }
    nodes = default_params({ids.begin(), ids.end()}, defaults);
  }
  return HeteroNetwork(frame, std::move(nodes), std::move(edges));
}

HeteroNetwork load_edge_list(const std::string& path, const Frame& frame,
                             const std::optional<std::string>& params_path,
                             const NodeParamDefaults& defaults) {
  auto in = csv::open_input(path);
  if (params_path) {
    auto params = csv::open_input(*params_path);
    return read_edge_list(in, frame, &params, defaults);
  }
  return read_edge_list(in, frame, nullptr, defaults);
}

UntypedGraph read_untyped_edges(std::istream& in) {
  UntypedGraph g;
  std::set<NodeId> ids;
  std::vector<std::string> f;
  csv::Reader reader(in, "untyped edge list");
  if (reader.expect_header({"source", "target"})) {
    while (reader.next(f)) {
      if (f.size() != 2) reader.fail("expected 2 fields, found " + std::to_string(f.size()));
      UntypedEdge e{reader.parse_number<NodeId>(f[0], "source node"),
                    reader.parse_number<NodeId>(f[1], "target node")};
      ids.insert(e.source);
      ids.insert(e.target);
      g.edges.push_back(e);
    }
  }
  g.nodes.assign(ids.begin(), ids.end());
  return g;
}

UntypedGraph load_untyped_edges(const std::string& path) {
  auto in = csv::open_input(path);
  return read_untyped_edges(in);
}

void write_edge_list(const HeteroNetwork& net, std::ostream& out) {
  out << "source,target,link_type\n";
  for (const auto& e : net.edges()) {
    out << e.source << ',' << e.target << ',' << net.frame().label(e.link_type) << '\n';
  }
}

void write_node_params(const HeteroNetwork& net, std::ostream& out) {
  out << "node,relay_probability,tendency\n";
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    const auto& p = net.params_at(i);
    out << net.node_ids()[i] << ',' << csv::format_double(p.relay_probability) << ','
        << csv::format_double(p.tendency) << '\n';
  }
}

void save_edge_list(const HeteroNetwork& net, const std::string& path) {
  auto out = csv::open_output(path);
  write_edge_list(net, out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

void save_node_params(const HeteroNetwork& net, const std::string& path) {
  auto out = csv::open_output(path);
  write_node_params(net, out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

HeteroNetwork assign_random_link_types(const UntypedGraph& graph, const Frame& frame,
                                       const std::vector<double>& weights, std::uint64_t seed,
                                       const NodeParamDefaults& defaults) {
  if (frame.empty()) throw InputError("cannot assign link types from an empty frame");
  if (weights.size() != frame.size()) {
    throw InputError("expected " + std::to_string(frame.size()) + " link-type weights, got " +
                     std::to_string(weights.size()));
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InputError("link-type weights must be nonnegative");
    total += w;
  }
  if (total <= 0.0) throw InputError("link-type weights are all zero");

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<TypedEdge> typed;
  typed.reserve(graph.edges.size());
  for (const auto& e : graph.edges) typed.push_back({e.source, e.target, pick(rng)});
  return HeteroNetwork(frame, default_params(graph.nodes, defaults), std::move(typed));
}

UntypedGraph random_digraph(std::size_t nodes, std::size_t edges, std::uint64_t seed) {
  if (nodes > 0 && edges > nodes * (nodes - 1)) {
    throw InputError("a simple digraph on " + std::to_string(nodes) + " nodes has at most " +
                     std::to_string(nodes * (nodes - 1)) + " edges");
  }
  if (nodes == 0 && edges > 0) throw InputError("cannot place edges on zero nodes");
  UntypedGraph g;
  for (std::size_t i = 0; i < nodes; ++i) g.nodes.push_back(static_cast<NodeId>(i));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> node(0, nodes == 0 ? 0 : static_cast<NodeId>(nodes - 1));
  std::set<std::pair<NodeId, NodeId>> chosen;
  while (chosen.size() < edges) {
    const NodeId s = node(rng);
    const NodeId t = node(rng);
    if (s != t) chosen.emplace(s, t);
  }
  for (const auto& [s, t] : chosen) g.edges.push_back({s, t});
  return g;
}

}  // namespace evprop
