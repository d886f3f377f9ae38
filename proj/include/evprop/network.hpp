#ifndef EVPROP_NETWORK_HPP
#define EVPROP_NETWORK_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "evprop/frame.hpp"

namespace evprop {

using NodeId = std::uint32_t;

struct NodeParams {
  /// Chance that the node forwards at all once it holds the message.
  double relay_probability = 1.0;
  /// Fraction of its contacts the node forwards to.
  double tendency = 1.0;
};

/// How parameters are filled for nodes the input does not describe.
struct NodeParamDefaults {
  double relay_probability = 1.0;
  double tendency_min = 0.5;
  double tendency_max = 1.0;
  std::uint64_t seed = 0x5eed;
};

struct UntypedEdge {
  NodeId source;
  NodeId target;
};

struct TypedEdge {
  NodeId source;
  NodeId target;
  std::size_t link_type;  // index into the network frame

  friend bool operator==(const TypedEdge&, const TypedEdge&) = default;
};

struct UntypedGraph {
  std::vector<NodeId> nodes;  // sorted, unique
  std::vector<UntypedEdge> edges;
};

/// Directed multigraph with one link type per edge. Immutable once built.
class HeteroNetwork {
 public:
  HeteroNetwork() = default;
  /// Throws InputError on a dangling endpoint, an out-of-frame link type, a
  /// duplicated (source, target, type) triple, a repeated node or
  /// parameters outside [0,1].
  HeteroNetwork(Frame frame, std::vector<std::pair<NodeId, NodeParams>> nodes,
                std::vector<TypedEdge> edges);

  const Frame& frame() const { return frame_; }
  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<TypedEdge>& edges() const { return edges_; }

  /// Node ids in ascending order; position in this list is the node index.
  const std::vector<NodeId>& node_ids() const { return ids_; }
  bool contains(NodeId id) const { return index_.count(id) != 0; }
  /// Throws InputError for an unknown node.
  std::size_t index_of(NodeId id) const;

  const NodeParams& params(NodeId id) const { return params_[index_of(id)]; }
  const NodeParams& params_at(std::size_t index) const { return params_[index]; }

  /// Total out-degree across all link types.
  std::size_t out_degree(NodeId id) const { return adjacency_[index_of(id)].size(); }
  std::size_t out_degree_at(std::size_t index) const { return adjacency_[index].size(); }

  /// Targets of id's out-edges of the given type, ascending.
  std::vector<NodeId> out_neighbors(NodeId id, std::size_t link_type) const;
  std::vector<NodeId> out_neighbors(NodeId id, const std::string& link_type) const;

  struct Arc {
    std::size_t target;  // node index
    std::size_t link_type;
  };
  /// Out-arcs of a node by index, sorted by (target, link_type).
  const std::vector<Arc>& arcs_at(std::size_t index) const { return adjacency_[index]; }

 private:
  Frame frame_;
  std::vector<NodeId> ids_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::vector<NodeParams> params_;
  std::vector<TypedEdge> edges_;
  std::vector<std::vector<Arc>> adjacency_;
};

/// Typed edge list CSV with header `source,target,link_type`. When a
/// node-params CSV (`node,relay_probability,tendency`) is given it defines
/// the node set; otherwise nodes are the edge endpoints and their parameters
/// come from defaults.
HeteroNetwork load_edge_list(const std::string& path, const Frame& frame,
                             const std::optional<std::string>& params_path = std::nullopt,
                             const NodeParamDefaults& defaults = {});
HeteroNetwork read_edge_list(std::istream& edges, const Frame& frame, std::istream* params,
                             const NodeParamDefaults& defaults = {});

/// Untyped edge list CSV with header `source,target`.
UntypedGraph load_untyped_edges(const std::string& path);
UntypedGraph read_untyped_edges(std::istream& in);

void write_edge_list(const HeteroNetwork& net, std::ostream& out);
void write_node_params(const HeteroNetwork& net, std::ostream& out);
void save_edge_list(const HeteroNetwork& net, const std::string& path);
void save_node_params(const HeteroNetwork& net, const std::string& path);

/// Types every edge independently with probability proportional to weights.
HeteroNetwork assign_random_link_types(const UntypedGraph& graph, const Frame& frame,
                                       const std::vector<double>& weights, std::uint64_t seed,
                                       const NodeParamDefaults& defaults = {});

/// Uniform random simple digraph with exactly `edges` arcs and no self
/// loops over nodes 0..nodes-1.
UntypedGraph random_digraph(std::size_t nodes, std::size_t edges, std::uint64_t seed);

}  // namespace evprop

#endif  // EVPROP_NETWORK_HPP
