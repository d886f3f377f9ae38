#ifndef EVPROP_PROPAGATION_HPP
#define EVPROP_PROPAGATION_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "evprop/network.hpp"

namespace evprop {

/// Split of a node's forwarding budget across link types for one message
/// class. Proportions lie in [0,1] and sum to 1.
class PropagationStrategy {
 public:
  PropagationStrategy() = default;
  PropagationStrategy(std::string name, Frame frame, Eigen::VectorXd proportions);

  const std::string& name() const { return name_; }
  const Frame& frame() const { return frame_; }
  const Eigen::VectorXd& proportions() const { return proportions_; }
  double proportion(std::size_t link_type) const {
    return proportions_(static_cast<Eigen::Index>(link_type));
  }

 private:
  std::string name_;
  Frame frame_;
  Eigen::VectorXd proportions_;
};

struct PropagationEvent {
  NodeId receiver;
  NodeId sender;
  std::size_t link_type;
  std::size_t level;

  friend bool operator==(const PropagationEvent&, const PropagationEvent&) = default;
};

/// First-receipt record of one simulated spread.
struct PropagationTrace {
  Frame frame;
  NodeId source = 0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::string strategy_name;
  /// Ordered by (level, receiver).
  std::vector<PropagationEvent> events;
};

/// Cascade from `source` for `iterations` rounds. A node forwards only in
/// the round after its first receipt, with probability relay_probability.
/// Per link type it targets round(out_degree * tendency * proportion) fresh
/// neighbors of that type, sampled without replacement. Randomness is drawn
/// from a stream keyed by (seed, node, round), so a longer run extends a
/// shorter one.
PropagationTrace simulate(const HeteroNetwork& net, NodeId source,
                          const PropagationStrategy& strategy, std::size_t iterations,
                          std::uint64_t seed);

/// Recipient count before the fresh-neighbor cap: round-half-up of
/// out_degree * tendency * proportion.
std::size_t recipient_budget(std::size_t out_degree, double tendency, double proportion);

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Events per (link type, level); rows are link types, column l-1 is level l.
CountMatrix trace_level_counts(const PropagationTrace& trace);

/// CSV `receiver,sender,link_type,level`.
void write_trace_events(const PropagationTrace& trace, std::ostream& out);
/// JSON {source, iterations, seed, strategy}.
void write_trace_sidecar(const PropagationTrace& trace, std::ostream& out);

/// Writes `path` and its sidecar trace_sidecar_path(path).
void save_trace(const PropagationTrace& trace, const std::string& path);
PropagationTrace load_trace(const std::string& path, const Frame& frame);
PropagationTrace read_trace(std::istream& events, std::istream& sidecar, const Frame& frame);

/// `runs/t1.csv` -> `runs/t1.json`.
std::string trace_sidecar_path(const std::string& trace_path);

}  // namespace evprop

#endif  // EVPROP_PROPAGATION_HPP
