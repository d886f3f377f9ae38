#include "evprop/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>
#include <random>
#include <unordered_map>

#include "json.hpp"

#include "csv.hpp"
#include "evprop/belief.hpp"
#include "evprop/error.hpp"
#include "evprop/seed.hpp"

namespace evprop {

PropagationStrategy::PropagationStrategy(std::string name, Frame frame,
                                         Eigen::VectorXd proportions)
    : name_(std::move(name)), frame_(std::move(frame)), proportions_(std::move(proportions)) {
  if (name_.empty()) throw InputError("strategy name must be non-empty");
  if (static_cast<std::size_t>(proportions_.size()) != frame_.size() || frame_.empty()) {
    throw InputError("strategy '" + name_ + "' needs one proportion per link type");
  }
  if ((proportions_.array() < 0.0).any() || (proportions_.array() > 1.0).any()) {
    throw InputError("strategy '" + name_ + "' has a proportion outside [0,1]");
  }
  if (std::abs(proportions_.sum() - 1.0) > kTolerance) {
    throw InputError("strategy '" + name_ + "' proportions must sum to 1");
  }
}

std::size_t recipient_budget(std::size_t out_degree, double tendency, double proportion) {
  return static_cast<std::size_t>(
      std::floor(static_cast<double>(out_degree) * tendency * proportion + 0.5));
}

PropagationTrace simulate(const HeteroNetwork& net, NodeId source,
                          const PropagationStrategy& strategy, std::size_t iterations,
                          std::uint64_t seed) {
  if (!net.contains(source)) throw InputError("unknown source node " + std::to_string(source));
  if (!(strategy.frame() == net.frame())) {
    throw InputError("strategy '" + strategy.name() + "' frame does not match the network");
  }
  if (iterations < 1) throw InputError("at least one iteration is required");

  PropagationTrace trace;
  trace.frame = net.frame();
  trace.source = source;
  trace.iterations = iterations;
  trace.seed = seed;
  trace.strategy_name = strategy.name();

  const std::size_t types = net.frame().size();
  std::vector<bool> reached(net.node_count(), false);
  std::vector<std::size_t> frontier{net.index_of(source)};
  reached[frontier.front()] = true;

  std::vector<std::size_t> fresh;
  std::vector<std::size_t> chosen;
  for (std::size_t round = 1; round <= iterations && !frontier.empty(); ++round) {
    // receiver index -> (sender index, link type); the lowest sender wins.
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> received;
    for (std::size_t u : frontier) {
      std::mt19937_64 rng(SeedHasher(seed).add(std::uint64_t{net.node_ids()[u]}).add(round).value());
      const NodeParams& p = net.params_at(u);
      if (!std::bernoulli_distribution(p.relay_probability)(rng)) continue;

      const std::size_t degree = net.out_degree_at(u);
      for (std::size_t t = 0; t < types; ++t) {
        const std::size_t budget = recipient_budget(degree, p.tendency, strategy.proportion(t));
        if (budget == 0) continue;
        fresh.clear();
        for (const auto& arc : net.arcs_at(u)) {
          if (arc.link_type == t && !reached[arc.target]) fresh.push_back(arc.target);
        }
        chosen.clear();
        std::sample(fresh.begin(), fresh.end(), std::back_inserter(chosen),
                    std::min(budget, fresh.size()), rng);
        for (std::size_t r : chosen) received.try_emplace(r, u, t);
      }
    }

    frontier.clear();
    for (const auto& [r, from] : received) {
      reached[r] = true;
      frontier.push_back(r);
      trace.events.push_back(
          {net.node_ids()[r], net.node_ids()[from.first], from.second, round});
    }
  }
  return trace;
}

CountMatrix trace_level_counts(const PropagationTrace& trace) {
  CountMatrix counts = CountMatrix::Zero(static_cast<Eigen::Index>(trace.frame.size()),
                                         static_cast<Eigen::Index>(trace.iterations));
  for (const auto& e : trace.events) {
    counts(static_cast<Eigen::Index>(e.link_type), static_cast<Eigen::Index>(e.level - 1)) += 1;
  }
  return counts;
}

void write_trace_events(const PropagationTrace& trace, std::ostream& out) {
  out << "receiver,sender,link_type,level\n";
  for (const auto& e : trace.events) {
    out << e.receiver << ',' << e.sender << ',' << trace.frame.label(e.link_type) << ','
        << e.level << '\n';
  }
}

void write_trace_sidecar(const PropagationTrace& trace, std::ostream& out) {
  nlohmann::ordered_json j;
  j["source"] = trace.source;
  j["iterations"] = trace.iterations;
  j["seed"] = trace.seed;
  j["strategy"] = trace.strategy_name;
  out << j.dump(2) << '\n';
}

std::string trace_sidecar_path(const std::string& trace_path) {
  return std::filesystem::path(trace_path).replace_extension(".json").string();
}

void save_trace(const PropagationTrace& trace, const std::string& path) {
  const std::string sidecar = trace_sidecar_path(path);
  if (sidecar == path) throw InputError("trace path must not end in .json");
  {
    auto out = csv::open_output(path);
    write_trace_events(trace, out);
    if (!out) throw IoError("failed writing '" + path + "'");
  }
  auto out = csv::open_output(sidecar);
  write_trace_sidecar(trace, out);
  if (!out) throw IoError("failed writing '" + sidecar + "'");
}

PropagationTrace read_trace(std::istream& events, std::istream& sidecar, const Frame& frame) {
  PropagationTrace trace;
  trace.frame = frame;
  try {
    const auto j = nlohmann::json::parse(sidecar);
    trace.source = j.at("source").get<NodeId>();
    trace.iterations = j.at("iterations").get<std::size_t>();
    trace.seed = j.at("seed").get<std::uint64_t>();
    trace.strategy_name = j.at("strategy").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("trace sidecar: ") + e.what());
  }
  if (trace.iterations < 1) throw InputError("trace sidecar: iterations must be >= 1");

  csv::Reader reader(events, "trace");
  std::vector<std::string> f;
  std::unordered_map<NodeId, std::size_t> level_of{{trace.source, 0}};
  if (reader.expect_header({"receiver", "sender", "link_type", "level"})) {
    while (reader.next(f)) {
      if (f.size() != 4) reader.fail("expected 4 fields, found " + std::to_string(f.size()));
      const auto type = frame.index_of(f[2]);
      if (!type) reader.fail("unknown link type '" + f[2] + "'");
      PropagationEvent e{reader.parse_number<NodeId>(f[0], "receiver"),
                         reader.parse_number<NodeId>(f[1], "sender"), *type,
                         reader.parse_number<std::size_t>(f[3], "level")};
      if (e.level < 1 || e.level > trace.iterations) reader.fail("level out of range");
      trace.events.push_back(e);
    }
  }
  std::stable_sort(trace.events.begin(), trace.events.end(),
                   [](const auto& a, const auto& b) { return a.level < b.level; });
  for (const auto& e : trace.events) {
    auto sender = level_of.find(e.sender);
    if (sender == level_of.end() || sender->second + 1 != e.level) {
      throw InputError("trace: node " + std::to_string(e.receiver) +
                       " is not one level below its sender");
    }
    if (!level_of.emplace(e.receiver, e.level).second) {
      throw InputError("trace: node " + std::to_string(e.receiver) + " received twice");
    }
  }
  std::sort(trace.events.begin(), trace.events.end(), [](const auto& a, const auto& b) {
    return std::tie(a.level, a.receiver) < std::tie(b.level, b.receiver);
  });
  return trace;
}

PropagationTrace load_trace(const std::string& path, const Frame& frame) {
  auto events = csv::open_input(path);
  auto sidecar = csv::open_input(trace_sidecar_path(path));
  return read_trace(events, sidecar, frame);
}

}  // namespace evprop
