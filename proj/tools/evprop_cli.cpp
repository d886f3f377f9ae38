// Command-line front end: network generation and metrics, simulation,
// profile learning, classification and the PCC-vs-noise experiment.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "evprop/classify.hpp"
#include "evprop/error.hpp"
#include "evprop/experiment.hpp"
#include "evprop/learning.hpp"
#include "evprop/metrics.hpp"
#include "evprop/network.hpp"
#include "evprop/propagation.hpp"
#include "evprop/seed.hpp"

namespace {

using namespace evprop;

struct Common {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool quiet = false;
  std::vector<std::string> frame;
};

void add_common(CLI::App* cmd, Common& c, bool with_frame = true) {
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--out", c.out, "Output path (stdout when omitted)");
  cmd->add_flag("--quiet", c.quiet, "Suppress progress messages");
  if (with_frame) cmd->add_option("--frame", c.frame, "Link types in order")->delimiter(',');
}

Frame frame_of(const Common& c) {
  return c.frame.empty() ? Frame::default_link_types() : Frame(c.frame);
}

template <typename Writer>
void emit(const Common& c, Writer&& write) {
  if (!c.out) {
    write(std::cout);
    return;
  }
  std::ofstream out(*c.out, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + *c.out + "' for writing");
  write(out);
  if (!out) throw IoError("failed writing '" + *c.out + "'");
}

void note(const Common& c, const std::string& msg) {
  if (!c.quiet) std::cerr << msg << '\n';
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Message propagation in heterogeneous social networks and per-level "
               "probabilistic / evidential classification of propagation traces"};
  app.require_subcommand(1);

  // generate-network
  Common gen;
  std::optional<std::string> gen_edges;
  std::size_t gen_nodes = 97;
  std::size_t gen_edge_count = 350;
  std::vector<double> gen_weights;
  std::optional<std::string> gen_params_out;
  double gen_tendency_min = 0.5;
  double gen_tendency_max = 1.0;
  double gen_relay = 1.0;
  auto* generate = app.add_subcommand("generate-network", "Assign random link types to an edge list");
  add_common(generate, gen);
  generate->add_option("--edges", gen_edges, "Untyped edge list CSV (source,target); "
                                             "a random digraph is generated when omitted");
  generate->add_option("--nodes", gen_nodes, "Nodes of the generated digraph");
  generate->add_option("--edge-count", gen_edge_count, "Edges of the generated digraph");
  generate->add_option("--weights", gen_weights, "Per-type weights (uniform by default)")
      ->delimiter(',');
  generate->add_option("--params-out", gen_params_out, "Also write node parameters CSV here");
  generate->add_option("--relay-probability", gen_relay, "Default relay probability");
  generate->add_option("--tendency-min", gen_tendency_min, "Lower bound of default tendency");
  generate->add_option("--tendency-max", gen_tendency_max, "Upper bound of default tendency");

  // metrics
  Common met;
  std::string met_network;
  auto* metrics = app.add_subcommand("metrics", "Structural metrics of a typed network");
  add_common(metrics, met);
  metrics->add_option("--network", met_network, "Typed edge list CSV")->required();

  // simulate
  Common sim;
  std::string sim_network;
  std::optional<std::string> sim_params;
  std::string sim_strategy;
  std::optional<NodeId> sim_source;
  std::size_t sim_iterations = 3;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate one message propagation");
  add_common(simulate_cmd, sim);
  simulate_cmd->add_option("--network", sim_network, "Typed edge list CSV")->required();
  simulate_cmd->add_option("--params", sim_params, "Node parameters CSV");
  simulate_cmd->add_option("--strategy", sim_strategy, "Strategy JSON {name, proportions}")
      ->required();
  simulate_cmd->add_option("--source", sim_source,
                           "Source node (drawn among nodes with out-edges when omitted)");
  simulate_cmd->add_option("--iterations", sim_iterations, "Propagation rounds");

  // learn
  Common lrn;
  std::vector<std::string> lrn_traces;
  std::string lrn_name;
  std::size_t lrn_levels = 3;
  auto* learn = app.add_subcommand("learn", "Learn a class profile from trace CSVs");
  add_common(learn, lrn);
  learn->add_option("traces", lrn_traces, "Trace CSVs (each with its .json sidecar)")->required();
  learn->add_option("--name", lrn_name, "Class name")->required();
  learn->add_option("--levels", lrn_levels, "Number of propagation levels");

  // classify
  Common cls;
  std::string cls_trace;
  std::vector<std::string> cls_profiles;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a trace against class profiles");
  add_common(classify_cmd, cls);
  classify_cmd->add_option("--trace", cls_trace, "Trace CSV")->required();
  classify_cmd->add_option("--profile", cls_profiles, "Profile JSON (repeat per class)")
      ->required();

  // experiment
  Common exp;
  bool exp_print_default = false;
  auto* experiment = app.add_subcommand("experiment", "Run the PCC-vs-noise experiment");
  add_common(experiment, exp, false);
  experiment->add_option("--config", exp.config, "Experiment config JSON");
  experiment->add_flag("--print-default-config", exp_print_default,
                       "Print the default configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) {
      const Frame frame = frame_of(gen);
      const std::uint64_t seed = gen.seed.value_or(1);
      UntypedGraph g = gen_edges ? load_untyped_edges(*gen_edges)
                                 : random_digraph(gen_nodes, gen_edge_count,
                                                  SeedHasher(seed).add(std::string_view("network")).value());
      if (gen_weights.empty()) gen_weights.assign(frame.size(), 1.0);
      NodeParamDefaults defaults{gen_relay, gen_tendency_min, gen_tendency_max,
                                 SeedHasher(seed).add(std::string_view("node-params")).value()};
      const HeteroNetwork net = assign_random_link_types(
          g, frame, gen_weights, SeedHasher(seed).add(std::string_view("link-types")).value(),
          defaults);
      emit(gen, [&](std::ostream& o) { write_edge_list(net, o); });
      if (gen_params_out) save_node_params(net, *gen_params_out);
      note(gen, "typed " + std::to_string(net.edge_count()) + " edges over " +
                    std::to_string(net.node_count()) + " nodes");
    } else if (metrics->parsed()) {
      const HeteroNetwork net = load_edge_list(met_network, frame_of(met));
      const NetworkMetrics m = compute_metrics(net);
      nlohmann::ordered_json j;
      j["vertices"] = m.vertex_count;
      j["edges"] = m.edge_count;
      j["max_geodesic"] = m.max_geodesic;
      j["mean_betweenness"] = m.mean_betweenness;
      j["mean_closeness"] = m.mean_closeness;
      j["mean_eigenvector"] = m.mean_eigenvector;
      emit(met, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
    } else if (simulate_cmd->parsed()) {
      const Frame frame = frame_of(sim);
      NodeParamDefaults defaults;
      if (sim.seed) defaults.seed = SeedHasher(*sim.seed).add(std::string_view("node-params")).value();
      const HeteroNetwork net = load_edge_list(sim_network, frame, sim_params, defaults);
      auto strategy_in = open(sim_strategy);
      const PropagationStrategy strategy = read_strategy(strategy_in, frame);
      const std::uint64_t seed = sim.seed.value_or(1);
      std::mt19937_64 rng(seed);
      NodeId source = 0;
      if (sim_source) {
        source = *sim_source;
      } else {
        std::vector<NodeId> eligible;
        for (std::size_t i = 0; i < net.node_count(); ++i) {
          if (net.out_degree_at(i) > 0) eligible.push_back(net.node_ids()[i]);
        }
        if (eligible.empty()) throw InputError("network has no node with an outgoing edge");
        source = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
      }
      const PropagationTrace trace = simulate(net, source, strategy, sim_iterations, seed);
      if (sim.out) {
        save_trace(trace, *sim.out);
      } else {
        write_trace_events(trace, std::cout);
      }
      note(sim, "reached " + std::to_string(trace.events.size()) + " nodes from source " +
                    std::to_string(source));
    } else if (learn->parsed()) {
      const Frame frame = frame_of(lrn);
      std::vector<PropagationTrace> traces;
      for (const auto& path : lrn_traces) traces.push_back(load_trace(path, frame));
      const LevelProfile profile = learn_profile(lrn_name, traces, frame, lrn_levels);
      emit(lrn, [&](std::ostream& o) { write_profile(profile, o); });
      note(lrn, "learned '" + lrn_name + "' from " + std::to_string(traces.size()) + " traces");
    } else if (classify_cmd->parsed()) {
      std::vector<LevelProfile> models;
      for (const auto& path : cls_profiles) models.push_back(load_profile(path));
      const ProfileClassifier classifier(models);
      const PropagationTrace trace = load_trace(cls_trace, classifier.frame());
      const ClassificationResult result = classifier.classify(trace);
      emit(cls, [&](std::ostream& o) { write_result(result, o); });
    } else if (experiment->parsed()) {
      ExperimentConfig config = exp.config ? load_config(*exp.config) : ExperimentConfig::defaults();
      if (exp.seed) config.seed = *exp.seed;
      if (exp_print_default) {
        write_config(config, std::cout);
        return 0;
      }
      const PccReport report = run_experiment(config);
      emit(exp, [&](std::ostream& o) { write_report(report, o); });
      note(exp, "wrote " + std::to_string(report.cells.size()) + " report rows");
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
