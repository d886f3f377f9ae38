#include "evprop/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "csv.hpp"
#include "evprop/error.hpp"
#include "evprop/learning.hpp"
#include "evprop/seed.hpp"

namespace evprop {

namespace {

using json = nlohmann::json;

const char* role_tag(Role role) { return role == Role::Train ? "train" : "test"; }

const char* noise_mode_name(NoiseMode mode) {
  return mode == NoiseMode::Multiplicative ? "multiplicative" : "additive";
}

const char* predictor_name(Predictor p) {
  return p == Predictor::NearestProfile ? "nearest_profile" : "uniform_random";
}

std::uint64_t derived(const std::optional<std::uint64_t>& explicit_seed, std::uint64_t master,
                      std::string_view tag) {
  return explicit_seed ? *explicit_seed : SeedHasher(master).add(tag).value();
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

PropagationStrategy strategy_from_json(const json& j, const Frame& frame) {
  return PropagationStrategy(j.at("name").get<std::string>(), frame,
                             to_vector(j.at("proportions").get<std::vector<double>>()));
}

template <typename T>
void read_optional(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

void resolve_relative(std::optional<std::string>& path, const std::filesystem::path& base) {
  if (path && std::filesystem::path(*path).is_relative()) path = (base / *path).string();
}

std::vector<NodeId> eligible_sources(const HeteroNetwork& net) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    if (net.out_degree_at(i) > 0) out.push_back(net.node_ids()[i]);
  }
  return out;
}

PropagationTrace simulate_one(const HeteroNetwork& net, const std::vector<NodeId>& sources,
                              const ExperimentConfig& config, const PropagationStrategy& base,
                              bool noisy, std::size_t index, const DatasetKey& key) {
  std::mt19937_64 rng(SeedHasher(config.seed)
                          .add(std::string_view(role_tag(key.role)))
                          .add(std::string_view(base.name()))
                          .add(std::uint64_t{index})
                          .add(std::uint64_t{key.repetition})
                          .add(key.noise_rate)
                          .value());
  const PropagationStrategy strategy =
      make_noisy_strategy(base, noisy ? key.noise_rate : 0.0, rng, config.noise_mode);
  std::uniform_int_distribution<std::size_t> pick(0, sources.size() - 1);
  const NodeId source = sources[pick(rng)];
  return simulate(net, source, strategy, config.levels, rng());
}

}  // namespace

std::vector<PropagationStrategy> default_strategies() {
  const Frame f = Frame::default_link_types();
  Eigen::Vector4d spam(0.1, 0.1, 0.1, 0.7);
  Eigen::Vector4d professional(0.7, 0.1, 0.1, 0.1);
  Eigen::Vector4d familial(0.1, 0.6, 0.2, 0.1);
  return {PropagationStrategy("Spam", f, spam), PropagationStrategy("Professional", f, professional),
          PropagationStrategy("Familial", f, familial)};
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig c;
  c.strategies = default_strategies();
  return c;
}

void ExperimentConfig::validate() const {
  if (frame.empty()) throw InputError("config: frame is empty");
  if (strategies.size() < 2) throw InputError("config: at least two strategies are required");
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (!(strategies[i].frame() == frame)) {
      throw InputError("config: strategy '" + strategies[i].name() + "' uses another frame");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (strategies[k].name() == strategies[i].name()) {
        throw InputError("config: duplicate strategy name '" + strategies[i].name() + "'");
      }
    }
  }
  if (noise_rates.empty()) throw InputError("config: noise_rates is empty");
  for (std::size_t i = 0; i < noise_rates.size(); ++i) {
    if (!(noise_rates[i] >= 0.0 && noise_rates[i] <= 1.0)) {
      throw InputError("config: noise rates must lie in [0,1]");
    }
    if (i > 0 && noise_rates[i] <= noise_rates[i - 1]) {
      throw InputError("config: noise rates must be strictly ascending");
    }
  }
  if (levels < 1 || train_size < 1 || test_size < 1 || repetitions < 1) {
    throw InputError("config: levels, train_size, test_size and repetitions must be >= 1");
  }
  const int sources = (network.typed_edges ? 1 : 0) + (network.untyped_edges ? 1 : 0);
  if (sources > 1) throw InputError("config: give either typed_edges or untyped_edges, not both");
  if (!network.link_type_weights.empty() && network.link_type_weights.size() != frame.size()) {
    throw InputError("config: link_type_weights needs one weight per link type");
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c = ExperimentConfig::defaults();
  try {
    const json j = json::parse(in);
    if (j.contains("frame")) {
      c.frame = Frame(j.at("frame").get<std::vector<std::string>>());
      if (!(c.frame == Frame::default_link_types()) && !j.contains("strategies")) {
        throw InputError("config: a custom frame requires explicit strategies");
      }
    }
    if (j.contains("strategies")) {
      c.strategies.clear();
      for (const auto& s : j.at("strategies")) c.strategies.push_back(strategy_from_json(s, c.frame));
    }
    if (j.contains("network")) {
      const json& n = j.at("network");
      auto& src = c.network;
      read_optional(n, "typed_edges", src.typed_edges);
      read_optional(n, "untyped_edges", src.untyped_edges);
      read_optional(n, "node_params", src.node_params);
      read_optional(n, "nodes", src.generate_nodes);
      read_optional(n, "edges", src.generate_edges);
      read_optional(n, "seed", src.generate_seed);
      read_optional(n, "link_type_weights", src.link_type_weights);
      read_optional(n, "link_type_seed", src.link_type_seed);
      read_optional(n, "relay_probability", src.relay_probability);
      read_optional(n, "tendency_min", src.tendency_min);
      read_optional(n, "tendency_max", src.tendency_max);
      read_optional(n, "params_seed", src.params_seed);
    }
    read_optional(j, "noise_rates", c.noise_rates);
    if (j.contains("noise_mode")) {
      const auto mode = j.at("noise_mode").get<std::string>();
      if (mode == "multiplicative") {
        c.noise_mode = NoiseMode::Multiplicative;
      } else if (mode == "additive") {
        c.noise_mode = NoiseMode::Additive;
      } else {
        throw InputError("config: unknown noise_mode '" + mode + "'");
      }
    }
    read_optional(j, "noisy_test", c.noisy_test);
    read_optional(j, "levels", c.levels);
    read_optional(j, "train_size", c.train_size);
    read_optional(j, "test_size", c.test_size);
    read_optional(j, "repetitions", c.repetitions);
    read_optional(j, "seed", c.seed);
    if (j.contains("predictor")) {
      const auto p = j.at("predictor").get<std::string>();
      if (p == "nearest_profile") {
        c.predictor = Predictor::NearestProfile;
      } else if (p == "uniform_random") {
        c.predictor = Predictor::UniformRandom;
      } else {
        throw InputError("config: unknown predictor '" + p + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  auto in = csv::open_input(path);
  ExperimentConfig c = parse_config(in);
  const auto base = std::filesystem::path(path).parent_path();
  resolve_relative(c.network.typed_edges, base);
  resolve_relative(c.network.untyped_edges, base);
  resolve_relative(c.network.node_params, base);
  return c;
}

void write_config(const ExperimentConfig& c, std::ostream& out) {
  nlohmann::ordered_json j;
  auto& n = j["network"];
  const auto& src = c.network;
  auto opt = [](const auto& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
  n["typed_edges"] = opt(src.typed_edges);
  n["untyped_edges"] = opt(src.untyped_edges);
  n["node_params"] = opt(src.node_params);
  n["nodes"] = src.generate_nodes;
  n["edges"] = src.generate_edges;
  n["seed"] = opt(src.generate_seed);
  n["link_type_weights"] = src.link_type_weights;
  n["link_type_seed"] = opt(src.link_type_seed);
  n["relay_probability"] = src.relay_probability;
  n["tendency_min"] = src.tendency_min;
  n["tendency_max"] = src.tendency_max;
  n["params_seed"] = opt(src.params_seed);
  j["frame"] = c.frame.labels();
  auto& strategies = j["strategies"] = nlohmann::ordered_json::array();
  for (const auto& s : c.strategies) {
    const auto& p = s.proportions();
    strategies.push_back({{"name", s.name()},
                          {"proportions", std::vector<double>(p.data(), p.data() + p.size())}});
  }
  j["noise_rates"] = c.noise_rates;
  j["noise_mode"] = noise_mode_name(c.noise_mode);
  j["noisy_test"] = c.noisy_test;
  j["levels"] = c.levels;
  j["train_size"] = c.train_size;
  j["test_size"] = c.test_size;
  j["repetitions"] = c.repetitions;
  j["seed"] = c.seed;
  j["predictor"] = predictor_name(c.predictor);
  out << j.dump(2) << '\n';
}

PropagationStrategy read_strategy(std::istream& in, const Frame& frame) {
  try {
    return strategy_from_json(json::parse(in), frame);
  } catch (const json::exception& e) {
    throw InputError(std::string("strategy: ") + e.what());
  }
}

PropagationStrategy apply_noise(const PropagationStrategy& base, double noise_rate,
                                const std::vector<int>& signs, NoiseMode mode) {
  if (!(noise_rate >= 0.0 && noise_rate <= 1.0)) throw InputError("noise rate must lie in [0,1]");
  if (signs.size() != base.frame().size()) throw InputError("one noise sign per link type expected");
  if (noise_rate == 0.0) return base;
  Eigen::VectorXd p = base.proportions();
  for (Eigen::Index t = 0; t < p.size(); ++t) {
    const double s = signs[static_cast<std::size_t>(t)] >= 0 ? 1.0 : -1.0;
    const double delta = mode == NoiseMode::Multiplicative ? noise_rate * p(t) : noise_rate;
    p(t) = std::clamp(p(t) + s * delta, 0.0, 1.0);
  }
  const double total = p.sum();
  // Every component clamped away: nothing left to renormalize.
  if (total <= 0.0) return base;
  return PropagationStrategy(base.name(), base.frame(), p / total);
}

PropagationStrategy make_noisy_strategy(const PropagationStrategy& base, double noise_rate,
                                        std::mt19937_64& rng, NoiseMode mode) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> signs(base.frame().size());
  for (auto& s : signs) s = coin(rng) ? 1 : -1;
  return apply_noise(base, noise_rate, signs, mode);
}

HeteroNetwork build_network(const ExperimentConfig& config) {
  const auto& src = config.network;
  NodeParamDefaults defaults{src.relay_probability, src.tendency_min, src.tendency_max,
                             derived(src.params_seed, config.seed, "node-params")};
  if (src.typed_edges) {
    return load_edge_list(*src.typed_edges, config.frame, src.node_params, defaults);
  }
  UntypedGraph g = src.untyped_edges
                       ? load_untyped_edges(*src.untyped_edges)
                       : random_digraph(src.generate_nodes, src.generate_edges,
                                        derived(src.generate_seed, config.seed, "network"));
  std::vector<double> weights = src.link_type_weights;
  if (weights.empty()) weights.assign(config.frame.size(), 1.0);
  HeteroNetwork typed = assign_random_link_types(
      g, config.frame, weights, derived(src.link_type_seed, config.seed, "link-types"), defaults);
  if (!src.node_params) return typed;

  // Explicit node parameters override the drawn defaults.
  std::ostringstream edges;
  write_edge_list(typed, edges);
  std::istringstream edges_in(edges.str());
  auto params = csv::open_input(*src.node_params);
  return read_edge_list(edges_in, config.frame, &params, defaults);
}

std::vector<PropagationTrace> generate_dataset(const HeteroNetwork& net,
                                               const ExperimentConfig& config,
                                               const PropagationStrategy& base, std::size_t count,
                                               const DatasetKey& key) {
  std::vector<PropagationTrace> traces;
  if (count == 0) return traces;
  const auto sources = eligible_sources(net);
  if (sources.empty()) throw InputError("network has no node with an outgoing edge");
  const bool noisy = key.role == Role::Train || config.noisy_test;
  traces.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    traces.push_back(simulate_one(net, sources, config, base, noisy, i, key));
  }
  return traces;
}

const char* to_string(ClassifierKind kind) { return kind == ClassifierKind::Prob ? "prob" : "bba"; }

const PccCell& PccReport::at(double noise_rate, ClassifierKind classifier, std::size_t level) const {
  for (const auto& c : cells) {
    if (c.noise_rate == noise_rate && c.classifier == classifier && c.level == level) return c;
  }
  throw InputError("report has no cell for the requested noise rate, classifier and level");
}

double ci95_halfwidth(const std::vector<double>& samples) {
  if (samples.size() < 2) return 0.0;
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  return 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

PccReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_experiment(config, build_network(config));
}

PccReport run_experiment(const ExperimentConfig& config, const HeteroNetwork& net) {
  config.validate();
  if (!(net.frame() == config.frame)) throw InputError("network frame differs from the config frame");
  const std::size_t classes = config.strategies.size();
  const std::size_t levels = config.levels;
  const auto sources = eligible_sources(net);
  if (sources.empty()) throw InputError("network has no node with an outgoing edge");

  PccReport report;
  for (double noise : config.noise_rates) {
    // per_rep[classifier][level][rep]
    std::vector<std::vector<std::vector<double>>> per_rep(
        2, std::vector<std::vector<double>>(levels));
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
      std::vector<LevelProfile> models;
      for (const auto& s : config.strategies) {
        const auto traces =
            generate_dataset(net, config, s, config.train_size, {Role::Train, rep, noise});
        models.push_back(learn_profile(s.name(), traces, config.frame, levels));
      }
      const ProfileClassifier classifier(std::move(models));

      std::vector<std::vector<std::size_t>> correct(2, std::vector<std::size_t>(levels, 0));
      const bool noisy = config.noisy_test;
      for (std::size_t i = 0; i < config.test_size; ++i) {
        std::mt19937_64 label_rng(
            SeedHasher(config.seed).add(std::string_view("test-label")).add(std::uint64_t{i})
                .add(std::uint64_t{rep}).add(noise).value());
        const std::size_t truth = std::uniform_int_distribution<std::size_t>(0, classes - 1)(label_rng);
        const auto trace = simulate_one(net, sources, config, config.strategies[truth], noisy, i,
                                        {Role::Test, rep, noise});
        if (config.predictor == Predictor::UniformRandom) {
          std::uniform_int_distribution<std::size_t> guess(0, classes - 1);
          for (std::size_t l = 0; l < levels; ++l) {
            correct[0][l] += guess(label_rng) == truth ? 1 : 0;
            correct[1][l] += guess(label_rng) == truth ? 1 : 0;
          }
          continue;
        }
        const auto result = classifier.classify(trace);
        for (std::size_t l = 0; l < levels; ++l) {
          correct[0][l] += result.levels[l].prob_class == truth ? 1 : 0;
          correct[1][l] += result.levels[l].bba_class == truth ? 1 : 0;
        }
      }
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < levels; ++l) {
          per_rep[k][l].push_back(100.0 * static_cast<double>(correct[k][l]) /
                                  static_cast<double>(config.test_size));
        }
      }
    }
    for (std::size_t k = 0; k < 2; ++k) {
      for (std::size_t l = 0; l < levels; ++l) {
        const auto& samples = per_rep[k][l];
        PccCell cell;
        cell.noise_rate = noise;
        cell.classifier = k == 0 ? ClassifierKind::Prob : ClassifierKind::Bba;
        cell.level = l + 1;
        cell.mean_pcc = std::accumulate(samples.begin(), samples.end(), 0.0) /
                        static_cast<double>(samples.size());
        cell.ci95_halfwidth = ci95_halfwidth(samples);
        cell.per_repetition = samples;
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

void write_report(const PccReport& report, std::ostream& out) {
  out << "noise_rate,classifier,level,mean_pcc,ci95_halfwidth,repetitions\n";
  std::ostringstream row;
  row << std::fixed << std::setprecision(4);
  for (const auto& c : report.cells) {
    row.str("");
    row << c.noise_rate << ',' << to_string(c.classifier) << ',' << c.level << ',' << c.mean_pcc
        << ',' << c.ci95_halfwidth << ',' << c.per_repetition.size() << '\n';
    out << row.str();
  }
}

void emit_report(const PccReport& report, const std::string& path) {
  auto out = csv::open_output(path);
  write_report(report, out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace evprop
