#ifndef EVPROP_EXPERIMENT_HPP
#define EVPROP_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "evprop/classify.hpp"
#include "evprop/network.hpp"
#include "evprop/propagation.hpp"

namespace evprop {

enum class NoiseMode {
  /// p_t + s_t * rate * p_t
  Multiplicative,
  /// p_t + s_t * rate
  Additive,
};

enum class Predictor {
  NearestProfile,
  /// Uniform random label, a sanity baseline.
  UniformRandom,
};

enum class Role { Train, Test };

/// Where the experiment network comes from. Exactly one of typed_edges,
/// untyped_edges or the generator (the default) is used. Unset seeds are
/// derived from the experiment master seed.
struct NetworkSource {
  std::optional<std::string> typed_edges;
  std::optional<std::string> untyped_edges;
  std::optional<std::string> node_params;
  std::size_t generate_nodes = 97;
  std::size_t generate_edges = 350;
  std::optional<std::uint64_t> generate_seed;
  /// Empty means uniform.
  std::vector<double> link_type_weights;
  std::optional<std::uint64_t> link_type_seed;
  double relay_probability = 1.0;
  double tendency_min = 0.5;
  double tendency_max = 1.0;
  std::optional<std::uint64_t> params_seed;
};

struct ExperimentConfig {
  NetworkSource network;
  Frame frame = Frame::default_link_types();
  std::vector<PropagationStrategy> strategies;
  std::vector<double> noise_rates{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  NoiseMode noise_mode = NoiseMode::Multiplicative;
  bool noisy_test = true;
  std::size_t levels = 3;
  std::size_t train_size = 100;
  std::size_t test_size = 100;
  std::size_t repetitions = 10;
  std::uint64_t seed = 1;
  Predictor predictor = Predictor::NearestProfile;

  /// Defaults with the Spam / Professional / Familial strategies.
  static ExperimentConfig defaults();
  /// Throws InputError when an invariant does not hold.
  void validate() const;
};

/// Spam, Professional and Familial over the four default link types.
std::vector<PropagationStrategy> default_strategies();

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
void write_config(const ExperimentConfig& config, std::ostream& out);

/// Strategy JSON {name, proportions}; proportions follow frame order.
PropagationStrategy read_strategy(std::istream& in, const Frame& frame);

/// Perturbs each proportion up or down by the noise rate (relative or
/// absolute per mode), clamps to [0,1] and renormalizes. Rate 0 returns
/// the base unchanged.
PropagationStrategy make_noisy_strategy(const PropagationStrategy& base, double noise_rate,
                                        std::mt19937_64& rng,
                                        NoiseMode mode = NoiseMode::Multiplicative);

/// Same perturbation with explicit signs (+1 / -1 per link type).
PropagationStrategy apply_noise(const PropagationStrategy& base, double noise_rate,
                                const std::vector<int>& signs, NoiseMode mode);

/// Builds the network described by config.network.
HeteroNetwork build_network(const ExperimentConfig& config);

/// Identifies one cell of the experiment for seed derivation.
struct DatasetKey {
  Role role = Role::Train;
  std::size_t repetition = 0;
  double noise_rate = 0.0;
};

/// `count` traces of one class. Each trace gets freshly drawn noise, a
/// source drawn uniformly from nodes with out-degree >= 1, and its own seed
/// derived from (master seed, role, strategy, index, repetition, noise).
std::vector<PropagationTrace> generate_dataset(const HeteroNetwork& net,
                                               const ExperimentConfig& config,
                                               const PropagationStrategy& base, std::size_t count,
                                               const DatasetKey& key);

enum class ClassifierKind { Prob, Bba };
const char* to_string(ClassifierKind kind);

struct PccCell {
  double noise_rate = 0.0;
  ClassifierKind classifier = ClassifierKind::Prob;
  std::size_t level = 1;
  double mean_pcc = 0.0;
  double ci95_halfwidth = 0.0;
  std::vector<double> per_repetition;
};

struct PccReport {
  /// Ordered by (noise rate, classifier, level).
  std::vector<PccCell> cells;

  const PccCell& at(double noise_rate, ClassifierKind classifier, std::size_t level) const;
};

/// 1.96 * sample standard deviation / sqrt(n); 0 for a single sample.
double ci95_halfwidth(const std::vector<double>& samples);

PccReport run_experiment(const ExperimentConfig& config);
PccReport run_experiment(const ExperimentConfig& config, const HeteroNetwork& net);

/// CSV `noise_rate,classifier,level,mean_pcc,ci95_halfwidth,repetitions`.
void write_report(const PccReport& report, std::ostream& out);
void emit_report(const PccReport& report, const std::string& path);

}  // namespace evprop

#endif  // EVPROP_EXPERIMENT_HPP
