#include "evprop/classify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"

#include "evprop/error.hpp"

namespace evprop {

namespace {

std::vector<LevelProfile> checked(std::vector<LevelProfile> models) {
  if (models.size() < 2) throw InputError("classification needs at least two class profiles");
  const auto& first = models.front();
  for (const auto& m : models) {
    if (!(m.frame == first.frame)) {
      throw InputError("profile '" + m.class_name + "' frame differs from '" + first.class_name + "'");
    }
    if (m.levels() != first.levels() || m.levels() == 0) {
      throw InputError("profile '" + m.class_name + "' level count differs from '" +
                       first.class_name + "'");
    }
  }
  return models;
}

}  // namespace

std::pair<std::size_t, bool> arg_min_with_tie(const std::vector<double>& distances) {
  const double lowest = *std::min_element(distances.begin(), distances.end());
  std::size_t chosen = distances.size();
  std::size_t within = 0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (distances[i] <= lowest + kTieTolerance) {
      if (chosen == distances.size()) chosen = i;
      ++within;
    }
  }
  return {chosen, within > 1};
}

ProfileClassifier::ProfileClassifier(std::vector<LevelProfile> models)
    : models_(checked(std::move(models))), similarity_(build_similarity_matrix(models_.front().frame)) {}

ClassificationResult ProfileClassifier::classify(const LevelProfile& observed) const {
  if (!(observed.frame == frame())) throw InputError("trace frame does not match the profiles");
  if (observed.levels() != levels()) {
    throw InputError("trace has " + std::to_string(observed.levels()) + " levels, profiles have " +
                     std::to_string(levels()));
  }
  ClassificationResult result;
  for (const auto& m : models_) result.class_names.push_back(m.class_name);
  result.levels.resize(levels());
  for (std::size_t l = 0; l < levels(); ++l) {
    LevelDecision& d = result.levels[l];
    const Eigen::VectorXd observed_mass = observed.bbas[l].dense();
    for (const auto& m : models_) {
      d.prob_distances.push_back(euclidean_distance(observed.probs[l], m.probs[l]));
      d.bba_distances.push_back(
          jousselme_distance(observed_mass, m.bbas[l].dense(), similarity_.entries()));
    }
    std::tie(d.prob_class, d.prob_tie) = arg_min_with_tie(d.prob_distances);
    std::tie(d.bba_class, d.bba_tie) = arg_min_with_tie(d.bba_distances);
  }
  return result;
}

ClassificationResult ProfileClassifier::classify(const PropagationTrace& trace) const {
  if (trace.iterations != levels()) {
    throw InputError("trace ran " + std::to_string(trace.iterations) + " iterations, profiles have " +
                     std::to_string(levels()) + " levels");
  }
  return classify(learn_profile(trace.strategy_name, {trace}, frame(), levels()));
}

ClassificationResult classify(const PropagationTrace& trace, const std::vector<LevelProfile>& models) {
  return ProfileClassifier(models).classify(trace);
}

void write_result(const ClassificationResult& result, std::ostream& out) {
  nlohmann::ordered_json j;
  j["classes"] = result.class_names;
  auto& levels = j["levels"] = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < result.levels.size(); ++l) {
    const auto& d = result.levels[l];
    nlohmann::ordered_json row;
    row["level"] = l + 1;
    row["prob_class"] = result.class_names[d.prob_class];
    row["bba_class"] = result.class_names[d.bba_class];
    row["prob_tie"] = d.prob_tie;
    row["bba_tie"] = d.bba_tie;
    row["prob_distances"] = d.prob_distances;
    row["bba_distances"] = d.bba_distances;
    levels.push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

}  // namespace evprop
