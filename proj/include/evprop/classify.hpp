#ifndef EVPROP_CLASSIFY_HPP
#define EVPROP_CLASSIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "evprop/belief.hpp"
#include "evprop/learning.hpp"

namespace evprop {

inline constexpr double kTieTolerance = 1e-12;

/// Nearest-profile decision at one propagation level, for both the
/// Euclidean (probabilistic) and Jousselme (evidential) classifiers.
struct LevelDecision {
  std::size_t prob_class = 0;
  std::size_t bba_class = 0;
  std::vector<double> prob_distances;
  std::vector<double> bba_distances;
  bool prob_tie = false;
  bool bba_tie = false;
};

struct ClassificationResult {
  std::vector<std::string> class_names;
  std::vector<LevelDecision> levels;  // levels[l-1] is level l

  const std::string& prob_class(std::size_t level) const {
    return class_names[levels.at(level - 1).prob_class];
  }
  const std::string& bba_class(std::size_t level) const {
    return class_names[levels.at(level - 1).bba_class];
  }
};

/// Index of the smallest distance (first on ties) and whether another
/// entry lies within kTieTolerance of it.
std::pair<std::size_t, bool> arg_min_with_tie(const std::vector<double>& distances);

/// Holds the class profiles and the shared similarity matrix.
class ProfileClassifier {
 public:
  /// Throws InputError for fewer than two models or a frame/level mismatch.
  explicit ProfileClassifier(std::vector<LevelProfile> models);

  const std::vector<LevelProfile>& models() const { return models_; }
  std::size_t levels() const { return models_.front().levels(); }
  const Frame& frame() const { return models_.front().frame; }

  ClassificationResult classify(const LevelProfile& observed) const;
  /// Learns the trace's own profile and classifies it.
  ClassificationResult classify(const PropagationTrace& trace) const;

 private:
  std::vector<LevelProfile> models_;
  SimilarityMatrix similarity_;
};

ClassificationResult classify(const PropagationTrace& trace, const std::vector<LevelProfile>& models);

/// Result JSON with per-level classes, distances and tie flags.
void write_result(const ClassificationResult& result, std::ostream& out);

}  // namespace evprop

#endif  // EVPROP_CLASSIFY_HPP
