#ifndef EVPROP_LEARNING_HPP
#define EVPROP_LEARNING_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "evprop/belief.hpp"
#include "evprop/propagation.hpp"

namespace evprop {

/// Learned per-level description of one message class.
///
/// `counts` holds accrued receiver counts (rows: link types, column l-1:
/// level l) and is the source of truth; `probs` and `bbas` are derived from
/// it, which lets profiles learned from disjoint trace sets be merged
/// exactly by adding counts.
struct LevelProfile {
  std::string class_name;
  Frame frame;
  CountMatrix counts;
  std::vector<ProbDistribution> probs;
  std::vector<MassFunction> bbas;

  std::size_t levels() const { return probs.size(); }
};

/// Sum of trace_level_counts over the traces, padded to `levels` columns.
/// Throws InputError on a frame mismatch or an event beyond `levels`.
CountMatrix count_effectives(const std::vector<PropagationTrace>& traces, const Frame& frame,
                             std::size_t levels);

/// Running sum along levels.
CountMatrix accrue(const CountMatrix& raw);

/// Inverse of accrue.
CountMatrix difference(const CountMatrix& accrued);

/// Normalizes each level of accrued counts (uniform when a level is empty)
/// and maps it through the consonant transform.
LevelProfile to_profile(std::string class_name, const Frame& frame, const CountMatrix& accrued);

/// count_effectives -> accrue -> to_profile.
LevelProfile learn_profile(std::string class_name, const std::vector<PropagationTrace>& traces,
                           const Frame& frame, std::size_t levels);

/// Profile JSON: {class_name, frame, levels, counts, probs, bbas}.
void write_profile(const LevelProfile& profile, std::ostream& out);
void save_profile(const LevelProfile& profile, const std::string& path);
/// Counts are authoritative; stored probs and bbas must agree with them.
LevelProfile read_profile(std::istream& in);
LevelProfile load_profile(const std::string& path);

}  // namespace evprop

#endif  // EVPROP_LEARNING_HPP
