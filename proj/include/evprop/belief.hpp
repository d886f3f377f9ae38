#ifndef EVPROP_BELIEF_HPP
#define EVPROP_BELIEF_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "evprop/frame.hpp"

namespace evprop {

inline constexpr double kTolerance = 1e-9;

/// Probability distribution over the elements of a frame.
class ProbDistribution {
 public:
  ProbDistribution() = default;
  /// Throws InputError unless values has one entry per element, each in
  /// [0,1], summing to 1 within kTolerance.
  ProbDistribution(Frame frame, Eigen::VectorXd values);

  static ProbDistribution uniform(Frame frame);
  static ProbDistribution indicator(Frame frame, std::size_t element);

  const Frame& frame() const { return frame_; }
  const Eigen::VectorXd& values() const { return values_; }
  double operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }

 private:
  Frame frame_;
  Eigen::VectorXd values_;
};

/// Basic belief assignment, stored sparsely by focal set.
///
/// Construction only rejects subsets that fall outside the frame; the
/// remaining invariants (range, unit sum, empty-set mass) are checked by
/// validate() so that malformed assignments can still be diagnosed.
class MassFunction {
 public:
  using Masses = std::map<Subset, double>;

  MassFunction() = default;
  MassFunction(Frame frame, Masses masses);

  static MassFunction vacuous(Frame frame);
  static MassFunction categorical(Frame frame, Subset focal);

  const Frame& frame() const { return frame_; }
  const Masses& focal_sets() const { return masses_; }
  double mass(Subset s) const;

  /// Dense vector indexed by subset bitmask, length 2^n.
  Eigen::VectorXd dense() const;

 private:
  Frame frame_;
  Masses masses_;
};

/// Jaccard similarity between subsets, indexed by bitmask.
class SimilarityMatrix {
 public:
  SimilarityMatrix(Frame frame, Eigen::MatrixXd entries)
      : frame_(std::move(frame)), entries_(std::move(entries)) {}

  const Frame& frame() const { return frame_; }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(Subset a, Subset b) const { return entries_(a, b); }

 private:
  Frame frame_;
  Eigen::MatrixXd entries_;
};

/// Empty optional when every mass-function invariant holds, otherwise a
/// description of the first violated one.
std::optional<std::string> validate(const MassFunction& m);

/// Consonant BBA whose pignistic transform is p. Elements are ranked by
/// decreasing probability (stable on frame order) and the k-th nested set
/// receives k times the gap to the next probability.
MassFunction consonant_transform(const ProbDistribution& p);

/// Pignistic probability: each focal mass is shared equally by its elements.
ProbDistribution pignistic(const MassFunction& m);

/// True when the focal sets form a chain under inclusion.
bool is_consonant(const MassFunction& m);

/// D(A,B) = |A n B| / |A u B|, with D(0,0) = 1 and D(0,B) = 0.
SimilarityMatrix build_similarity_matrix(const Frame& frame);

double euclidean_distance(const ProbDistribution& p1, const ProbDistribution& p2);

double jousselme_distance(const MassFunction& m1, const MassFunction& m2,
                          const SimilarityMatrix& d);

/// Jousselme distance on dense mass vectors. Usable with any Eigen
/// expressions of matching size.
template <typename DerivedA, typename DerivedB, typename DerivedD>
typename DerivedA::Scalar jousselme_distance(const Eigen::MatrixBase<DerivedA>& m1,
                                             const Eigen::MatrixBase<DerivedB>& m2,
                                             const Eigen::MatrixBase<DerivedD>& d) {
  using Scalar = typename DerivedA::Scalar;
  const auto diff = (m1 - m2).eval();
  const Scalar q = diff.dot(d * diff) / Scalar(2);
  // The quadratic form is PSD; clamp round-off below zero.
  return std::sqrt(std::max(q, Scalar(0)));
}

}  // namespace evprop

#endif  // EVPROP_BELIEF_HPP
