#include "evprop/belief.hpp"

#include <numeric>
#include <sstream>
#include <vector>

#include "evprop/error.hpp"

namespace evprop {

namespace {

// Dense 2^n x 2^n storage; 2^12 squared doubles is 128 MiB.
constexpr std::size_t kMaxDenseFrameSize = 12;

void require_same_frame(const Frame& a, const Frame& b, const char* what) {
  if (!(a == b)) throw InputError(std::string(what) + ": frame mismatch");
}

}  // namespace

ProbDistribution::ProbDistribution(Frame frame, Eigen::VectorXd values)
    : frame_(std::move(frame)), values_(std::move(values)) {
  if (frame_.empty()) throw InputError("probability distribution over an empty frame");
  if (static_cast<std::size_t>(values_.size()) != frame_.size()) {
    throw InputError("probability distribution has " + std::to_string(values_.size()) +
                     " values for a frame of size " + std::to_string(frame_.size()));
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    const double v = values_(i);
    if (!(v >= -kTolerance && v <= 1.0 + kTolerance)) {
      throw InputError("probability " + std::to_string(v) + " outside [0,1]");
    }
  }
  if (std::abs(values_.sum() - 1.0) > kTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << values_.sum() << ", expected 1";
    throw InputError(os.str());
  }
}

ProbDistribution ProbDistribution::uniform(Frame frame) {
  const auto n = static_cast<Eigen::Index>(frame.size());
  return ProbDistribution(std::move(frame), Eigen::VectorXd::Constant(n, 1.0 / n));
}

ProbDistribution ProbDistribution::indicator(Frame frame, std::size_t element) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(frame.size()));
  v(static_cast<Eigen::Index>(element)) = 1.0;
  return ProbDistribution(std::move(frame), std::move(v));
}

MassFunction::MassFunction(Frame frame, Masses masses) : frame_(std::move(frame)) {
  const Subset full = frame_.full_set();
  for (const auto& [set, value] : masses) {
    if ((set & ~full) != 0) {
      throw InputError("subset bitmask " + std::to_string(set) + " lies outside the frame");
    }
    if (value != 0.0) masses_.emplace(set, value);
  }
}

MassFunction MassFunction::vacuous(Frame frame) {
  const Subset full = frame.full_set();
  return MassFunction(std::move(frame), {{full, 1.0}});
}

MassFunction MassFunction::categorical(Frame frame, Subset focal) {
  return MassFunction(std::move(frame), {{focal, 1.0}});
}

double MassFunction::mass(Subset s) const {
  auto it = masses_.find(s);
  return it == masses_.end() ? 0.0 : it->second;
}

Eigen::VectorXd MassFunction::dense() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(frame_.power_set_size()));
  for (const auto& [set, value] : masses_) v(set) = value;
  return v;
}

std::optional<std::string> validate(const MassFunction& m) {
  if (m.frame().empty()) return "frame is empty";
  double total = 0.0;
  for (const auto& [set, value] : m.focal_sets()) {
    if (!(value > 0.0 && value <= 1.0 + kTolerance)) {
      return "mass " + std::to_string(value) + " on " + m.frame().format(set) +
             " is outside (0,1]";
    }
    total += value;
  }
  if (m.mass(0) != 0.0) {
    return "empty set carries mass " + std::to_string(m.mass(0));
  }
  if (std::abs(total - 1.0) > kTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "masses sum to " << total << ", expected 1";
    return os.str();
  }
  return std::nullopt;
}

MassFunction consonant_transform(const ProbDistribution& p) {
  const std::size_t n = p.frame().size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });

  MassFunction::Masses masses;
  Subset nested = 0;
  for (std::size_t k = 0; k < n; ++k) {
    nested |= singleton(order[k]);
    const double next = k + 1 < n ? p[order[k + 1]] : 0.0;
    const double gap = p[order[k]] - next;
    if (gap > 0.0) masses[nested] = static_cast<double>(k + 1) * gap;
  }
  return MassFunction(p.frame(), std::move(masses));
}

ProbDistribution pignistic(const MassFunction& m) {
  if (auto violation = validate(m)) throw InputError("pignistic: " + *violation);
  const std::size_t n = m.frame().size();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (const auto& [set, value] : m.focal_sets()) {
    const double share = value / cardinality(set);
    for (std::size_t i = 0; i < n; ++i) {
      if (set & singleton(i)) v(static_cast<Eigen::Index>(i)) += share;
    }
  }
  return ProbDistribution(m.frame(), std::move(v));
}

bool is_consonant(const MassFunction& m) {
  std::vector<Subset> sets;
  for (const auto& [set, value] : m.focal_sets()) sets.push_back(set);
  std::sort(sets.begin(), sets.end(),
            [](Subset a, Subset b) { return cardinality(a) < cardinality(b); });
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if ((sets[i - 1] & ~sets[i]) != 0) return false;
  }
  return true;
}

SimilarityMatrix build_similarity_matrix(const Frame& frame) {
  if (frame.size() > kMaxDenseFrameSize) {
    throw InputError("similarity matrix requested for a frame of size " +
                     std::to_string(frame.size()) + "; at most " +
                     std::to_string(kMaxDenseFrameSize) + " is supported");
  }
  const auto size = static_cast<Eigen::Index>(frame.power_set_size());
  Eigen::MatrixXd d(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    for (Eigen::Index b = 0; b < size; ++b) {
      const auto sa = static_cast<Subset>(a);
      const auto sb = static_cast<Subset>(b);
      const int uni = cardinality(sa | sb);
      d(a, b) = uni == 0 ? 1.0 : static_cast<double>(cardinality(sa & sb)) / uni;
    }
  }
  return SimilarityMatrix(frame, std::move(d));
}

double euclidean_distance(const ProbDistribution& p1, const ProbDistribution& p2) {
  require_same_frame(p1.frame(), p2.frame(), "euclidean_distance");
  return (p1.values() - p2.values()).norm();
}

double jousselme_distance(const MassFunction& m1, const MassFunction& m2,
                          const SimilarityMatrix& d) {
  require_same_frame(m1.frame(), m2.frame(), "jousselme_distance");
  require_same_frame(m1.frame(), d.frame(), "jousselme_distance");
  return jousselme_distance(m1.dense(), m2.dense(), d.entries());
}

}  // namespace evprop
