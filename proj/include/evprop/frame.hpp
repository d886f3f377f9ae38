#ifndef EVPROP_FRAME_HPP
#define EVPROP_FRAME_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace evprop {

/// Subset of a frame, bit i set <=> element i is a member.
using Subset = std::uint32_t;

/// Largest frame for which dense 2^n structures are built.
inline constexpr std::size_t kMaxFrameSize = 20;

/// Ordered set of distinct link-type labels. Element order fixes the subset
/// bit encoding. Copies share the label storage.
class Frame {
 public:
  Frame() = default;
  explicit Frame(std::vector<std::string> labels);

  /// Professional, Familial, Friendly, Undefined.
  static Frame default_link_types();

  std::size_t size() const { return labels_ ? labels_->size() : 0; }
  bool empty() const { return size() == 0; }
  const std::string& label(std::size_t i) const { return labels_->at(i); }
  const std::vector<std::string>& labels() const;

  std::optional<std::size_t> index_of(const std::string& label) const;
  /// Same as index_of but throws InputError for an unknown label.
  std::size_t require_index(const std::string& label) const;

  Subset full_set() const;
  /// Number of subsets, 2^n.
  std::size_t power_set_size() const { return std::size_t{1} << size(); }

  /// "{Professional,Friendly}" style rendering of a subset.
  std::string format(Subset s) const;

  friend bool operator==(const Frame& a, const Frame& b);

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

inline Subset singleton(std::size_t i) { return Subset{1} << i; }

inline int cardinality(Subset s) { return __builtin_popcount(s); }

}  // namespace evprop

#endif  // EVPROP_FRAME_HPP
