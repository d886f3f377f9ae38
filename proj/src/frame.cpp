#include "evprop/frame.hpp"

#include <algorithm>
#include <set>

#include "evprop/error.hpp"

namespace evprop {

Frame::Frame(std::vector<std::string> labels) {
  if (labels.size() > kMaxFrameSize) {
    throw InputError("frame has " + std::to_string(labels.size()) +
                     " elements; at most " + std::to_string(kMaxFrameSize) + " are supported");
  }
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw InputError("frame labels must be non-empty");
    if (!seen.insert(l).second) throw InputError("duplicate frame label '" + l + "'");
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

Frame Frame::default_link_types() {
  static const Frame kDefault({"Professional", "Familial", "Friendly", "Undefined"});
  return kDefault;
}

const std::vector<std::string>& Frame::labels() const {
  static const std::vector<std::string> kNone;
  return labels_ ? *labels_ : kNone;
}

std::optional<std::size_t> Frame::index_of(const std::string& label) const {
  const auto& ls = labels();
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ls.begin());
}

std::size_t Frame::require_index(const std::string& label) const {
  if (auto i = index_of(label)) return *i;
  throw InputError("unknown link type '" + label + "'");
}

Subset Frame::full_set() const {
  return size() == 0 ? Subset{0} : static_cast<Subset>((std::uint64_t{1} << size()) - 1);
}

std::string Frame::format(Subset s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < size(); ++i) {
    if (s & singleton(i)) {
      if (!first) out += ',';
      out += label(i);
      first = false;
    }
  }
  return out + "}";
}

bool operator==(const Frame& a, const Frame& b) {
  return a.labels_ == b.labels_ || a.labels() == b.labels();
}

}  // namespace evprop
