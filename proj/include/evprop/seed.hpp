#ifndef EVPROP_SEED_HPP
#define EVPROP_SEED_HPP

#include <bit>
#include <cstdint>
#include <string_view>

namespace evprop {

/// Platform-stable hash for deriving child RNG seeds from structured keys.
/// Each mixed value passes through a splitmix64 finalizer, so keys that
/// differ in any component give unrelated streams.
class SeedHasher {
 public:
  explicit SeedHasher(std::uint64_t master) : state_(mix(master ^ 0x9e3779b97f4a7c15ULL)) {}

  SeedHasher& add(std::uint64_t v) {
    state_ = mix(state_ ^ mix(v + 0x632be59bd9b4e019ULL));
    return *this;
  }
  SeedHasher& add(double v) { return add(std::bit_cast<std::uint64_t>(v + 0.0)); }
  SeedHasher& add(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return add(h ^ s.size());
  }

  std::uint64_t value() const { return state_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace evprop

#endif  // EVPROP_SEED_HPP
