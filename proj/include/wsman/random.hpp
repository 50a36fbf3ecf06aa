#ifndef WSMAN_RANDOM_HPP
#define WSMAN_RANDOM_HPP

#include <cstdint>
#include <limits>

namespace wsman {

/// SplitMix64: a Weyl-sequence counter passed through a fixed 64-bit mixer.
/// Output i depends only on (seed, i), so streams are reproducible on every
/// platform. `split(tag)` derives an independent stream for a named purpose.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  SplitMix64 split(std::uint64_t tag) const noexcept { return SplitMix64(mix(state_ ^ mix(tag + kGamma))); }

  /// Uniform in [0, bound) by rejection; bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    while (true) {
      const std::uint64_t x = (*this)();
      if (x >= threshold) return x % bound;
    }
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

}  // namespace wsman

#endif  // WSMAN_RANDOM_HPP
