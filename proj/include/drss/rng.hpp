#ifndef DRSS_RNG_HPP
#define DRSS_RNG_HPP

#include <cstdint>
#include <vector>

namespace drss {

// SplitMix64 finalizer (Steele et al.). Used both as the per-stream
// generator step and as the hash for deriving substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Labels for independent random substreams. Every source of randomness in a
// run is a named substream of the root seed, which is what makes replay exact.
enum class Stream : std::uint64_t {
  PartySplit = 0x01,
  PartyMask = 0x02,
  Assignment = 0x03,
  Inputs = 0x04,
  BatchRun = 0x05,
  LeakageTrial = 0x06,
  Ring = 0x07,
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed ^ mix64(tag));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                    std::uint64_t index) {
  return mix64(derive_seed(seed, tag) ^ mix64(index));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream tag) {
  return derive_seed(seed, static_cast<std::uint64_t>(tag));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream tag,
                                    std::uint64_t index) {
  return derive_seed(seed, static_cast<std::uint64_t>(tag), index);
}

// Counter-based generator: the n-th output is a pure function of (seed, n),
// identical on every platform. Not cryptographic; masks drawn from it are
// uniform over the full 64-bit ring, which is all the masking scheme needs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection. bound must be nonzero.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = uniform_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace drss

#endif  // DRSS_RNG_HPP
