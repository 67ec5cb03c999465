#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace kmodes {

/// Deterministic random stream used by the seeded initialisers.
///
/// All sampling helpers are built directly on the raw 64-bit output of
/// std::mt19937_64, whose sequence is fully specified by the standard.
/// std::*_distribution adaptors are avoided on purpose: their output may
/// differ between standard library implementations, and results here must
/// be reproducible across builds for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Independent stream for (seed, label). Different labels (e.g. "huang",
  /// "matching") give unrelated sequences from the same user seed.
  static Rng stream(std::uint64_t seed, std::string_view label) {
    // FNV-1a over the label, folded into a seed_seq with the user seed.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : label) {
      h ^= c;
      h *= 1099511628211ull;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h),
                      static_cast<std::uint32_t>(h >> 32)};
    Rng r(0);
    r.gen_.seed(seq);
    return r;
  }

  std::uint64_t next() { return gen_(); }

  /// Unbiased integer in [0, n). Rejection sampling: draw again while the
  /// raw value falls in the truncated remainder band.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  /// Index drawn with probability weights[i] / sum(weights).
  std::size_t weighted(std::span<const std::int64_t> weights) {
    std::int64_t total = 0;
    for (std::int64_t w : weights) total += w;
    std::int64_t t = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(total)));
    for (std::size_t i = 0; i < weights.size(); ++i) {
      t -= weights[i];
      if (t < 0) return i;
    }
    return weights.size() - 1;  // unreachable for positive total
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace kmodes
