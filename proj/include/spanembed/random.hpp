#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <string_view>
#include <utility>

namespace spanembed {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Combines a base seed with integer coordinates and a stage label.
/// This is the documented trial-seed derivation: replaying a row only
/// needs (base seed, p index, trial index, label).
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords,
                                 std::string_view label) {
  std::uint64_t h = detail::splitmix64(base);
  for (std::uint64_t c : coords) h = detail::splitmix64(h ^ detail::splitmix64(c + 0x632be59bd9b4e019ULL));
  return detail::splitmix64(h ^ detail::fnv1a(label));
}

/// Seeded random stream. Same (seed, label) gives the same draws.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::string label = "main")
      : seed_(seed), label_(std::move(label)), engine_(derive_seed(seed, {}, label_)) {}

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }

  /// Independent child stream; does not advance this one.
  RandomSource derive(std::string_view sublabel) const {
    return RandomSource(seed_, label_ + "/" + std::string(sublabel));
  }

  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform integer in [lo, hi].
  template <class Int>
  Int uniform_int(Int lo, Int hi) {
    return std::uniform_int_distribution<Int>(lo, hi)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::string label_;
  std::mt19937_64 engine_;
};

}  // namespace spanembed
