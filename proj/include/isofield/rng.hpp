#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace isofield::rng {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stateless counter-based stream. Every draw is a pure function of
// (seed, id0..id3, counter), so neither sampling order nor thread layout
// can change the output.
class stream {
 public:
  explicit stream(std::uint64_t seed, std::uint64_t id0 = 0,
                  std::uint64_t id1 = 0, std::uint64_t id2 = 0,
                  std::uint64_t id3 = 0) {
    std::uint64_t k = mix64(seed ^ 0x1905f4ee5c34bcadULL);
    k = mix64(k ^ id0);
    k = mix64(k ^ id1);
    k = mix64(k ^ id2);
    key_ = mix64(k ^ id3);
  }

  std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ ^ mix64(counter));
  }

  // uniform in (0, 1]
  double uniform(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1p-53;
  }

  // pair of independent standard normals (Box-Muller)
  std::pair<double, double> normal_pair(std::uint64_t counter) const noexcept {
    const double u1 = uniform(2 * counter);
    const double u2 = uniform(2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  double normal(std::uint64_t counter) const noexcept {
    return normal_pair(counter).first;
  }

 private:
  std::uint64_t key_;
};

}  // namespace isofield::rng
