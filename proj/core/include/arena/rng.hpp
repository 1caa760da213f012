#pragma once

#include <boost/random/normal_distribution.hpp>

#include <cstdint>
#include <random>

namespace arena {

/// SplitMix64 finalizer; used to decorrelate consecutive integer seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `stream` (1 = prey noise, 2 = predator noise, ...) of the
/// path with index `path_index` in a run started at `seed_base`.
constexpr std::uint64_t derive_seed(std::uint64_t seed_base, std::uint64_t path_index,
                                    std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed_base + path_index) ^ (stream * 0xd1b54a32d192ed03ULL));
}

/// Deterministic stream of standard normal variates (ziggurat sampler).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double operator()() { return dist_(engine_); }

 private:
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace arena
