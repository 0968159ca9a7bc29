#pragma once

#include <cstdint>
#include <random>

namespace permfsk {

// SplitMix64 finalizer. Used to derive well-separated per-trial seeds from a
// single master seed so that Monte Carlo results depend only on the master
// seed and the trial index, never on thread scheduling.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent random stream for one trial: mt19937_64 seeded with
// splitmix64(master ^ splitmix64(trial + 1)).
inline std::mt19937_64 trial_rng(std::uint64_t master_seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(master_seed ^ splitmix64(trial + 1)));
}

}  // namespace permfsk
