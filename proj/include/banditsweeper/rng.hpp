// Seed derivation so that independent random streams (games, tie-breaks,
// stages, episodes) never share state.
#pragma once

#include <cstdint>
#include <random>

namespace banditsweeper {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class Stream : std::uint64_t { Game = 1, Decisions = 2 };

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stage,
                                    std::uint64_t episode, Stream stream) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ stage);
  h = splitmix64(h ^ episode);
  return splitmix64(h ^ static_cast<std::uint64_t>(stream));
}

}  // namespace banditsweeper
