#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace sptk {

// mt19937_64 output is fixed by the standard; the distributions in <random>
// are not, so index draws and shuffles are done by hand to keep seeded
// artifacts identical across standard libraries.
using Rng = std::mt19937_64;

// Uniform integer in [0, n) by rejection sampling. n must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // 2^64 mod n; draws above max - excess would bias the low residues.
  const std::uint64_t excess = (Rng::max() % n + 1) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (excess == 0 || x <= Rng::max() - excess) return x % n;
  }
}

// Uniform real in [0, 1) with 53 random bits.
inline double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace sptk
