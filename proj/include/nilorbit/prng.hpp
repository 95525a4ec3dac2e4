#pragma once

#include <cstdint>
#include <vector>

#include "nilorbit/rational.hpp"

namespace nilorbit {

/// SplitMix64. Chosen over std::mt19937 + distributions because the output
/// stream here must be identical across platforms and standard library
/// versions; seeded results are part of the reproducibility contract.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw from {-10,...,10} \ {0}: m in [0,20) maps to m+1 for
    /// m < 10 and -(m-9) otherwise.
    Rational nonzero_digit() {
        std::uint64_t m = next() % 20;
        long v = m < 10 ? static_cast<long>(m) + 1 : -(static_cast<long>(m) - 9);
        return Rational(v);
    }

    std::vector<Rational> nonzero_coords(std::size_t n) {
        std::vector<Rational> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(nonzero_digit());
        return out;
    }

  private:
    std::uint64_t state_;
};

} // namespace nilorbit
