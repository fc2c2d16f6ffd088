#ifndef QFIB_RNG_HPP
#define QFIB_RNG_HPP

#include <cstdint>
#include <string_view>

namespace qfib {

/// Deterministic splittable generator (splitmix64). All randomness in the
/// library flows from an explicit seed through this type; no wall clock or
/// environment entropy is ever read, so runs are reproducible byte for byte.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [lo, hi] (inclusive).
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Independent stream derived from this seed and a label.
    Rng split(std::string_view label) const {
        std::uint64_t h = state_ ^ 0x517cc1b727220a95ULL;
        for (char c : label) {
            h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
            h *= 0x100000001b3ULL;
        }
        return Rng(h);
    }

  private:
    std::uint64_t state_;
};

}  // namespace qfib

#endif
