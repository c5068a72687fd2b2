#pragma once

#include <cstdint>

namespace radlab {

// Counter-based uniform stream: every draw is a pure function of
// (seed, c1, c2, c3), so parallel consumers stay reproducible.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    // Uniform in the open interval (0, 1).
    double uniform(std::uint64_t c1, std::uint64_t c2 = 0, std::uint64_t c3 = 0) const {
        const std::uint64_t h = hash(c1, c2, c3);
        return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t hash(std::uint64_t c1, std::uint64_t c2 = 0, std::uint64_t c3 = 0) const {
        std::uint64_t h = mix(seed_ ^ 0x9e3779b97f4a7c15ull);
        h = mix(h ^ c1);
        h = mix(h ^ c2);
        h = mix(h ^ c3);
        return h;
    }

    std::uint64_t seed() const { return seed_; }

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t seed_;
};

// Seed for an independent replica stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replica) {
    return CounterRng::mix(CounterRng::mix(seed) ^ replica);
}

}  // namespace radlab
