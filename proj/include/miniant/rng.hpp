#ifndef MINIANT_RNG_HPP
#define MINIANT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace miniant {

// Bit-mixer used to derive independent substream seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded generator with a pinned uint64 -> double conversion so that every
// draw is reproducible bit-for-bit from the seed alone. std::mt19937_64 is
// fully specified by the standard; the distributions below avoid
// std::uniform_real_distribution and friends, whose output is not.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derives the generator for substream `stream` of `seed` (per-tree,
    // per-fold, ... streams that stay deterministic under reordering).
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(seed ^ splitmix64(stream + 1));
    }
    static Rng substream(std::uint64_t seed, std::uint64_t stream) {
        return Rng(derive_seed(seed, stream));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1); zero draws are rejected (log(1/u) must stay finite).
    double uniform_open() {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return u;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Modulo bias is < 2^-53 for any n used here.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    bool coin() { return (next_u64() & 1ULL) != 0; }

    // Standard normal via Box-Muller on the pinned uniform source.
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace miniant

#endif
