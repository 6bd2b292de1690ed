#pragma once
#include <cstdint>

// Counter-based splittable RNG for quasistatic disorder draws. Sweeps derive one
// independent stream per (master_seed, cell, realization), so results do not depend
// on execution order or worker count, and are bit-identical across platforms
// (std::<random> distributions are implementation-defined; this is not).
namespace dtc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }

    // uniform double in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform double in [mean - width, mean + width]
    double uniform_in(double mean, double width) {
        return mean + width * (2.0 * uniform() - 1.0);
    }

  private:
    std::uint64_t state_;
};

// Hash-chains the components so that nearby (cell, realization) indices give
// statistically independent streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell,
                                 std::uint64_t realization) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= cell + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
    std::uint64_t b = splitmix64(s);
    s ^= realization + 0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2);
    return splitmix64(s);
}

}  // namespace dtc
