#ifndef NETCTL_RNG_HPP
#define NETCTL_RNG_HPP

#include <cstdint>
#include <random>

namespace netctl {

/// Seed plus stream id addressing one reproducible random stream. The same
/// (seed, stream) pair always yields the identical sample sequence, so
/// Monte Carlo workers can be given independent substreams by index.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::mt19937_64 make_engine() const {
        std::seed_seq seq{seed, stream, std::uint64_t{0x9e3779b97f4a7c15ull}};
        return std::mt19937_64(seq);
    }

    RngStream substream(std::uint64_t k) const {
        // splitmix64-style mix keeps distinct (stream, k) pairs apart
        std::uint64_t z = stream + 0x9e3779b97f4a7c15ull * (k + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return RngStream{seed, z ^ (z >> 31)};
    }
};

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace netctl

#endif
