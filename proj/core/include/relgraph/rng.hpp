#pragma once

#include <cstdint>
#include <vector>

namespace relgraph {

// Self-contained generator so that seeded runs are byte-identical across
// platforms and standard-library versions (std::shuffle and
// std::uniform_int_distribution are implementation-defined).

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded via splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, bound), bound > 0; rejection sampling, no modulo bias
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t hash = 0xcbf29ce484222325ULL) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

// Named sub-stream of a master seed: one --seed flag reproduces a full run
// while samplers, initialization, shuffling and negative draws stay
// statistically independent.
inline std::uint64_t substream(std::uint64_t seed, const char* name) {
    std::size_t len = 0;
    while (name[len] != '\0') ++len;
    std::uint64_t s = seed ^ fnv1a64(name, len);
    return splitmix64(s);
}

// Per-node stream: determinism independent of thread scheduling.
inline std::uint64_t substream(std::uint64_t seed, const char* name,
                               std::uint64_t index) {
    std::uint64_t s = substream(seed, name) ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
}

}  // namespace relgraph
