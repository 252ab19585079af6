#pragma once

#include <cstdint>
#include <initializer_list>

namespace degseq {

// SplitMix64: used for seeding and for hashing substream keys.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256** 1.0 (Blackman/Vigna), seeded through SplitMix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log() argument.
    double uniform01_open_low() { return double((next() >> 11) + 1) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

// Hash a tuple of words into a single substream seed. Every (seed, words...)
// tuple maps to its own generator, which is how replicates, graphs, and cells
// get independent reproducible streams.
inline std::uint64_t substream_key(std::uint64_t seed, std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = seed ^ 0xA0761D6478BD642FULL;
    SplitMix64 mixer(h);
    for (std::uint64_t w : words) {
        mixer.state ^= w + 0x9E3779B97F4A7C15ULL + (mixer.state << 6) + (mixer.state >> 2);
        h = mixer.next();
    }
    return h;
}

inline Xoshiro256 substream(std::uint64_t seed, std::initializer_list<std::uint64_t> words) {
    return Xoshiro256(substream_key(seed, words));
}

}  // namespace degseq
