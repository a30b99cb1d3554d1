#pragma once

#include <cstdint>
#include <vector>

namespace metasel {

// Deterministic 64-bit generator (splitmix64 core). Used for every seeded
// decision in the pipeline so that identical seeds give identical bytes on
// any platform, independent of the standard library's distributions.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    // Derives an independent stream for (seed, index) pairs, e.g. one stream
    // per tree, per request, or per draw index.
    static Rng stream(uint64_t seed, uint64_t index) {
        Rng r(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
        r.next();
        return r;
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Multiply-shift bounding; bias is < 2^-53 for the
    // small n used here.
    uint64_t uniform_int(uint64_t n) {
        return static_cast<uint64_t>(uniform_double() * static_cast<double>(n)) % n;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform_double() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

}  // namespace metasel
