#pragma once

#include <cstdint>

namespace parlearn {

// splitmix64; self-contained so generated benchmarks are byte-identical
// across platforms and standard library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n must be positive.
    uint64_t below(uint64_t n) {
        // Rejection sampling over the top bias range keeps it unbiased.
        uint64_t threshold = -n % n;
        while (true) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform in [lo, hi], inclusive.
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1))); }

private:
    uint64_t state_;
};

}  // namespace parlearn
