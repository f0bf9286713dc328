#pragma once

#include <cstdint>

namespace affdecomp {

// Counter-based generator: output i of stream s is a pure function of
// (seed, s, i), so parallel consumers get identical draws regardless of
// scheduling. SplitMix64 finalizer.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed, uint64_t stream = 0)
        : seed_(seed), stream_(stream), counter_(0) {}

    CounterRng split(uint64_t substream) const {
        return CounterRng(seed_, mix(stream_ * 0x9e3779b97f4a7c15ULL + substream + 1));
    }

    uint64_t next_u64() {
        uint64_t z = seed_ + mix(stream_) + 0x9e3779b97f4a7c15ULL * (++counter_);
        return mix(z);
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // uniform integer in [0, n)
    uint64_t below(uint64_t n) { return next_u64() % n; }

    int64_t integer(int64_t a, int64_t b) {  // inclusive range
        return a + static_cast<int64_t>(below(static_cast<uint64_t>(b - a + 1)));
    }

private:
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_;
};

}  // namespace affdecomp
