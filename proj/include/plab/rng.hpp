#pragma once

#include <cstdint>

namespace plab {

/// splitmix64: a 64-bit seed plus a counter. Identical seeds give identical
/// sequences on every platform, which the report format relies on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish in [lo, hi]; modulo bias is irrelevant at these ranges.
    long int_in(long lo, long hi) {
        return lo + (long)(next() % (std::uint64_t)(hi - lo + 1));
    }

    bool coin() { return next() & 1; }

    /// k-sided die, 0..k-1.
    long pick(long k) { return (long)(next() % (std::uint64_t)k); }

private:
    std::uint64_t state_;
};

} // namespace plab
