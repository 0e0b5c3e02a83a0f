#pragma once

#include <cmath>
#include <cstdint>

namespace regen {

// Small deterministic generator (splitmix64 core). Byte-for-byte
// reproducible across platforms, unlike the std distributions.
// split() derives an independent stream, so parallel trials and their
// serial replay draw identical values.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint8_t byte() { return static_cast<std::uint8_t>(u64() & 0xff); }

    std::uint8_t nonzero_byte() {
        std::uint8_t b;
        do {
            b = byte();
        } while (b == 0);
        return b;
    }

    // Uniform in [0, n), n > 0. Rejection-free modulo is fine here: n is
    // tiny relative to 2^64, bias is < n/2^64.
    std::uint64_t below(std::uint64_t n) { return u64() % n; }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    // Exponential with the given mean.
    double exponential(double mean) { return -mean * std::log1p(-unit()); }

    Rng split(std::uint64_t tag) const {
        Rng child(state_ + 0x632be59bd9b4e019ULL * (tag + 1));
        child.u64();
        return child;
    }

  private:
    std::uint64_t state_;
};

}  // namespace regen
