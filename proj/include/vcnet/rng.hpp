#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>

namespace vcnet {

// All randomness used by the simulator flows through this wrapper.
// std::mt19937_64 has standard-mandated output, but the standard
// *distributions* do not, so the few draws we need (bounded integers,
// unit doubles, Poisson counts) are implemented here by hand. Given a
// seed, a run is therefore reproducible bit for bit on any platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) built from the top 53 bits of one draw.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in [0, n). Multiply-shift with rejection,
    /// so the result is exact rather than merely close to uniform.
    std::uint64_t next_below(std::uint64_t n) {
        assert(n > 0);
        unsigned __int128 product = static_cast<unsigned __int128>(next_u64()) * n;
        auto low = static_cast<std::uint64_t>(product);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
            while (low < threshold) {
                product = static_cast<unsigned __int128>(next_u64()) * n;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    /// Poisson draw by multiplying uniforms until the product falls below
    /// exp(-mean). Exact and fast for the small means this project uses.
    /// A non-positive mean returns 0 and consumes no randomness, which
    /// keeps otherwise-identical runs aligned when a rate is switched off.
    int next_poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        int count = -1;
        double product = 1.0;
        do {
            product *= next_unit();
            ++count;
        } while (product > limit);
        return count;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace vcnet
