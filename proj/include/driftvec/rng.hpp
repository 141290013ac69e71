#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace driftvec {

// All randomness in the library flows through these helpers on top of
// std::mt19937_64, which the standard pins bit-exactly. The std::uniform_*
// distributions are implementation-defined, so they are avoided: seeds must
// reproduce byte-identical outputs regardless of the standard library.

// Uniform draw in the open interval (0, 1).
inline double uniform_open01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle_vector(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

// Index sampled from an unnormalized discrete distribution given its running
// cumulative sums (cum.back() is the total mass).
inline std::size_t sample_cumulative(std::mt19937_64& rng, const std::vector<double>& cum) {
    const double u = uniform_open01(rng) * cum.back();
    std::size_t lo = 0, hi = cum.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cum[mid] <= u) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace driftvec
