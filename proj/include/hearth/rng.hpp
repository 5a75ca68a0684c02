#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace hearth {

inline constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based generator: output i is a pure hash of (key, i). No hidden
/// state besides the counter, so streams are reproducible on every host and
/// independent of the standard library's distribution implementations.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t key, std::uint64_t stream = 0)
        : key_(mix64(key ^ mix64(stream + 0x632BE59BD9B4E019ull)))
    {}

    constexpr std::uint64_t next_u64() { return mix64(key_ ^ mix64(counter_++)); }

    /// Uniform double in [0, 1) with 53 bits of resolution.
    constexpr double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    constexpr std::uint64_t below(std::uint64_t n)
    {
        if (n <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) return v % n;
        }
    }

    template <typename T>
    constexpr void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    constexpr std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// 64-bit FNV-1a, used for content hashes of frames and serialized state.
inline constexpr std::uint64_t fnv1a(const void* data, std::size_t size,
                                     std::uint64_t h = 0xcbf29ce484222325ull)
{
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace hearth
