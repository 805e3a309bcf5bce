#ifndef EPISIS_RNG_HPP
#define EPISIS_RNG_HPP

#include <cstdint>

namespace episis {

// Counter-based deterministic random numbers (splitmix64 finalizer).
// Streams are keyed, not seeded-and-advanced: the value for (key, counter)
// never depends on how many draws happened before, so schedule windows and
// simulation replicates stay reproducible under any execution order.

inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t key, std::uint64_t counter)
{
    return mix64(mix64(key) ^ mix64(counter * 0x9e3779b97f4a7c15ULL + 1));
}

// 53-bit mantissa draw in [0, 1).
inline double to_unit(std::uint64_t bits)
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double unit_draw(std::uint64_t key, std::uint64_t counter)
{
    return to_unit(mix64(key, counter));
}

// Sequential stream view over the counter space; satisfies
// UniformRandomBitGenerator but we avoid std distributions on it
// (their output is implementation-defined).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key, std::uint64_t start = 0) : key_(key), counter_(start) {}

    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }
    result_type operator()() { return mix64(key_, counter_++); }

    double next_unit() { return to_unit((*this)()); }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound)
    {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace episis

#endif
