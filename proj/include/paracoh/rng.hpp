#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace paracoh {

// Seeded generator with platform-independent index draws and shuffles.
// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so results would differ across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace paracoh
