#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace vrpsl {

// Seeded random stream with implementation-independent draw mappings, so that
// runs are reproducible across standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine(seed) {}

    std::uint64_t nextBits() { return engine(); }

    // Uniform integer in [lo, hi], inclusive.
    int uniformInt(int lo, int hi) {
        if (hi <= lo) return lo;
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(nextBits() % span);
    }

    // Uniform real in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(nextBits() >> 11) * 0x1.0p-53; }

    // Uniform real in [lo, hi]; returns lo exactly when the interval is degenerate.
    double uniform(double lo, double hi) {
        if (hi <= lo) return lo;
        return lo + uniform01() * (hi - lo);
    }

    bool chance(double p) { return uniform01() < p; }

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (int i = static_cast<int>(values.size()) - 1; i > 0; --i)
            std::swap(values[static_cast<std::size_t>(i)],
                      values[static_cast<std::size_t>(uniformInt(0, i))]);
    }

    // Draws k distinct indices from [0, n).
    std::vector<int> sampleWithoutReplacement(int n, int k) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k && i < n; ++i) {
            const int j = uniformInt(i, n - 1);
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out.push_back(pool[static_cast<std::size_t>(i)]);
        }
        return out;
    }

private:
    std::mt19937_64 engine;
};

} // namespace vrpsl
