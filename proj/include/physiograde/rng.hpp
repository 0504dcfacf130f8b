#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace physio {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seeds for independent units (repetitions, folds, trees) are derived from
/// indices so results never depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    return splitmix64(base ^ splitmix64(salt + 0x632BE59BD9B4E019ull));
}

/// mt19937_64 engine with hand-rolled distributions. The standard specifies
/// the engine's output sequence exactly; std::*_distribution do not have a
/// pinned algorithm, so they are avoided for reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi], both inclusive.
    int uniform_int(int lo, int hi) {
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }

    /// Box-Muller without the cached spare draw.
    double normal(double mean, double stddev) {
        double u1 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = std::size_t(uniform_int(0, int(i) - 1));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace physio
