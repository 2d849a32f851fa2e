#pragma once

// Seeded randomness with a fully specified algorithm.
//
// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so every sampled quantity in the toolkit goes through this class instead:
//
//   engine    std::mt19937_64 seeded with the 64-bit seed (sequence fixed by
//             the standard)
//   index     uniform in [0, n): draw x, reject while x >= n * floor(2^64 / n),
//             return x % n
//   real      uniform in [0, 1): (x >> 11) * 2^-53
//   shuffle   Fisher-Yates from the back: for i = n-1 .. 1, swap(i, index(i+1))
//
// Any implementation following these four rules reproduces our samples.

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace storyscope {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    std::size_t index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("Rng::index: empty range");
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() / bound * bound;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return static_cast<std::size_t>(x % bound);
    }

    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = index(i);
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& items) { shuffle(std::span<T>(items)); }

    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        shuffle(order);
        return order;
    }

private:
    std::mt19937_64 engine_;
};

// Stable per-item seed derivation (seed + index, mixed through splitmix64 so
// neighbouring indices do not produce correlated mt19937 states).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + index + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace storyscope
