#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace phishdef {

// Seeded generator with hand-rolled draws. std::mt19937_64 output is fixed by
// the standard, so every artifact of a run (corpora, noise masks, solver
// permutations) is reproducible across platforms and compilers.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n). n == 0 yields 0.
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

    // Uniform integer in [lo, hi], inclusive.
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1))); }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    // Index drawn proportionally to non-negative weights.
    template <typename Weights>
    size_t weighted(const Weights& w) {
        double total = 0;
        size_t n = 0;
        for (double x : w) {
            total += x;
            ++n;
        }
        double r = uniform01() * total;
        size_t i = 0;
        for (double x : w) {
            if (r < x || i + 1 == n) return i;
            r -= x;
            ++i;
        }
        return n == 0 ? 0 : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace phishdef
