#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ctrlplace {

/// splitmix64 finalizer. Derives independent sub-seeds from one root seed so
/// that every component of a run draws from its own stream.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

/// Deterministic random source. The engine is mt19937_64 (fully specified by
/// the standard) and all bounded sampling is implemented here instead of
/// using std::uniform_*_distribution, whose output is implementation-defined.
/// Identical seeds therefore produce identical sequences on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Unbiased uniform draw in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit();

    bool bernoulli(double p) { return unit() < p; }

    /// k distinct values from [0, n), sorted ascending.
    std::vector<int> sample_distinct(int k, int n);

private:
    std::mt19937_64 engine_;
};

} // namespace ctrlplace
