#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace colorpin {

/// Deterministic generator behind every shuffle, decoy draw and Monte Carlo
/// stream.
///
/// Algorithm: std::mt19937_64 seeded with the 64-bit seed as its single
/// initial value (the standard fixes both the engine and this seeding).
/// Bounded integers come from rejection sampling on the raw 64-bit output and
/// shuffles are the classic Fisher-Yates walk from the back, so a seed yields
/// the same sequence on every conforming standard library.
/// std::uniform_int_distribution is avoided because its algorithm is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer over (seed, stream): independent per-trial or
/// per-session seeds from one master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Fresh seed from the operating system entropy source.
std::uint64_t entropy_seed();

}  // namespace colorpin
