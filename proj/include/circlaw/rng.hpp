// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace circlaw {

// SplitMix64 finalizer (Vigna / Steele et al.), used to derive stream keys.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stream identifiers. A Monte Carlo trial t of experiment e draws from the
// stream keyed by (seed, e, t); the assignment never depends on which worker
// runs the trial, so results are identical for any worker count.
enum class StreamKind : std::uint64_t {
    RawEntries = 1,
    SparseMask = 2,
    DiscSmoothing = 3,
    SmallBall = 4,
    DiscSample = 5,
    Generic = 6,
};

/// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
///
/// The 64-bit key selects the stream; the 128-bit counter is the position.
/// Jumping to any position is O(1), and distinct keys give independent
/// streams, which is what makes per-trial derivation cheap.
class Philox4x32 {
  public:
    explicit Philox4x32(std::uint64_t key) {
        key_ = {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
        counter_ = {0, 0, 0, 0};
        block_pos_ = 2;  // force generation on first use
        have_spare_normal_ = false;
    }

    std::uint64_t next_u64() {
        if (block_pos_ >= 2) {
            generate_block();
            block_pos_ = 0;
        }
        const int i = 2 * block_pos_++;
        return (static_cast<std::uint64_t>(block_[i + 1]) << 32) | block_[i];
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1].
    double uniform01_open_low() { return 1.0 - uniform01(); }

    /// Standard normal via the trigonometric Box-Muller transform.
    double normal() {
        if (have_spare_normal_) {
            have_spare_normal_ = false;
            return spare_normal_;
        }
        const double u1 = uniform01_open_low();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_normal_ = radius * std::sin(angle);
        have_spare_normal_ = true;
        return radius * std::cos(angle);
    }

    /// +1 or -1 with equal probability.
    double rademacher() { return (next_u64() >> 63) ? 1.0 : -1.0; }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    void generate_block() {
        std::array<std::uint32_t, 4> ctr = counter_;
        std::array<std::uint32_t, 2> key = key_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t prod0 = 0xd2511f53ull * ctr[0];
            const std::uint64_t prod2 = 0xcd9e8d57ull * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(prod0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(prod0);
            const std::uint32_t hi2 = static_cast<std::uint32_t>(prod2 >> 32);
            const std::uint32_t lo2 = static_cast<std::uint32_t>(prod2);
            ctr = {hi2 ^ ctr[1] ^ key[0], lo2, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += 0x9e3779b9u;
            key[1] += 0xbb67ae85u;
        }
        block_ = ctr;
        // 128-bit counter increment
        if (++counter_[0] == 0 && ++counter_[1] == 0 && ++counter_[2] == 0) ++counter_[3];
    }

    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> block_;
    int block_pos_;
    bool have_spare_normal_;
    double spare_normal_ = 0.0;
};

/// Derives the Philox key for trial `trial` of experiment `kind` under `seed`.
inline std::uint64_t derive_stream_key(std::uint64_t seed, StreamKind kind, std::uint64_t trial) {
    std::uint64_t h = splitmix64_mix(seed);
    h = splitmix64_mix(h ^ splitmix64_mix(static_cast<std::uint64_t>(kind)));
    h = splitmix64_mix(h ^ splitmix64_mix(trial));
    return h;
}

inline Philox4x32 make_stream(std::uint64_t seed, StreamKind kind, std::uint64_t trial = 0) {
    return Philox4x32(derive_stream_key(seed, kind, trial));
}

}  // namespace circlaw
