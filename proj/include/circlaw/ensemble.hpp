// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "circlaw/common.hpp"
#include "circlaw/rng.hpp"

namespace circlaw {

enum class DistFamily { Gaussian, Rademacher, UniformPM, TwoPoint };

/// An entry distribution with mean 0 and variance 1. The two-point family
/// takes the atom `a` (weight `p`); the second atom is solved from the
/// mean-zero condition, and the variance-one condition is enforced at
/// construction (it pins a = sqrt((1-p)/p) up to sign).
class Distribution {
  public:
    static Distribution gaussian();
    static Distribution rademacher();
    static Distribution uniform_pm();
    static Distribution two_point(double atom_a, double weight_p);

    DistFamily family() const { return family_; }
    double atom_a() const { return atom_a_; }
    double atom_b() const { return atom_b_; }
    double weight_p() const { return weight_p_; }

    /// E|X|^3, computed analytically per family.
    double kappa3() const;

    double sample(Philox4x32& gen) const;

    std::string name() const;
    static Distribution parse(const std::string& name, double atom_a = 0.0, double weight_p = 0.5);

  private:
    Distribution() = default;
    DistFamily family_ = DistFamily::Gaussian;
    double atom_a_ = 0.0;
    double atom_b_ = 0.0;
    double weight_p_ = 0.0;
};

/// One random-matrix law: entries from `dist`, Bernoulli(p_n) retention
/// (p_n = 1 is dense), scaled by 1/sqrt(n * p_n).
struct EnsembleSpec {
    int n;
    Distribution dist;
    double p_n;
    std::uint64_t seed;

    EnsembleSpec(int n_, Distribution dist_, double p_n_, std::uint64_t seed_);
};

/// Unscaled entry draws X_jk (row-major stream order).
MatrixReal sample_raw(const EnsembleSpec& spec, std::uint64_t trial = 0);

/// Bernoulli(p_n) retention mask; all ones when p_n = 1. Drawn from a stream
/// independent of the raw entries.
MatrixReal sample_mask(const EnsembleSpec& spec, std::uint64_t trial = 0);

/// (raw .* mask) / sqrt(n * p_n). Generation is factored as
/// raw -> mask -> scale so the pieces can be recombined exactly.
MatrixReal assemble_matrix(const EnsembleSpec& spec, const MatrixReal& raw, const MatrixReal& mask);
MatrixReal sample_matrix(const EnsembleSpec& spec, std::uint64_t trial = 0);

/// M - z I.
MatrixComplex shift_matrix(const MatrixReal& m, Complex z);
MatrixComplex shift_matrix(const MatrixComplex& m, Complex z);

/// One point uniform on the closed unit disc, by rejection from [-1,1]^2.
Complex draw_disc_point(Philox4x32& gen);
Complex draw_disc_point(std::uint64_t seed, std::uint64_t trial = 0);

/// M - z I - r xi I with xi uniform on the unit disc (deterministic by seed).
MatrixComplex smooth_matrix(const MatrixReal& m, Complex z, double r, std::uint64_t seed,
                            std::uint64_t trial = 0);

}  // namespace circlaw
