// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "circlaw/ensemble.hpp"

#include <cmath>

namespace circlaw {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
}

Distribution Distribution::gaussian() {
    Distribution d;
    d.family_ = DistFamily::Gaussian;
    return d;
}

Distribution Distribution::rademacher() {
    Distribution d;
    d.family_ = DistFamily::Rademacher;
    return d;
}

Distribution Distribution::uniform_pm() {
    Distribution d;
    d.family_ = DistFamily::UniformPM;
    return d;
}

Distribution Distribution::two_point(double atom_a, double weight_p) {
    if (!(weight_p > 0.0 && weight_p < 1.0))
        throw ValidationError("two_point weight p must lie in (0,1)");
    if (atom_a == 0.0) throw ValidationError("two_point atom a must be nonzero");
    Distribution d;
    d.family_ = DistFamily::TwoPoint;
    d.atom_a_ = atom_a;
    d.weight_p_ = weight_p;
    // mean zero fixes the second atom
    d.atom_b_ = -weight_p * atom_a / (1.0 - weight_p);
    const double variance =
        weight_p * atom_a * atom_a + (1.0 - weight_p) * d.atom_b_ * d.atom_b_;
    if (std::abs(variance - 1.0) > 1e-9)
        throw ValidationError("two_point(a=" + std::to_string(atom_a) +
                              ", p=" + std::to_string(weight_p) + ") has variance " +
                              std::to_string(variance) + "; need a = sqrt((1-p)/p)");
    return d;
}

double Distribution::kappa3() const {
    switch (family_) {
        case DistFamily::Gaussian:
            // E|Z|^3 = 2 sqrt(2/pi)
            return 2.0 * std::sqrt(2.0 / M_PI);
        case DistFamily::Rademacher:
            return 1.0;
        case DistFamily::UniformPM:
            // E|X|^3 on [-sqrt(3), sqrt(3)] = 3 sqrt(3) / 4
            return 3.0 * kSqrt3 / 4.0;
        case DistFamily::TwoPoint:
            return weight_p_ * std::pow(std::abs(atom_a_), 3.0) +
                   (1.0 - weight_p_) * std::pow(std::abs(atom_b_), 3.0);
    }
    return 0.0;
}

double Distribution::sample(Philox4x32& gen) const {
    switch (family_) {
        case DistFamily::Gaussian:
            return gen.normal();
        case DistFamily::Rademacher:
            return gen.rademacher();
        case DistFamily::UniformPM:
            return kSqrt3 * (2.0 * gen.uniform01() - 1.0);
        case DistFamily::TwoPoint:
            return gen.bernoulli(weight_p_) ? atom_a_ : atom_b_;
    }
    return 0.0;
}

std::string Distribution::name() const {
    switch (family_) {
        case DistFamily::Gaussian:
            return "gaussian";
        case DistFamily::Rademacher:
            return "rademacher";
        case DistFamily::UniformPM:
            return "uniform";
        case DistFamily::TwoPoint:
            return "twopoint";
    }
    return "?";
}

Distribution Distribution::parse(const std::string& name, double atom_a, double weight_p) {
    if (name == "gaussian") return gaussian();
    if (name == "rademacher") return rademacher();
    if (name == "uniform") return uniform_pm();
    if (name == "twopoint") return two_point(atom_a, weight_p);
    throw ValidationError("unknown distribution '" + name + "'");
}

EnsembleSpec::EnsembleSpec(int n_, Distribution dist_, double p_n_, std::uint64_t seed_)
    : n(n_), dist(dist_), p_n(p_n_), seed(seed_) {
    if (n < 1) throw ValidationError("ensemble dimension n must be >= 1");
    if (!(p_n > 0.0 && p_n <= 1.0)) throw ValidationError("p_n must lie in (0,1]");
}

MatrixReal sample_raw(const EnsembleSpec& spec, std::uint64_t trial) {
    Philox4x32 gen = make_stream(spec.seed, StreamKind::RawEntries, trial);
    MatrixReal raw(spec.n, spec.n);
    for (int j = 0; j < spec.n; ++j)
        for (int k = 0; k < spec.n; ++k) raw(j, k) = spec.dist.sample(gen);
    return raw;
}

MatrixReal sample_mask(const EnsembleSpec& spec, std::uint64_t trial) {
    if (spec.p_n >= 1.0) return MatrixReal::Ones(spec.n, spec.n);
    Philox4x32 gen = make_stream(spec.seed, StreamKind::SparseMask, trial);
    MatrixReal mask(spec.n, spec.n);
    for (int j = 0; j < spec.n; ++j)
        for (int k = 0; k < spec.n; ++k) mask(j, k) = gen.bernoulli(spec.p_n) ? 1.0 : 0.0;
    return mask;
}

MatrixReal assemble_matrix(const EnsembleSpec& spec, const MatrixReal& raw,
                           const MatrixReal& mask) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.n) * spec.p_n);
    return scale * raw.cwiseProduct(mask);
}

MatrixReal sample_matrix(const EnsembleSpec& spec, std::uint64_t trial) {
    return assemble_matrix(spec, sample_raw(spec, trial), sample_mask(spec, trial));
}

MatrixComplex shift_matrix(const MatrixReal& m, Complex z) {
    MatrixComplex out = m.cast<Complex>();
    out.diagonal().array() -= z;
    return out;
}

MatrixComplex shift_matrix(const MatrixComplex& m, Complex z) {
    MatrixComplex out = m;
    out.diagonal().array() -= z;
    return out;
}

Complex draw_disc_point(Philox4x32& gen) {
    for (;;) {
        const double x = 2.0 * gen.uniform01() - 1.0;
        const double y = 2.0 * gen.uniform01() - 1.0;
        if (x * x + y * y <= 1.0) return {x, y};
    }
}

Complex draw_disc_point(std::uint64_t seed, std::uint64_t trial) {
    Philox4x32 gen = make_stream(seed, StreamKind::DiscSmoothing, trial);
    return draw_disc_point(gen);
}

MatrixComplex smooth_matrix(const MatrixReal& m, Complex z, double r, std::uint64_t seed,
                            std::uint64_t trial) {
    if (r < 0.0) throw ValidationError("smoothing radius r must be >= 0");
    if (r == 0.0) return shift_matrix(m, z);
    const Complex xi = draw_disc_point(seed, trial);
    return shift_matrix(m, z + r * xi);
}

}  // namespace circlaw
