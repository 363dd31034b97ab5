// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "circlaw/common.hpp"

namespace circlaw {

struct SpectrumMeta {
    int n = 0;
    std::optional<Complex> z_shift;
    double r_smooth = 0.0;
};

/// Multiset of the n eigenvalues of a matrix, with provenance.
struct ComplexSpectrum {
    std::vector<Complex> values;
    SpectrumMeta meta;
};

/// Eigenvalues of a general complex matrix (Schur form, no eigenvectors).
/// Throws SolverError if the QR iteration fails to converge; callers may
/// retry after perturbing the diagonal by ~1e-12.
ComplexSpectrum eigenvalues(const MatrixComplex& m);

/// Real-matrix path via the real Schur form; complex eigenvalues come out in
/// exact conjugate pairs.
ComplexSpectrum eigenvalues(const MatrixReal& m);

/// Singular values, descending, by dense bidiagonalization SVD.
std::vector<double> singular_values(const MatrixComplex& m);
std::vector<double> singular_values(const MatrixReal& m);

/// Singular values, descending, read off the nonnegative half of the
/// hermitization spectrum. Used for shifted matrices; cross-validated against
/// the SVD path in tests.
std::vector<double> singular_values_via_hermitization(const MatrixComplex& m);

/// Squared singular values via the Gram matrix M*M (n x n Hermitian
/// eigenproblem). Fast path for Monte Carlo loops; absolute accuracy on s^2
/// is ~||M||^2 eps, so do not use it to resolve s below ~1e-8.
std::vector<double> squared_singular_values_gram(const MatrixComplex& m);

/// Equal-weight empirical CDF: F(x) = #{points <= x} / n, right-continuous.
class EmpiricalCDF {
  public:
    explicit EmpiricalCDF(std::vector<double> points);

    double operator()(double x) const;
    const std::vector<double>& points() const { return points_; }
    int size() const { return static_cast<int>(points_.size()); }

  private:
    std::vector<double> points_;  // sorted ascending
};

/// Empirical CDF of the squared singular values of X - zI - r xi I.
/// The z = 0, r = 0 case uses the SVD path; any actual shift goes through the
/// hermitization spectrum.
EmpiricalCDF squared_sv_measure(const MatrixReal& base, Complex z, double r = 0.0,
                                std::uint64_t seed = 0, std::uint64_t trial = 0);

/// Pushes a CDF on [0,inf) supported at points s^2 to the symmetric CDF with
/// half masses at +-s: F~(x) = (1 + sgn(x) F(x^2)) / 2, with sgn(0) = 0.
EmpiricalCDF symmetrize_cdf(const EmpiricalCDF& f);

/// Two-dimensional empirical spectral distribution of a spectrum.
class Esd2d {
  public:
    explicit Esd2d(const ComplexSpectrum& spectrum);

    /// G_n(x, y) = fraction of eigenvalues with Re <= x and Im <= y.
    double operator()(double x, double y) const;
    const std::vector<Complex>& values() const { return values_; }
    std::vector<double> radii() const;
    std::vector<double> angles() const;

  private:
    std::vector<Complex> values_;
};

Esd2d esd_2d(const ComplexSpectrum& spectrum);

}  // namespace circlaw
