// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "circlaw/common.hpp"

namespace circlaw {

/// The 2n x 2n Hermitian block matrix with zero diagonal blocks and
/// off-diagonal blocks B = X - zI and B*. Its spectrum is {+-s_j(B)}.
struct HermitizationW {
    MatrixComplex w;
    Complex z;
    int n = 0;
};

HermitizationW build_hermitization(const MatrixReal& base, Complex z);

/// Stieltjes transform of the symmetrized singular-value measure evaluated
/// from singular values: (1/2n) sum_j [(s_j - a)^-1 + (-s_j - a)^-1].
Complex stieltjes_from_svs(std::span<const double> s, Complex alpha);

/// Stieltjes transform of the squared singular-value measure:
/// s_n(w) = (1/n) sum_j (s_j^2 - w)^-1.
Complex stieltjes_squared_from_svs(std::span<const double> s, Complex w);

/// Single-sample S_n(alpha, z) for the matrix X - zI; requires Im alpha > 0.
/// Monte Carlo averaging over the ensemble happens in the convergence module.
Complex stieltjes_empirical(const MatrixReal& base, Complex z, Complex alpha);

}  // namespace circlaw
