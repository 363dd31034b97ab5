// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "circlaw/common.hpp"

namespace circlaw {

/// The three roots of the self-consistent cubic at a given (alpha, z).
struct CubicRoots {
    std::array<Complex, 3> roots;
};

/// Roots of the monic cubic x^3 + a x^2 + b x + c over C (Cardano plus a
/// Newton polish).
CubicRoots cubic_roots(Complex a, Complex b, Complex c);

/// Roots in S of  S^3 + 2a S^2 + (a^2 + 1 - |z|^2) S + a = 0,
/// the cubic satisfied by the limiting Stieltjes transform S(alpha, z).
CubicRoots solve_cubic(Complex alpha, Complex z);

/// Roots in y of  y^3 - x y^2 + (1 - |z|^2) y + x |z|^2 = 0  (y = S + x).
CubicRoots solve_cubic_shifted(Complex x, Complex z);

/// Thrown when homotopy branch tracking cannot disambiguate the Herglotz
/// root; carries all three candidate roots.
class BranchAmbiguityError : public SolverError {
  public:
    BranchAmbiguityError(const std::string& what, const std::array<Complex, 3>& roots)
        : SolverError(what), roots(roots) {}
    std::array<Complex, 3> roots;
};

/// The limiting Stieltjes transform S(alpha, z) for Im alpha > 0: the cubic
/// root with positive imaginary part, disambiguated when necessary by
/// continuity along the vertical path from alpha + 10i.
Complex stieltjes_limit(Complex alpha, Complex z);

struct Thresholds {
    double x1;  // outer support edge of the symmetrized density
    double x2;  // inner gap edge; 0 when |z| <= 1
};

Thresholds support_thresholds(Complex z);

/// Number of real roots (1 or 3) of the shifted cubic at real x. Throws
/// BoundaryIndeterminate within 1e-6 of a support threshold.
int root_count(double x, Complex z);

/// Density grid of the symmetrized limit measure at a fixed z, with its CDF
/// and support thresholds.
struct LimitSolution {
    Complex z;
    std::vector<double> x;        // ascending, symmetric about 0
    std::vector<double> density;  // p~(x, z) >= 0
    std::vector<double> cdf;      // trapezoid integral of density
    double x1 = 0.0;
    double x2 = 0.0;

    /// F~(x): linear interpolation of the integrated density, clamped to [0,1].
    double cdf_at(double xq) const;

    /// CDF of the squared-singular-value measure: F(x) = 2 F~(sqrt(x)) - 1.
    double squared_cdf_at(double xq) const;
};

/// Symmetric grid of `points` nodes over [-x1 - margin, x1 + margin].
std::vector<double> default_grid(Complex z, int points = 2001, double margin = 0.5);

/// Pointwise symmetrized density p~(x, z) = Im S(x + i v0, z) / pi with
/// v0 = 1e-6, overridden to an exact 0 wherever the cubic at real x has three
/// real roots.
double density_at(Complex z, double x);

/// density_at evaluated on a grid, with the trapezoid CDF attached.
LimitSolution solve_density(Complex z, std::vector<double> x_grid);

/// Marchenko-Pastur(1) density (2pi)^-1 sqrt((4-x)/x) on (0,4), and its CDF.
double mp_density(double x);
double mp_cdf(double x);

}  // namespace circlaw
