// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "circlaw/common.hpp"
#include "circlaw/ensemble.hpp"
#include "circlaw/limit_law.hpp"
#include "circlaw/spectra.hpp"

namespace circlaw {

/// Logarithmic potential of the uniform unit-disc law:
/// (1 - |z|^2)/2 inside, -log|z| outside (both 0 on the circle).
double disc_potential(Complex z);

/// -(1/n) sum_j log s_j(base - (z + r xi) I) for one fixed matrix.
/// This is the per-trial core of empirical_potential and doubles as a
/// deterministic test hook.
double log_potential_of(const MatrixReal& base, Complex z, double r = 0.0,
                        Complex xi = Complex{0.0, 0.0});

struct PotentialEstimate {
    double value = 0.0;   // mean over included trials
    int trials = 0;       // requested
    int excluded = 0;     // trials failing the truncation gates
    double min_smin = 0.0;  // smallest s_n seen across all trials
    std::vector<double> per_trial;  // included-trial values, in trial order
};

/// Monte Carlo -(1/n) E log|det(X - zI - r xi I)|. With `truncate`, trials
/// with s_n < n^-3 or s_1 > 4 + |z| are excluded from the mean and counted.
/// Throws SolverError if every trial is excluded.
PotentialEstimate empirical_potential(const EnsembleSpec& spec, Complex z, double r, int trials,
                                      bool truncate, int workers = 1);

/// -2 int_0^inf log(y) p~(y, z) dy on the solution grid; the log singularity
/// at 0 is integrated analytically on [0, h] assuming locally constant p~.
double limit_potential(const LimitSolution& sol);

/// Default smoothing schedule r(n) = n^{-1/8}.
double smoothing_radius(int n);

/// Trapezoid average of U over the circle |w - z0| = rho.
double circular_mean(const std::function<double(Complex)>& u, Complex z0, double rho,
                     int m_points);

/// f_n(t, v) = (1/n) sum_j exp(i t Re lambda_j + i v Im lambda_j).
Complex empirical_char(const ComplexSpectrum& spectrum, double t, double v);

/// J_1 by its power series; accurate on |x| <= 30 (30 terms max).
double bessel_j1_series(double x);

/// Characteristic function of the radius-r uniform disc at (t, v):
/// 2 J_1(rho)/rho with rho = r sqrt(t^2 + v^2). Rejects rho > 30.
double disc_char(double t, double v, double r);

enum class PotentialKind { Empirical, Limit, DiscClosedForm };

std::string potential_kind_name(PotentialKind kind);

/// Complex-plane grid of potential values for export. Empirical points where
/// a trial fell below the s_n floor are flagged through `excluded`, never
/// silently folded into the mean.
struct PotentialGrid {
    std::vector<Complex> points;
    std::vector<double> values;
    std::vector<int> excluded;      // per-point excluded-trial counts
    std::vector<double> min_smins;  // smallest s_n seen per point
    PotentialKind kind = PotentialKind::DiscClosedForm;

    void push(Complex z, double value, int excluded_count = 0, double min_smin = 0.0);
};

/// Evaluates one potential kind over a list of z values.
PotentialGrid potential_grid(PotentialKind kind, const std::vector<Complex>& zs,
                             const EnsembleSpec* spec, double r, int trials, bool truncate,
                             int workers);

}  // namespace circlaw
