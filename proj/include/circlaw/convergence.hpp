// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "circlaw/common.hpp"
#include "circlaw/ensemble.hpp"
#include "circlaw/spectra.hpp"

namespace circlaw {

/// Exact sup_x |F_n(x) - G(x)| for an empirical F_n against a nondecreasing
/// reference G, evaluated over the empirical breakpoints.
double kolmogorov_distance(const EmpiricalCDF& f, const std::function<double(double)>& g);

struct CircularLawDistance {
    double radial_ks = 0.0;   // |lambda| against rho -> min(rho^2, 1)
    double angular_ks = 0.0;  // folded |arg lambda| against uniform on [0, pi]
};

/// Radial and angular Kolmogorov distances of a spectrum to the uniform disc
/// law. Angles are folded to |arg lambda| (reference x/pi on [0, pi]) so that
/// the conjugate symmetry of real-entry ensembles does not bias the statistic.
CircularLawDistance circular_law_distance(const ComplexSpectrum& spectrum);

enum class DistanceKind { SvVsLimit, SvVsMp, CircularRadial };

std::string distance_kind_name(DistanceKind kind);
DistanceKind parse_distance_kind(const std::string& name);

struct RateRow {
    int n = 0;
    double p_n = 1.0;
    Complex z;
    DistanceKind kind = DistanceKind::SvVsLimit;
    int trials = 0;
    double mean_distance = 0.0;
    std::uint64_t seed = 0;
    int group_id = 0;  // rows sharing (p_n, z, kind)
};

struct SlopeFit {
    int group_id = 0;
    double p_n = 1.0;
    Complex z;
    DistanceKind kind = DistanceKind::SvVsLimit;
    double slope = 0.0;
    double kappa3 = 0.0;
    bool valid = false;  // false when the group has fewer than 2 distinct n
};

struct RateTable {
    std::vector<RateRow> rows;
    std::vector<SlopeFit> slopes;
};

struct SweepConfig {
    std::vector<int> n_list;       // ascending, >= 2 entries
    std::vector<double> p_list{1.0};
    std::vector<Complex> z_list{Complex{0.0, 0.0}};
    int trials = 10;
    DistanceKind kind = DistanceKind::SvVsLimit;
    std::uint64_t seed = 0;
    int workers = 1;
    Distribution dist = Distribution::gaussian();
};

/// Distances averaged over trials per (n, p, z) cell, with least-squares
/// slopes of log(mean distance) against log(n p) per (p, z) group.
RateTable rate_sweep(const SweepConfig& config);

/// Slope fitting alone, usable on synthetic rows.
std::vector<SlopeFit> fit_slopes(std::span<const RateRow> rows, double kappa3 = 0.0);

}  // namespace circlaw
