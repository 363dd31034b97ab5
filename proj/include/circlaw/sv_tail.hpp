// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <vector>

#include "circlaw/common.hpp"
#include "circlaw/ensemble.hpp"

namespace circlaw {

/// Monte Carlo tail counts for the smallest singular value of X - zI.
struct TailReport {
    EnsembleSpec spec;
    Complex z;
    std::vector<double> thresholds;  // ascending
    std::vector<int> counts;         // trials with s_n <= threshold
    std::vector<double> cp95_upper;  // one-sided 95% Clopper-Pearson upper bounds
    int trials = 0;
    double min_smin = 0.0;
};

TailReport smin_tail_estimate(const EnsembleSpec& spec, Complex z,
                              std::vector<double> thresholds, int trials, int workers = 1);

/// One-sided Clopper-Pearson upper confidence bound for a binomial proportion.
double clopper_pearson_upper(int successes, int trials, double level = 0.95);

/// Bucket counts P_k = #{j : |x_j| in (k d, (k+1) d]}; zero coordinates fall
/// in no bucket and are reported separately.
struct ProfileCounts {
    std::map<long long, long long> buckets;
    long long zeros = 0;
};

ProfileCounts profile_counts(std::span<const double> x, double delta);

enum class ProfileClass { Regular, Singular, CompressibleVP };

struct ProfileParams {
    double R = 3.0;
    double r = 0.5;
    double delta = 0.0;  // bucket width
    double Q = 10.0;
    double p_n = 1.0;
};

/// Profile diagnostics for a unit vector under the compressible/regular/
/// singular trichotomy of the small-ball analysis.
struct ProfileReport {
    std::vector<double> moduli;
    double delta = 0.0;
    ProfileCounts pk;                // buckets of x restricted to J
    std::vector<int> sigma_set;      // indices with |x_i| <= R / sqrt(n p_n)
    double sigma_norm = 0.0;         // ||P_sigma x||
    ProfileClass classification = ProfileClass::CompressibleVP;
    long long m_lower_bound = 0;     // ceil((r^2 / (2 R^2 p_n)) n), >= 1
    long long m = 0;                 // realized sub-support size |J(x)|
    long long j_size = 0;            // ceil(m/2) coordinates actually bucketed
    double sum_pk_sq = 0.0;          // sum_k P_k^2 over the bucketed set
    double budget_m52 = 0.0;         // Q m^{5/2} delta
    double budget_m2_over_k = 0.0;   // Q m^2 / k with k interval count (derived column)
};

ProfileReport classify_profile(std::span<const double> x, const ProfileParams& params);
ProfileReport classify_profile(std::span<const Complex> x, const ProfileParams& params);

/// Monte Carlo estimate of Pr{ |sum_j eps_j beta_j x_j - v| < delta } with
/// beta_j iid from `dist` and eps_j Bernoulli(p_n).
double small_ball_prob(std::span<const double> x, const Distribution& dist, double delta,
                       double v, double p_n, int trials, std::uint64_t seed, int workers = 1);

}  // namespace circlaw
