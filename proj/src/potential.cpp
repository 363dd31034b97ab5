// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "circlaw/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circlaw/parallel.hpp"
#include "circlaw/rng.hpp"

namespace circlaw {

double disc_potential(Complex z) {
    const double r2 = std::norm(z);
    if (r2 <= 1.0) return (1.0 - r2) / 2.0;
    return -0.5 * std::log(r2);
}

double log_potential_of(const MatrixReal& base, Complex z, double r, Complex xi) {
    const MatrixComplex shifted = shift_matrix(base, z + r * xi);
    const std::vector<double> sq = squared_singular_values_gram(shifted);
    double sum = 0.0;
    for (double s2 : sq) sum += 0.5 * std::log(s2);
    return -sum / static_cast<double>(base.rows());
}

namespace {

struct TrialResult {
    double value = 0.0;
    double smin = 0.0;
    double smax = 0.0;
};

TrialResult potential_trial(const EnsembleSpec& spec, Complex z, double r, std::uint64_t trial) {
    const MatrixReal x = sample_matrix(spec, trial);
    const Complex xi = r > 0.0 ? draw_disc_point(spec.seed, trial) : Complex{0.0, 0.0};
    const MatrixComplex shifted = shift_matrix(x, z + r * xi);
    const std::vector<double> sq = squared_singular_values_gram(shifted);
    TrialResult res;
    res.smax = std::sqrt(sq.front());
    res.smin = std::sqrt(sq.back());
    double sum = 0.0;
    for (double s2 : sq) sum += 0.5 * std::log(s2);
    res.value = -sum / static_cast<double>(spec.n);
    return res;
}

}  // namespace

PotentialEstimate empirical_potential(const EnsembleSpec& spec, Complex z, double r, int trials,
                                      bool truncate, int workers) {
    if (trials < 1) throw ValidationError("empirical_potential needs trials >= 1");
    if (r < 0.0) throw ValidationError("empirical_potential needs r >= 0");

    const std::vector<TrialResult> results = parallel_map_trials<TrialResult>(
        trials, workers,
        [&](int t) { return potential_trial(spec, z, r, static_cast<std::uint64_t>(t)); });

    const double smin_floor = std::pow(static_cast<double>(spec.n), -3.0);
    const double smax_ceiling = 4.0 + std::abs(z);

    PotentialEstimate est;
    est.trials = trials;
    est.min_smin = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const TrialResult& tr : results) {
        est.min_smin = std::min(est.min_smin, tr.smin);
        if (truncate && (tr.smin < smin_floor || tr.smax > smax_ceiling)) {
            ++est.excluded;
            continue;
        }
        est.per_trial.push_back(tr.value);
        sum += tr.value;
    }
    if (est.per_trial.empty())
        throw SolverError("empirical_potential: every trial failed the truncation gates");
    est.value = sum / static_cast<double>(est.per_trial.size());
    return est;
}

double limit_potential(const LimitSolution& sol) {
    // first strictly positive grid point
    std::size_t first = 0;
    while (first < sol.x.size() && sol.x[first] <= 0.0) ++first;
    if (first == sol.x.size()) throw ValidationError("limit_potential: grid has no positive part");

    const double h = sol.x[first];
    // analytic patch over [0, h]: integral of log y is y log y - y
    double integral = sol.density[first] * (h * std::log(h) - h);
    for (std::size_t i = first; i + 1 < sol.x.size(); ++i) {
        const double fa = std::log(sol.x[i]) * sol.density[i];
        const double fb = std::log(sol.x[i + 1]) * sol.density[i + 1];
        integral += 0.5 * (fa + fb) * (sol.x[i + 1] - sol.x[i]);
    }
    return -2.0 * integral;
}

double smoothing_radius(int n) {
    if (n < 1) throw ValidationError("smoothing_radius needs n >= 1");
    return std::pow(static_cast<double>(n), -0.125);
}

double circular_mean(const std::function<double(Complex)>& u, Complex z0, double rho,
                     int m_points) {
    if (!(rho > 0.0)) throw ValidationError("circular_mean needs rho > 0");
    if (m_points < 16) throw ValidationError("circular_mean needs m_points >= 16");
    double sum = 0.0;
    for (int k = 0; k < m_points; ++k) {
        const double theta = -M_PI + 2.0 * M_PI * k / m_points;
        sum += u(z0 + rho * Complex{std::cos(theta), std::sin(theta)});
    }
    return sum / m_points;
}

Complex empirical_char(const ComplexSpectrum& spectrum, double t, double v) {
    if (spectrum.values.empty()) throw ValidationError("empirical_char: empty spectrum");
    Complex sum{0.0, 0.0};
    for (const Complex& lambda : spectrum.values)
        sum += std::exp(Complex{0.0, t * lambda.real() + v * lambda.imag()});
    return sum / static_cast<double>(spectrum.values.size());
}

double bessel_j1_series(double x) {
    // J1(x) = sum_m (-1)^m (x/2)^(2m+1) / (m! (m+1)!)
    const double half = x / 2.0;
    double term = half;
    double sum = term;
    for (int m = 1; m < 30; ++m) {
        term *= -half * half / (static_cast<double>(m) * (m + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double disc_char(double t, double v, double r) {
    if (r < 0.0) throw ValidationError("disc_char needs r >= 0");
    const double rho = r * std::hypot(t, v);
    if (rho > 30.0) throw ValidationError("disc_char: rho > 30 outside series accuracy domain");
    if (rho == 0.0) return 1.0;
    return 2.0 * bessel_j1_series(rho) / rho;
}

std::string potential_kind_name(PotentialKind kind) {
    switch (kind) {
        case PotentialKind::Empirical:
            return "empirical";
        case PotentialKind::Limit:
            return "limit";
        case PotentialKind::DiscClosedForm:
            return "disc";
    }
    return "?";
}

void PotentialGrid::push(Complex z, double value, int excluded_count, double min_smin) {
    if (!std::isfinite(value)) throw SolverError("potential grid value is not finite");
    points.push_back(z);
    values.push_back(value);
    excluded.push_back(excluded_count);
    min_smins.push_back(min_smin);
}

PotentialGrid potential_grid(PotentialKind kind, const std::vector<Complex>& zs,
                             const EnsembleSpec* spec, double r, int trials, bool truncate,
                             int workers) {
    PotentialGrid grid;
    grid.kind = kind;
    for (const Complex& z : zs) {
        switch (kind) {
            case PotentialKind::Empirical: {
                if (spec == nullptr)
                    throw ValidationError("empirical potential grid needs an ensemble spec");
                const PotentialEstimate est =
                    empirical_potential(*spec, z, r, trials, truncate, workers);
                grid.push(z, est.value, est.excluded, est.min_smin);
                break;
            }
            case PotentialKind::Limit:
                grid.push(z, limit_potential(solve_density(z, default_grid(z))));
                break;
            case PotentialKind::DiscClosedForm:
                grid.push(z, disc_potential(z));
                break;
        }
    }
    return grid;
}

}  // namespace circlaw
