// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "circlaw/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "circlaw/limit_law.hpp"
#include "circlaw/parallel.hpp"

namespace circlaw {

double kolmogorov_distance(const EmpiricalCDF& f, const std::function<double(double)>& g) {
    const std::vector<double>& pts = f.points();
    const double n = static_cast<double>(pts.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double gv = g(pts[i]);
        sup = std::max(sup, std::abs(static_cast<double>(i + 1) / n - gv));
        sup = std::max(sup, std::abs(static_cast<double>(i) / n - gv));
    }
    return sup;
}

CircularLawDistance circular_law_distance(const ComplexSpectrum& spectrum) {
    if (spectrum.values.size() < 8)
        throw ValidationError("circular_law_distance needs n >= 8");
    std::vector<double> radii(spectrum.values.size());
    std::vector<double> folded(spectrum.values.size());
    for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
        radii[i] = std::abs(spectrum.values[i]);
        folded[i] = std::abs(std::arg(spectrum.values[i]));
    }
    CircularLawDistance d;
    d.radial_ks = kolmogorov_distance(EmpiricalCDF(std::move(radii)), [](double rho) {
        return rho <= 0.0 ? 0.0 : std::min(rho * rho, 1.0);
    });
    d.angular_ks = kolmogorov_distance(EmpiricalCDF(std::move(folded)), [](double a) {
        return std::clamp(a / M_PI, 0.0, 1.0);
    });
    return d;
}

std::string distance_kind_name(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::SvVsLimit:
            return "sv-vs-limit";
        case DistanceKind::SvVsMp:
            return "sv-vs-mp";
        case DistanceKind::CircularRadial:
            return "circular-radial";
    }
    return "?";
}

DistanceKind parse_distance_kind(const std::string& name) {
    if (name == "sv-vs-limit") return DistanceKind::SvVsLimit;
    if (name == "sv-vs-mp") return DistanceKind::SvVsMp;
    if (name == "circular-radial") return DistanceKind::CircularRadial;
    throw ValidationError("unknown distance kind '" + name + "'");
}

namespace {

double cell_distance(const EnsembleSpec& spec, Complex z, DistanceKind kind,
                     const LimitSolution* limit, std::uint64_t trial) {
    switch (kind) {
        case DistanceKind::SvVsLimit: {
            const EmpiricalCDF f = squared_sv_measure(sample_matrix(spec, trial), z);
            return kolmogorov_distance(f, [&](double x) { return limit->squared_cdf_at(x); });
        }
        case DistanceKind::SvVsMp: {
            const EmpiricalCDF f = squared_sv_measure(sample_matrix(spec, trial), z);
            return kolmogorov_distance(f, [](double x) { return mp_cdf(x); });
        }
        case DistanceKind::CircularRadial: {
            const ComplexSpectrum spec_vals = eigenvalues(sample_matrix(spec, trial));
            return circular_law_distance(spec_vals).radial_ks;
        }
    }
    return 0.0;
}

}  // namespace

RateTable rate_sweep(const SweepConfig& config) {
    if (config.n_list.size() < 2) throw ValidationError("rate_sweep needs >= 2 n values");
    for (std::size_t i = 1; i < config.n_list.size(); ++i)
        if (config.n_list[i] <= config.n_list[i - 1])
            throw ValidationError("rate_sweep n_list must be ascending");
    if (config.trials < 1) throw ValidationError("rate_sweep needs trials >= 1");

    RateTable table;
    int group = 0;
    for (double p : config.p_list) {
        for (Complex z : config.z_list) {
            LimitSolution limit;
            if (config.kind == DistanceKind::SvVsLimit) limit = solve_density(z, default_grid(z));
            for (int n : config.n_list) {
                const EnsembleSpec spec(n, config.dist, p, config.seed);
                const std::vector<double> distances = parallel_map_trials<double>(
                    config.trials, config.workers, [&](int t) {
                        return cell_distance(spec, z, config.kind, &limit,
                                             static_cast<std::uint64_t>(t));
                    });
                RateRow row;
                row.n = n;
                row.p_n = p;
                row.z = z;
                row.kind = config.kind;
                row.trials = config.trials;
                row.seed = config.seed;
                row.group_id = group;
                double sum = 0.0;
                for (double d : distances) sum += d;
                row.mean_distance = sum / static_cast<double>(distances.size());
                table.rows.push_back(row);
            }
            ++group;
        }
    }
    table.slopes = fit_slopes(table.rows, config.dist.kappa3());
    return table;
}

std::vector<SlopeFit> fit_slopes(std::span<const RateRow> rows, double kappa3) {
    std::map<int, std::vector<const RateRow*>> groups;
    for (const RateRow& row : rows) groups[row.group_id].push_back(&row);

    std::vector<SlopeFit> fits;
    for (const auto& [group_id, members] : groups) {
        SlopeFit fit;
        fit.group_id = group_id;
        fit.p_n = members.front()->p_n;
        fit.z = members.front()->z;
        fit.kind = members.front()->kind;
        fit.kappa3 = kappa3;
        std::vector<double> lx;
        std::vector<double> ly;
        for (const RateRow* row : members) {
            if (row->mean_distance <= 0.0) continue;
            lx.push_back(std::log(static_cast<double>(row->n) * row->p_n));
            ly.push_back(std::log(row->mean_distance));
        }
        const std::size_t k = lx.size();
        if (k >= 2 && std::adjacent_find(lx.begin(), lx.end()) == lx.end()) {
            double mx = 0.0;
            double my = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                mx += lx[i];
                my += ly[i];
            }
            mx /= static_cast<double>(k);
            my /= static_cast<double>(k);
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                num += (lx[i] - mx) * (ly[i] - my);
                den += (lx[i] - mx) * (lx[i] - mx);
            }
            if (den > 0.0) {
                fit.slope = num / den;
                fit.valid = true;
            }
        }
        fits.push_back(fit);
    }
    return fits;
}

}  // namespace circlaw
