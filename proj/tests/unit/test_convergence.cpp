// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"

#include "circlaw/convergence.hpp"
#include "circlaw/limit_law.hpp"
#include "circlaw/rng.hpp"

using namespace circlaw;

TEST_CASE("kolmogorov distance of quantile samples is 1/(2n)") {
    auto g = [](double x) { return std::clamp(x, 0.0, 1.0); };  // uniform cdf
    const int n = 40;
    std::vector<double> pts(n);
    for (int i = 1; i <= n; ++i)
        pts[static_cast<std::size_t>(i - 1)] = (i - 0.5) / n;  // G-quantiles at (i-1/2)/n
    CHECK(kolmogorov_distance(EmpiricalCDF(pts), g) == doctest::Approx(1.0 / (2.0 * n)));
}

TEST_CASE("kolmogorov distance saturates for disjoint supports") {
    auto g = [](double x) { return std::clamp(x, 0.0, 1.0); };
    const EmpiricalCDF point_mass(std::vector<double>{0.0});
    CHECK(kolmogorov_distance(point_mass, g) == doctest::Approx(1.0));
}

TEST_CASE("breakpoint formula agrees with a dense grid sup") {
    Philox4x32 gen(33);
    auto g = [](double x) { return mp_cdf(x); };
    std::vector<double> pts(25);
    for (double& p : pts) p = 4.5 * gen.uniform01();
    const EmpiricalCDF f(pts);
    const double exact = kolmogorov_distance(f, g);

    // 1e5-point grid sup never exceeds the formula and comes close to it
    double grid_sup = 0.0;
    const int grid_points = 100000;
    for (int i = 0; i <= grid_points; ++i) {
        const double x = -0.5 + 5.5 * i / grid_points;
        grid_sup = std::max(grid_sup, std::abs(f(x) - g(x)));
    }
    CHECK(grid_sup <= exact + 1e-12);
    CHECK(exact <= grid_sup + 1e-3);  // grid misses the sup by at most a cell

    // brute force over the breakpoint set itself reproduces it exactly
    double breakpoint_sup = 0.0;
    for (double p : f.points()) {
        breakpoint_sup = std::max(breakpoint_sup, std::abs(f(p) - g(p)));
        breakpoint_sup = std::max(breakpoint_sup, std::abs(f(p - 1e-13) - g(p)));
    }
    CHECK(std::abs(breakpoint_sup - exact) <= 1e-12);
}

TEST_CASE("circular law distance on exact disc samples") {
    // n=1000 points drawn from the uniform disc law itself
    std::vector<Complex> pts;
    Philox4x32 gen(2024);
    ComplexSpectrum spectrum;
    for (int i = 0; i < 1000; ++i) spectrum.values.push_back(draw_disc_point(gen));
    spectrum.meta.n = 1000;
    const CircularLawDistance d = circular_law_distance(spectrum);
    // KS null critical value at 5%: 1.36/sqrt(1000) = 0.043
    CHECK(d.radial_ks <= 0.05);
    CHECK(d.angular_ks <= 0.05);
}

TEST_CASE("degenerate spectra are maximally distant") {
    ComplexSpectrum all_zero;
    all_zero.values.assign(16, Complex{0.0, 0.0});
    all_zero.meta.n = 16;
    CHECK(circular_law_distance(all_zero).radial_ks == doctest::Approx(1.0));

    ComplexSpectrum tiny;
    tiny.values.assign(4, Complex{0.0, 0.0});
    CHECK_THROWS_AS(circular_law_distance(tiny), ValidationError);
}

TEST_CASE("real ensembles have conjugate-symmetric folded angles") {
    const EnsembleSpec spec(64, Distribution::rademacher(), 1.0, 15);
    const ComplexSpectrum ev = eigenvalues(sample_matrix(spec));
    const CircularLawDistance d = circular_law_distance(ev);
    CHECK(d.angular_ks < 0.35);
    CHECK(d.radial_ks < 0.35);
}

TEST_CASE("synthetic power-law distances fit their exponent exactly") {
    // test hook: inject rows with distance = c (n p)^(-1/4)
    std::vector<RateRow> rows;
    for (int n : {64, 128, 256, 512}) {
        RateRow row;
        row.n = n;
        row.p_n = 0.5;
        row.z = Complex{0.3, 0.0};
        row.kind = DistanceKind::SvVsLimit;
        row.trials = 1;
        row.mean_distance = 3.7 * std::pow(n * row.p_n, -0.25);
        row.group_id = 0;
        rows.push_back(row);
    }
    const std::vector<SlopeFit> fits = fit_slopes(rows);
    REQUIRE(fits.size() == 1);
    REQUIRE(fits[0].valid);
    CHECK(fits[0].slope == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("slope fitting flags degenerate groups") {
    std::vector<RateRow> rows(1);
    rows[0].n = 64;
    rows[0].mean_distance = 0.1;
    rows[0].group_id = 4;
    const std::vector<SlopeFit> fits = fit_slopes(rows);
    REQUIRE(fits.size() == 1);
    CHECK(!fits[0].valid);
}

TEST_CASE("rate sweep produces deterministic shrinking distances") {
    SweepConfig config;
    config.n_list = {16, 32, 64};
    config.p_list = {1.0};
    config.z_list = {Complex{0.5, 0.0}};
    config.trials = 4;
    config.kind = DistanceKind::SvVsLimit;
    config.seed = 3;
    config.workers = 2;

    const RateTable table = rate_sweep(config);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].n == 16);
    CHECK(table.rows[2].n == 64);
    for (const RateRow& row : table.rows) {
        CHECK(row.mean_distance > 0.0);
        CHECK(row.mean_distance <= 1.0);
    }
    // convergence: slope strictly negative
    REQUIRE(table.slopes.size() == 1);
    REQUIRE(table.slopes[0].valid);
    CHECK(table.slopes[0].slope < 0.0);

    SweepConfig serial = config;
    serial.workers = 1;
    const RateTable again = rate_sweep(serial);
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        CHECK(table.rows[i].mean_distance == again.rows[i].mean_distance);

    SweepConfig bad = config;
    bad.n_list = {64};
    CHECK_THROWS_AS(rate_sweep(bad), ValidationError);
}

TEST_CASE("median sv distance shrinks from n=64 to n=256") {
    auto median_distance = [](int n) {
        std::vector<double> d;
        for (std::uint64_t t = 0; t < 5; ++t) {
            const EnsembleSpec spec(n, Distribution::gaussian(), 1.0, 71);
            const EmpiricalCDF f = squared_sv_measure(sample_matrix(spec, t), Complex{0, 0});
            d.push_back(kolmogorov_distance(f, [](double x) { return mp_cdf(x); }));
        }
        std::sort(d.begin(), d.end());
        return d[2];
    };
    CHECK(median_distance(256) <= median_distance(64) + 0.01);
}
