// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "circlaw/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace circlaw {

namespace {

constexpr double kBoundaryTol = 1e-6;   // root_count indeterminate band
constexpr double kRealRootTol = 1e-9;   // |Im| below this counts as real
constexpr double kEdgeV = 1e-6;         // v0 used for boundary density values

Complex cubic_value(Complex x, Complex a, Complex b, Complex c) {
    return ((x + a) * x + b) * x + c;
}

Complex cubic_derivative(Complex x, Complex a, Complex b) {
    return (3.0 * x + 2.0 * a) * x + b;
}

void polish(Complex& root, Complex a, Complex b, Complex c) {
    for (int it = 0; it < 2; ++it) {
        const Complex d = cubic_derivative(root, a, b);
        if (std::abs(d) < 1e-300) return;
        root -= cubic_value(root, a, b, c) / d;
    }
}

}  // namespace

CubicRoots cubic_roots(Complex a, Complex b, Complex c) {
    // depressed form t^3 + p t + q with x = t - a/3
    const Complex shift = a / 3.0;
    const Complex p = b - a * a / 3.0;
    const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    CubicRoots out;
    const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    // pick the sign avoiding cancellation in -q/2 +- disc
    Complex u3 = -q / 2.0 + disc;
    if (std::abs(-q / 2.0 - disc) > std::abs(u3)) u3 = -q / 2.0 - disc;

    if (std::abs(u3) == 0.0) {
        // p = q = 0: triple root
        out.roots = {-shift, -shift, -shift};
    } else {
        const Complex u = std::exp(std::log(u3) / 3.0);
        const Complex omega{-0.5, std::sqrt(3.0) / 2.0};
        for (int k = 0; k < 3; ++k) {
            const Complex uk = u * (k == 0 ? Complex{1.0, 0.0} : (k == 1 ? omega : std::conj(omega)));
            out.roots[static_cast<std::size_t>(k)] = uk - p / (3.0 * uk) - shift;
        }
    }
    for (auto& r : out.roots) polish(r, a, b, c);
    return out;
}

CubicRoots solve_cubic(Complex alpha, Complex z) {
    const double zz = std::norm(z);
    return cubic_roots(2.0 * alpha, alpha * alpha + 1.0 - zz, alpha);
}

CubicRoots solve_cubic_shifted(Complex x, Complex z) {
    const double zz = std::norm(z);
    return cubic_roots(-x, 1.0 - zz, x * zz);
}

namespace {

// Continues the selected root from `from` to `to`, refining the step by 10x
// (up to `depth` levels) whenever the nearest root is not clearly dominant.
Complex track_segment(Complex from, Complex to, Complex current, Complex z, int depth) {
    const CubicRoots roots = solve_cubic(to, z);
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    Complex chosen = roots.roots[0];
    for (const Complex& r : roots.roots) {
        const double d = std::abs(r - current);
        if (d < best) {
            second = best;
            best = d;
            chosen = r;
        } else if (d < second) {
            second = d;
        }
    }
    if (2.0 * best < second || best < 1e-13) return chosen;
    if (depth <= 0)
        throw BranchAmbiguityError("stieltjes_limit: branch selection ambiguous after refinement",
                                   roots.roots);
    Complex cur = current;
    Complex a = from;
    for (int k = 1; k <= 10; ++k) {
        const Complex b = from + (to - from) * (static_cast<double>(k) / 10.0);
        cur = track_segment(a, b, cur, z, depth - 1);
        a = b;
    }
    return cur;
}

}  // namespace

Complex stieltjes_limit(Complex alpha, Complex z) {
    if (!(alpha.imag() > 0.0)) throw ValidationError("stieltjes_limit needs Im alpha > 0");

    const CubicRoots at_target = solve_cubic(alpha, z);
    int positive = 0;
    Complex candidate{0.0, 0.0};
    for (const Complex& r : at_target.roots) {
        if (r.imag() > 0.0) {
            ++positive;
            candidate = r;
        }
    }
    if (positive == 1) return candidate;

    // Herglotz root is isolated high in the upper half-plane; walk down.
    const Complex start = alpha + Complex{0.0, 10.0};
    const CubicRoots top = solve_cubic(start, z);
    Complex current = top.roots[0];
    for (const Complex& r : top.roots)
        if (r.imag() > current.imag()) current = r;

    const int steps = 100;
    Complex a = start;
    for (int k = 1; k <= steps; ++k) {
        const Complex b = start + (alpha - start) * (static_cast<double>(k) / steps);
        current = track_segment(a, b, current, z, 5);
        a = b;
    }
    return current;
}

Thresholds support_thresholds(Complex z) {
    const double t = std::norm(z);  // |z|^2
    double x1_sq;
    double x2_sq;
    if (t == 0.0) {
        x1_sq = 4.0;
        x2_sq = -std::numeric_limits<double>::infinity();
    } else {
        // ((1+8t)^{3/2} - 1) / (8t) without cancellation
        const double g = std::expm1(1.5 * std::log1p(8.0 * t)) / (8.0 * t);
        x1_sq = (5.0 + 2.0 * t) / 2.0 + g;
        x2_sq = (5.0 + 2.0 * t) / 2.0 - g - 2.0 / (8.0 * t);
    }
    Thresholds th;
    th.x1 = std::sqrt(x1_sq);
    th.x2 = x2_sq > 0.0 ? std::sqrt(x2_sq) : 0.0;
    return th;
}

int root_count(double x, Complex z) {
    const Thresholds th = support_thresholds(z);
    const double ax = std::abs(x);
    if (std::abs(ax - th.x1) < kBoundaryTol ||
        (th.x2 > 0.0 && std::abs(ax - th.x2) < kBoundaryTol))
        throw BoundaryIndeterminate("root_count: x within 1e-6 of a support threshold");
    const CubicRoots roots = solve_cubic_shifted(Complex{x, 0.0}, z);
    int real = 0;
    for (const Complex& r : roots.roots)
        if (std::abs(r.imag()) <= kRealRootTol) ++real;
    return real >= 3 ? 3 : 1;
}

namespace {

bool all_roots_real_at(double x, Complex z) {
    const CubicRoots roots = solve_cubic(Complex{x, 0.0}, z);
    for (const Complex& r : roots.roots)
        if (std::abs(r.imag()) > kRealRootTol) return false;
    return true;
}

}  // namespace

double density_at(Complex z, double x) {
    if (all_roots_real_at(x, z)) return 0.0;
    const Complex s = stieltjes_limit(Complex{x, kEdgeV}, z);
    return std::max(0.0, s.imag() / M_PI);
}

std::vector<double> default_grid(Complex z, int points, double margin) {
    if (points < 3 || points % 2 == 0)
        throw ValidationError("default_grid: need an odd point count >= 3");
    const double edge = support_thresholds(z).x1 + margin;
    std::vector<double> grid(static_cast<std::size_t>(points));
    const int half = points / 2;
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] = edge * static_cast<double>(i - half) / half;
    grid[static_cast<std::size_t>(half)] = 0.0;
    return grid;
}

LimitSolution solve_density(Complex z, std::vector<double> x_grid) {
    if (x_grid.size() < 3) throw ValidationError("density grid too small");
    const Thresholds th = support_thresholds(z);
    const std::size_t m = x_grid.size();
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (!(x_grid[i] < x_grid[i + 1])) throw ValidationError("density grid must be ascending");
        if (x_grid[i + 1] - x_grid[i] > th.x1 / 200.0)
            throw ValidationError("density grid spacing exceeds x1/200");
    }
    for (std::size_t i = 0; i < m; ++i)
        if (std::abs(x_grid[i] + x_grid[m - 1 - i]) > 1e-9)
            throw ValidationError("density grid must be symmetric about 0");
    if (x_grid.back() < th.x1)
        throw ValidationError("density grid must cover [-x1, x1]");

    LimitSolution sol;
    sol.z = z;
    sol.x1 = th.x1;
    sol.x2 = th.x2;
    sol.x = std::move(x_grid);
    sol.density.resize(m);
    for (std::size_t i = 0; i < m; ++i) sol.density[i] = density_at(z, sol.x[i]);
    sol.cdf.resize(m);
    sol.cdf[0] = 0.0;
    for (std::size_t i = 1; i < m; ++i)
        sol.cdf[i] = sol.cdf[i - 1] +
                     0.5 * (sol.density[i] + sol.density[i - 1]) * (sol.x[i] - sol.x[i - 1]);
    return sol;
}

double LimitSolution::cdf_at(double xq) const {
    if (xq <= x.front()) return 0.0;
    if (xq >= x.back()) return std::min(1.0, cdf.back());
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t hi = static_cast<std::size_t>(it - x.begin());
    const std::size_t lo = hi - 1;
    const double w = (xq - x[lo]) / (x[hi] - x[lo]);
    const double v = cdf[lo] + w * (cdf[hi] - cdf[lo]);
    return std::clamp(v, 0.0, 1.0);
}

double LimitSolution::squared_cdf_at(double xq) const {
    if (xq <= 0.0) return 0.0;
    return std::clamp(2.0 * cdf_at(std::sqrt(xq)) - 1.0, 0.0, 1.0);
}

double mp_density(double x) {
    if (x <= 0.0 || x >= 4.0) return 0.0;
    return std::sqrt((4.0 - x) / x) / (2.0 * M_PI);
}

double mp_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 4.0) return 1.0;
    return 2.0 / M_PI * std::asin(std::sqrt(x) / 2.0) + std::sqrt(x * (4.0 - x)) / (2.0 * M_PI);
}

}  // namespace circlaw
