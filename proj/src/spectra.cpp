// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "circlaw/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "circlaw/ensemble.hpp"
#include "circlaw/hermitization.hpp"

namespace circlaw {

namespace {

void check_finite(const MatrixComplex& m) {
    if (!m.allFinite()) throw ValidationError("matrix has non-finite entries");
}

std::vector<double> descending(Eigen::VectorXd v) {
    std::vector<double> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

}  // namespace

ComplexSpectrum eigenvalues(const MatrixComplex& m) {
    if (m.rows() != m.cols()) throw ValidationError("eigenvalues: matrix must be square");
    check_finite(m);
    Eigen::ComplexSchur<MatrixComplex> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw SolverError("complex Schur iteration did not converge");
    ComplexSpectrum spec;
    const int n = static_cast<int>(m.rows());
    spec.values.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) spec.values.push_back(schur.matrixT()(i, i));
    spec.meta.n = n;
    return spec;
}

ComplexSpectrum eigenvalues(const MatrixReal& m) {
    if (m.rows() != m.cols()) throw ValidationError("eigenvalues: matrix must be square");
    Eigen::EigenSolver<MatrixReal> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw SolverError("real Schur iteration did not converge");
    ComplexSpectrum spec;
    const auto& ev = solver.eigenvalues();
    spec.values.assign(ev.data(), ev.data() + ev.size());
    spec.meta.n = static_cast<int>(m.rows());
    return spec;
}

std::vector<double> singular_values(const MatrixComplex& m) {
    if (m.rows() != m.cols()) throw ValidationError("singular_values: matrix must be square");
    check_finite(m);
    Eigen::BDCSVD<MatrixComplex> svd(m);
    return descending(svd.singularValues());
}

std::vector<double> singular_values(const MatrixReal& m) {
    Eigen::BDCSVD<MatrixReal> svd(m);
    return descending(svd.singularValues());
}

std::vector<double> singular_values_via_hermitization(const MatrixComplex& m) {
    if (m.rows() != m.cols()) throw ValidationError("singular_values: matrix must be square");
    check_finite(m);
    const int n = static_cast<int>(m.rows());
    MatrixComplex w = MatrixComplex::Zero(2 * n, 2 * n);
    w.topRightCorner(n, n) = m;
    w.bottomLeftCorner(n, n) = m.adjoint();
    Eigen::SelfAdjointEigenSolver<MatrixComplex> eig(w, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        throw SolverError("hermitization eigensolver did not converge");
    // spectrum is {+-s_j}; the top n eigenvalues are the singular values
    std::vector<double> s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = std::max(0.0, eig.eigenvalues()(2 * n - 1 - i));
    return s;  // already descending
}

std::vector<double> squared_singular_values_gram(const MatrixComplex& m) {
    check_finite(m);
    const MatrixComplex gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<MatrixComplex> eig(gram, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw SolverError("gram eigensolver did not converge");
    std::vector<double> sq(static_cast<std::size_t>(m.cols()));
    for (int i = 0; i < m.cols(); ++i)
        sq[static_cast<std::size_t>(i)] = std::max(0.0, eig.eigenvalues()(i));
    std::sort(sq.begin(), sq.end(), std::greater<double>());
    return sq;
}

EmpiricalCDF::EmpiricalCDF(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("empirical CDF needs at least one point");
    for (double p : points_)
        if (!std::isfinite(p)) throw ValidationError("empirical CDF points must be finite");
    std::sort(points_.begin(), points_.end());
}

double EmpiricalCDF::operator()(double x) const {
    const auto it = std::upper_bound(points_.begin(), points_.end(), x);
    return static_cast<double>(it - points_.begin()) / static_cast<double>(points_.size());
}

EmpiricalCDF squared_sv_measure(const MatrixReal& base, Complex z, double r, std::uint64_t seed,
                                std::uint64_t trial) {
    if (base.rows() != base.cols()) throw ValidationError("squared_sv_measure: base must be square");
    std::vector<double> s;
    if (z == Complex{0.0, 0.0} && r == 0.0) {
        s = singular_values(base);
    } else {
        const MatrixComplex shifted =
            (r > 0.0) ? smooth_matrix(base, z, r, seed, trial) : shift_matrix(base, z);
        s = singular_values_via_hermitization(shifted);
    }
    std::vector<double> sq(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) sq[i] = s[i] * s[i];
    return EmpiricalCDF(std::move(sq));
}

EmpiricalCDF symmetrize_cdf(const EmpiricalCDF& f) {
    std::vector<double> sym;
    sym.reserve(2 * f.points().size());
    for (double p : f.points()) {
        if (p < 0.0) throw ValidationError("symmetrize_cdf: support point below 0");
        const double s = std::sqrt(p);
        sym.push_back(s);
        sym.push_back(-s);
    }
    return EmpiricalCDF(std::move(sym));
}

Esd2d::Esd2d(const ComplexSpectrum& spectrum) : values_(spectrum.values) {
    if (values_.empty()) throw ValidationError("esd_2d: empty spectrum");
}

double Esd2d::operator()(double x, double y) const {
    std::size_t count = 0;
    for (const Complex& v : values_)
        if (v.real() <= x && v.imag() <= y) ++count;
    return static_cast<double>(count) / static_cast<double>(values_.size());
}

std::vector<double> Esd2d::radii() const {
    std::vector<double> r(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) r[i] = std::abs(values_[i]);
    return r;
}

std::vector<double> Esd2d::angles() const {
    std::vector<double> a(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) a[i] = std::arg(values_[i]);
    return a;
}

Esd2d esd_2d(const ComplexSpectrum& spectrum) { return Esd2d(spectrum); }

}  // namespace circlaw
