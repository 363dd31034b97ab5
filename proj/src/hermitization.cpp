// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "circlaw/hermitization.hpp"

#include "circlaw/ensemble.hpp"
#include "circlaw/spectra.hpp"

namespace circlaw {

HermitizationW build_hermitization(const MatrixReal& base, Complex z) {
    if (base.rows() != base.cols())
        throw ValidationError("build_hermitization: base must be square");
    const int n = static_cast<int>(base.rows());
    const MatrixComplex b = shift_matrix(base, z);
    HermitizationW h;
    h.w = MatrixComplex::Zero(2 * n, 2 * n);
    h.w.topRightCorner(n, n) = b;
    h.w.bottomLeftCorner(n, n) = b.adjoint();
    h.z = z;
    h.n = n;
    return h;
}

Complex stieltjes_from_svs(std::span<const double> s, Complex alpha) {
    if (!(alpha.imag() > 0.0)) throw ValidationError("stieltjes transform needs Im alpha > 0");
    Complex sum{0.0, 0.0};
    for (double sv : s) sum += 1.0 / (sv - alpha) + 1.0 / (-sv - alpha);
    return sum / (2.0 * static_cast<double>(s.size()));
}

Complex stieltjes_squared_from_svs(std::span<const double> s, Complex w) {
    Complex sum{0.0, 0.0};
    for (double sv : s) sum += 1.0 / (sv * sv - w);
    return sum / static_cast<double>(s.size());
}

Complex stieltjes_empirical(const MatrixReal& base, Complex z, Complex alpha) {
    if (!(alpha.imag() > 0.0)) throw ValidationError("stieltjes_empirical needs Im alpha > 0");
    const std::vector<double> s = singular_values_via_hermitization(shift_matrix(base, z));
    return stieltjes_from_svs(s, alpha);
}

}  // namespace circlaw
