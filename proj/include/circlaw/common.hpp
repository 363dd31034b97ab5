// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace circlaw {

using Complex = std::complex<double>;
using MatrixReal = Eigen::MatrixXd;
using MatrixComplex = Eigen::MatrixXcd;

/// Bad parameters or out-of-domain inputs (CLI exit code 3).
class ValidationError : public std::invalid_argument {
  public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical routine failed to produce a usable result (CLI exit code 4).
class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// root_count at a point too close to a support threshold; the discriminant
/// is exactly zero on the threshold, so the count is not decidable there.
class BoundaryIndeterminate : public ValidationError {
  public:
    explicit BoundaryIndeterminate(const std::string& what) : ValidationError(what) {}
};

}  // namespace circlaw
