#pragma once

#include <complex>

#include <Eigen/Dense>

#include "krein/errors.hpp"

namespace krein {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical cutoffs used by every decision the library makes.
struct Tolerance {
  /// Orthonormality defect allowed in stored subspace bases.
  double ortho = 1e-10;
  /// Relative singular/eigenvalue cutoff for rank decisions.
  double rank_rel = 1e-8;
  /// Slack below zero allowed when deciding positive semidefiniteness.
  double psd = 1e-9;
  /// Excess over operator norm 1 allowed for contractions.
  double contraction = 1e-9;
  /// Residual bound for equality checks.
  double compare = 1e-8;

  void validate() const {
    if (!(ortho > 0) || !(rank_rel > 0) || !(psd > 0) || !(contraction > 0) ||
        !(compare > 0)) {
      throw InvariantError("tolerance_positive", 0.0,
                           "all tolerance fields must be positive");
    }
  }
};

}  // namespace krein
