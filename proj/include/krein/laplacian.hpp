#pragma once

#include <cstdint>
#include <vector>

#include "krein/cayley.hpp"
#include "krein/extensions.hpp"
#include "krein/oracle.hpp"
#include "krein/types.hpp"

namespace krein {

/// The minimal second-difference operator on an n-point grid: the full
/// tridiagonal (-1, 2, -1) matrix restricted to the interior coordinates
/// e_2 .. e_{n-1}. Positive, symmetric, with a two-dimensional complement
/// after the Cayley transform.
struct MinimalLaplacianProblem {
  Index n = 0;
  Matrix laplacian;
  PartialOperator minimal{Subspace::zero(0), Matrix(0, 0)};
};

MinimalLaplacianProblem minimal_laplacian(Index n);

struct SpectrumSummary {
  std::vector<double> finite;
  Index infinity_multiplicity = 0;
};

struct LaplacianDemoReport {
  Index n = 0;
  Index dom_dim = 0;
  Index complement_dim = 0;
  Index defect_dim = 0;

  SpectrumSummary krein;
  SpectrumSummary friedrichs;
  double krein_min_eigenvalue = 0.0;
  bool krein_kernel_detected = false;  ///< lambda_min(S_K) <= tol.psd

  Index dom_s_dim = 0;
  Index dom_friedrichs_dim = 0;
  Index dom_krein_dim = 0;

  long samples = 0;
  long order_failures = 0;
  long domain_failures = 0;
  long interlacing_failures = 0;
  double worst_order_residual = 0.0;
  double worst_domain_residual = 0.0;

  /// Interior Dirichlet block spectrum, recorded next to the Friedrichs
  /// finite spectrum for comparison; no equality is asserted.
  std::vector<double> dirichlet_spectrum;
  double dirichlet_vs_friedrichs_max_diff = 0.0;
};

/// Samples `gamma_samples` parameters, checks the sandwich order, the domain
/// decomposition and eigenvalue interlacing for each, and reports the
/// extremal spectra.
LaplacianDemoReport demo_report(const MinimalLaplacianProblem& prob,
                                long gamma_samples, std::uint64_t seed,
                                const Tolerance& tol, RunPolicy policy = {});

}  // namespace krein
