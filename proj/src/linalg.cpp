#include "krein/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace krein {

namespace {

// Rotate each column so its largest-modulus entry is real and positive.
// Stabilizes the phase freedom of singular/eigenvectors for golden outputs.
void canonicalize_phases(Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    Index imax = 0;
    double best = -1.0;
    for (Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (best > 0.0) {
      const Complex phase = m(imax, j) / best;
      m.col(j) *= std::conj(phase);
    }
  }
}

void require_finite(const Matrix& m, const char* where) {
  if (!all_finite(m)) {
    throw InvariantError("finite_entries", std::numeric_limits<double>::infinity(),
                         std::string(where) + ": input has NaN/Inf entries");
  }
}

}  // namespace

Subspace::Subspace(Index ambient_dim, Matrix basis, double ortho_tol)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_dim_) {
    throw InvariantError("subspace_shape",
                         static_cast<double>(basis_.rows() - ambient_dim_),
                         "basis row count must equal the ambient dimension");
  }
  if (basis_.cols() > ambient_dim_) {
    throw InvariantError("subspace_shape",
                         static_cast<double>(basis_.cols() - ambient_dim_),
                         "subspace dimension exceeds ambient dimension");
  }
  require_finite(basis_, "Subspace");
  if (basis_.cols() > 0) {
    const Matrix gram = basis_.adjoint() * basis_;
    const double defect =
        (gram - Matrix::Identity(gram.rows(), gram.cols())).norm();
    if (defect > ortho_tol) {
      throw InvariantError("subspace_orthonormal", defect,
                           "basis columns are not orthonormal");
    }
  }
}

Subspace Subspace::zero(Index ambient_dim) {
  return Subspace(ambient_dim, Matrix(ambient_dim, 0));
}

Subspace Subspace::full(Index ambient_dim) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

Matrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double hermitian_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return spectral_norm(m - m.adjoint());
}

bool is_hermitian(const Matrix& m, const Tolerance& tol) {
  return m.rows() == m.cols() && all_finite(m) &&
         hermitian_residual(m) <= tol.compare;
}

bool is_contraction(const Matrix& m, const Tolerance& tol) {
  return all_finite(m) && spectral_norm(m) <= 1.0 + tol.contraction;
}

double min_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Matrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols() || !all_finite(m)) return false;
  if (m.rows() == 0) return true;
  return min_eigenvalue(m) >= -tol.psd * std::max(1.0, spectral_norm(m));
}

namespace {

// rel_factor scales the largest singular value; abs_cutoff is taken as is.
Subspace basis_impl(const Matrix& columns, double rel_factor, double abs_cutoff) {
  require_finite(columns, "orthonormal_basis");
  const Index n = columns.rows();
  if (columns.cols() == 0 || columns.norm() == 0.0) return Subspace::zero(n);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double cutoff = std::max(rel_factor * sigma(0), abs_cutoff);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  Matrix basis = svd.matrixU().leftCols(rank);
  canonicalize_phases(basis);
  return Subspace(n, std::move(basis));
}

}  // namespace

Subspace orthonormal_basis(const Matrix& columns, const Tolerance& tol) {
  return basis_impl(columns, tol.rank_rel, 0.0);
}

Subspace orthonormal_basis_absolute(const Matrix& columns, double cutoff) {
  return basis_impl(columns, 0.0, cutoff);
}

HermitianEig hermitian_eig(const Matrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) {
    throw InvariantError("square", static_cast<double>(m.rows() - m.cols()),
                         "hermitian_eig needs a square matrix");
  }
  require_finite(m, "hermitian_eig");
  const double res = hermitian_residual(m);
  if (res > tol.compare) {
    throw InvariantError("hermitian", res,
                         "matrix is not hermitian within tol.compare");
  }
  HermitianEig out;
  if (m.rows() == 0) {
    out.eigenvalues = RealVector(0);
    out.eigenvectors = Matrix(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  if (es.info() != Eigen::Success) {
    throw InternalError("hermitian eigensolver failed to converge");
  }
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  canonicalize_phases(out.eigenvectors);
  return out;
}

namespace {

// Shared PSD square-root kernel with an explicit clamp window.
Matrix psd_sqrt_slack(const Matrix& m, const Tolerance& tol, double slack) {
  const HermitianEig eig = hermitian_eig(m, tol);
  if (eig.eigenvalues.size() == 0) return Matrix(0, 0);
  const double lambda_min = eig.eigenvalues(0);
  if (lambda_min < -slack) {
    throw InvariantError("psd", -lambda_min,
                         "matrix has an eigenvalue below the PSD slack");
  }
  RealVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  Matrix result = eig.eigenvectors * roots.asDiagonal() *
                  eig.eigenvectors.adjoint();
  return hermitian_part(result);
}

}  // namespace

Matrix psd_sqrt(const Matrix& m, const Tolerance& tol) {
  return psd_sqrt_slack(m, tol, tol.psd);
}

DefectPair defect_pair(const Matrix& c, const Tolerance& tol) {
  require_finite(c, "defect_pair");
  const double norm = spectral_norm(c);
  if (norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", norm - 1.0,
                         "defect_pair input is not a contraction");
  }
  const Index p = c.cols();
  const Matrix e = hermitian_part(Matrix::Identity(p, p) - c.adjoint() * c);
  const HermitianEig eig = hermitian_eig(e, tol);
  // ||C|| <= 1 + tol.contraction only bounds lambda_min(E) by about
  // -2 tol.contraction, so the clamp window is widened accordingly.
  if (p > 0 && eig.eigenvalues(0) < -(tol.psd + 2.0 * tol.contraction)) {
    throw InvariantError("psd", -eig.eigenvalues(0),
                         "defect operand left the unit ball");
  }
  // The rank decision happens on I - C^H C, where roundoff sits at machine
  // scale; deciding on its square root would inflate that noise to
  // sqrt(eps), right at the cutoff. Dropped directions become exact zeros
  // of D, so later inversions on ran(D) see a clean spectral gap.
  const double lambda_max = p > 0 ? eig.eigenvalues(p - 1) : 0.0;
  const double noise_floor =
      64.0 * static_cast<double>(std::max<Index>(p, 1)) *
      std::numeric_limits<double>::epsilon();
  const double cutoff = std::max(tol.rank_rel * lambda_max, noise_floor);
  Index rank = 0;
  RealVector roots = RealVector::Zero(p);
  for (Index i = 0; i < p; ++i) {
    if (eig.eigenvalues(i) > cutoff) {
      roots(i) = std::sqrt(eig.eigenvalues(i));
      ++rank;
    }
  }
  const Matrix d = hermitian_part(eig.eigenvectors * roots.asDiagonal() *
                                  eig.eigenvectors.adjoint());
  Matrix basis(p, rank);
  Index col = 0;
  for (Index i = 0; i < p; ++i) {
    if (eig.eigenvalues(i) > cutoff) basis.col(col++) = eig.eigenvectors.col(i);
  }
  return DefectPair{d, Subspace(p, std::move(basis))};
}

Matrix solve_on_range(const Matrix& d, const Matrix& x, const Tolerance& tol) {
  if (d.rows() != x.rows()) {
    throw InvariantError("shape", static_cast<double>(d.rows() - x.rows()),
                         "solve_on_range: row counts of D and X differ");
  }
  require_finite(x, "solve_on_range");
  const HermitianEig eig = hermitian_eig(d, tol);
  const double lambda_max =
      eig.eigenvalues.size() == 0 ? 0.0 : eig.eigenvalues.maxCoeff();
  if (eig.eigenvalues.size() > 0 &&
      eig.eigenvalues(0) < -(tol.psd + 2.0 * tol.contraction)) {
    throw InvariantError("psd", -eig.eigenvalues(0),
                         "solve_on_range: D is not positive semidefinite");
  }
  const double cutoff = tol.rank_rel * lambda_max;
  RealVector inv = RealVector::Zero(eig.eigenvalues.size());
  for (Index i = 0; i < inv.size(); ++i) {
    if (eig.eigenvalues(i) > cutoff) inv(i) = 1.0 / eig.eigenvalues(i);
  }
  const Matrix g = eig.eigenvectors * inv.asDiagonal() *
                   eig.eigenvectors.adjoint() * x;
  const double residual = spectral_norm(d * g - x);
  const double bound = tol.compare * std::max(1.0, spectral_norm(x));
  if (residual > bound) {
    throw InvariantError("inconsistent_factorization", residual,
                         "solve_on_range: X is not in the range of D");
  }
  return g;
}

double containment_residual(const Subspace& u, const Subspace& v) {
  if (u.dim() == 0) return 0.0;
  const Matrix rest = u.basis() - v.projector() * u.basis();
  return spectral_norm(rest);
}

SubspaceRelation subspace_relation(const Subspace& u, const Subspace& v,
                                   const Tolerance& tol) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw InvariantError(
        "ambient_dim", static_cast<double>(u.ambient_dim() - v.ambient_dim()),
        "subspace_relation: ambient dimensions differ");
  }
  const bool u_in_v = containment_residual(u, v) <= tol.compare;
  const bool v_in_u = containment_residual(v, u) <= tol.compare;
  if (u_in_v && v_in_u) return SubspaceRelation::equal;
  if (u_in_v) return SubspaceRelation::first_in_second;
  if (v_in_u) return SubspaceRelation::second_in_first;
  return SubspaceRelation::incomparable;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v, const Tolerance& tol) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw InvariantError(
        "ambient_dim", static_cast<double>(u.ambient_dim() - v.ambient_dim()),
        "subspace_sum: ambient dimensions differ");
  }
  Matrix stacked(u.ambient_dim(), u.dim() + v.dim());
  stacked << u.basis(), v.basis();
  return orthonormal_basis(stacked, tol);
}

Subspace orthogonal_complement(const Subspace& u) {
  const Index n = u.ambient_dim();
  if (u.dim() == 0) return Subspace::full(n);
  if (u.dim() == n) return Subspace::zero(n);
  Eigen::JacobiSVD<Matrix> svd(u.basis(), Eigen::ComputeFullU);
  Matrix rest = svd.matrixU().rightCols(n - u.dim());
  canonicalize_phases(rest);
  return Subspace(n, std::move(rest));
}

}  // namespace krein
