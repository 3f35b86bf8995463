#pragma once

#include <utility>

#include "krein/types.hpp"

namespace krein {

/// A closed subspace of C^n, stored as a matrix whose columns form an
/// orthonormal basis. Projections are derived (P = B B^H), never stored.
class Subspace {
 public:
  /// `basis` must be ambient_dim x k with orthonormal columns within
  /// `ortho_tol`.
  Subspace(Index ambient_dim, Matrix basis, double ortho_tol = 1e-10);

  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);

  Index ambient_dim() const noexcept { return ambient_dim_; }
  Index dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  /// Orthogonal projection onto the subspace, B B^H.
  Matrix projector() const;

 private:
  Index ambient_dim_;
  Matrix basis_;
};

enum class SubspaceRelation { equal, first_in_second, second_in_first, incomparable };

struct HermitianEig {
  RealVector eigenvalues;  ///< ascending
  Matrix eigenvectors;     ///< unitary, column j pairs with eigenvalues[j]
};

struct DefectPair {
  Matrix defect_operator;  ///< D_C = (I - C^H C)^{1/2}
  Subspace defect_space;   ///< closure of ran(D_C)
};

bool all_finite(const Matrix& m);

Matrix hermitian_part(const Matrix& m);

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const Matrix& m);

double hermitian_residual(const Matrix& m);

bool is_hermitian(const Matrix& m, const Tolerance& tol);

bool is_contraction(const Matrix& m, const Tolerance& tol);

/// Smallest eigenvalue of the hermitian part; +inf for empty matrices.
double min_eigenvalue(const Matrix& m);

/// lambda_min >= -tol.psd * max(1, ||m||).
bool is_psd(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis of the numerical column space of `columns`. Rank is the
/// number of singular values above rank_rel times the largest one.
Subspace orthonormal_basis(const Matrix& columns, const Tolerance& tol);

/// As orthonormal_basis, but with an absolute singular-value cutoff. Lets a
/// caller make rank decisions for several related matrices at one common
/// scale.
Subspace orthonormal_basis_absolute(const Matrix& columns, double cutoff);

/// Spectral decomposition of the hermitization (M + M^H)/2. Rejects inputs
/// whose anti-hermitian part exceeds tol.compare. Eigenvector phases are
/// canonicalized so repeated runs on identical bytes agree.
HermitianEig hermitian_eig(const Matrix& m, const Tolerance& tol);

/// Hermitian PSD square root. Eigenvalues in [-tol.psd, 0) are clamped to 0;
/// anything lower is rejected.
Matrix psd_sqrt(const Matrix& m, const Tolerance& tol);

/// Defect operator and defect space of a contraction.
DefectPair defect_pair(const Matrix& c, const Tolerance& tol);

/// Unique G with D G = X and ran(G) inside ran(D), for D hermitian PSD.
/// Rejects X with components outside ran(D) ("inconsistent factorization").
Matrix solve_on_range(const Matrix& d, const Matrix& x, const Tolerance& tol);

SubspaceRelation subspace_relation(const Subspace& u, const Subspace& v,
                                   const Tolerance& tol);

/// Residual of the containment U `subset` V: ||(I - P_V) basis_U|| in the
/// spectral norm (the sine of the largest principal angle).
double containment_residual(const Subspace& u, const Subspace& v);

Subspace subspace_sum(const Subspace& u, const Subspace& v, const Tolerance& tol);

Subspace orthogonal_complement(const Subspace& u);

}  // namespace krein
