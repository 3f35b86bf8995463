#include "krein/contraction.hpp"

#include <cmath>

namespace krein {

namespace {

void require_contraction(const Matrix& m, const Tolerance& tol,
                         const char* what) {
  const double norm = spectral_norm(m);
  if (!all_finite(m) || norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", norm - 1.0,
                         std::string(what) + " is not a contraction");
  }
}

}  // namespace

Matrix factor_offdiag(const Matrix& t1, const Matrix& x, const Matrix& t2,
                      const Tolerance& tol) {
  require_contraction(t1, tol, "factor_offdiag: T1");
  require_contraction(t2, tol, "factor_offdiag: T2");
  if (x.rows() != t1.rows() || x.cols() != t2.cols()) {
    throw InvariantError("shape", 0.0,
                         "factor_offdiag: X must be rows(T1) x cols(T2)");
  }

  Matrix block(t1.rows() + t2.rows(), t1.cols() + t2.cols());
  block.setZero();
  block.topLeftCorner(t1.rows(), t1.cols()) = t1;
  block.topRightCorner(t1.rows(), t2.cols()) = x;
  block.bottomRightCorner(t2.rows(), t2.cols()) = t2;
  require_contraction(block, tol, "factor_offdiag: [[T1, X], [0, T2]]");

  const DefectPair d1s = defect_pair(t1.adjoint(), tol);  // D_{T1*}
  const DefectPair d2 = defect_pair(t2, tol);             // D_{T2}

  // X = D_{T1*} C D_{T2}: peel the factors off one side at a time.
  const Matrix y = solve_on_range(d1s.defect_operator, x, tol);
  const Matrix z = solve_on_range(d2.defect_operator, y.adjoint(), tol);
  const Matrix c_ambient = z.adjoint();

  Matrix c = d1s.defect_space.basis().adjoint() * c_ambient *
             d2.defect_space.basis();
  const double norm = spectral_norm(c);
  if (norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", norm - 1.0,
                         "factor_offdiag: extracted factor is not a "
                         "contraction; input block was inconsistent");
  }
  return c;
}

CornerData extract_gammas(const RowContraction& row, const ColContraction& col,
                          const Tolerance& tol) {
  if (row.a.rows() != col.a.rows() || row.a.cols() != col.a.cols() ||
      spectral_norm(row.a - col.a) > tol.compare) {
    throw InvariantError("shared_block", spectral_norm(row.a - col.a),
                         "extract_gammas: row and column must share A");
  }
  const Matrix& a = row.a;
  if (row.b.rows() != a.rows()) {
    throw InvariantError("shape", 0.0, "extract_gammas: B row count");
  }
  if (col.c.cols() != a.cols()) {
    throw InvariantError("shape", 0.0, "extract_gammas: C column count");
  }

  Matrix row_block(a.rows(), a.cols() + row.b.cols());
  row_block << a, row.b;
  require_contraction(row_block, tol, "extract_gammas: [A B]");
  Matrix col_block(a.rows() + col.c.rows(), a.cols());
  col_block << a, col.c;
  require_contraction(col_block, tol, "extract_gammas: [A; C]");

  CornerData out{.a = a,
                 .gamma1 = Matrix(),
                 .gamma2 = Matrix(),
                 .defect_a = Matrix(),
                 .defect_a_star = Matrix(),
                 .defect_gamma1 = Matrix(),
                 .defect_gamma2_star = Matrix(),
                 .space_a = Subspace::zero(a.cols()),
                 .space_a_star = Subspace::zero(a.rows()),
                 .space_gamma1 = Subspace::zero(row.b.cols()),
                 .space_gamma2_star = Subspace::zero(col.c.rows())};

  const DefectPair da = defect_pair(a, tol);
  const DefectPair das = defect_pair(a.adjoint(), tol);
  out.defect_a = da.defect_operator;
  out.space_a = da.defect_space;
  out.defect_a_star = das.defect_operator;
  out.space_a_star = das.defect_space;

  // B = D_{A*} Gamma1 with Gamma1 valued in the defect space of A*.
  const Matrix g1_ambient = solve_on_range(out.defect_a_star, row.b, tol);
  out.gamma1 = out.space_a_star.basis().adjoint() * g1_ambient;

  // C = Gamma2 D_A with Gamma2 defined on the defect space of A.
  const Matrix g2_ambient_adj = solve_on_range(out.defect_a, col.c.adjoint(), tol);
  out.gamma2 = g2_ambient_adj.adjoint() * out.space_a.basis();

  const double n1 = spectral_norm(out.gamma1);
  if (n1 > 1.0 + tol.contraction) {
    throw InvariantError("contraction", n1 - 1.0,
                         "extract_gammas: Gamma1 exceeds norm 1, so the row "
                         "block was not a contraction");
  }
  const double n2 = spectral_norm(out.gamma2);
  if (n2 > 1.0 + tol.contraction) {
    throw InvariantError("contraction", n2 - 1.0,
                         "extract_gammas: Gamma2 exceeds norm 1, so the "
                         "column block was not a contraction");
  }

  const DefectPair dg1 = defect_pair(out.gamma1, tol);
  out.defect_gamma1 = dg1.defect_operator;
  out.space_gamma1 = dg1.defect_space;
  const DefectPair dg2s = defect_pair(out.gamma2.adjoint(), tol);
  out.defect_gamma2_star = dg2s.defect_operator;
  out.space_gamma2_star = dg2s.defect_space;
  return out;
}

Matrix complete_corner(const CornerData& corner, const Matrix& gamma,
                       const Tolerance& tol) {
  const Index q = corner.a.rows();
  const Index p = corner.a.cols();
  const Index p2 = corner.gamma1.cols();
  const Index r = corner.gamma2.rows();

  if (gamma.rows() != corner.space_gamma2_star.dim() ||
      gamma.cols() != corner.space_gamma1.dim()) {
    throw InvariantError("shape", 0.0,
                         "complete_corner: Gamma must map D_{Gamma1} "
                         "coordinates to D_{Gamma2*} coordinates");
  }
  const double norm = spectral_norm(gamma);
  if (!all_finite(gamma) || norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", norm - 1.0,
                         "complete_corner: Gamma is not a contraction");
  }

  const Matrix& ea = corner.space_a.basis();
  const Matrix& eas = corner.space_a_star.basis();
  const Matrix upper_right = corner.defect_a_star * eas * corner.gamma1;
  const Matrix lower_left = corner.gamma2 * ea.adjoint() * corner.defect_a;
  const Matrix cross =
      corner.gamma2 * (ea.adjoint() * corner.a.adjoint() * eas) * corner.gamma1;
  const Matrix free_term = corner.defect_gamma2_star *
                           corner.space_gamma2_star.basis() * gamma *
                           corner.space_gamma1.basis().adjoint() *
                           corner.defect_gamma1;

  Matrix full(q + r, p + p2);
  full.topLeftCorner(q, p) = corner.a;
  full.topRightCorner(q, p2) = upper_right;
  full.bottomLeftCorner(r, p) = lower_left;
  full.bottomRightCorner(r, p2) = -cross + free_term;

  const double full_norm = spectral_norm(full);
  if (full_norm > 1.0 + 10.0 * tol.contraction) {
    throw InternalError(
        "complete_corner: completion exceeded the contraction bound, corner "
        "data is corrupted");
  }
  return full;
}

}  // namespace krein
