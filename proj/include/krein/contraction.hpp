#pragma once

#include "krein/linalg.hpp"
#include "krein/types.hpp"

namespace krein {

/// Row block [A  B]; valid when the concatenation is a contraction.
struct RowContraction {
  Matrix a;
  Matrix b;
};

/// Column block [A; C]; valid when the stack is a contraction.
struct ColContraction {
  Matrix a;
  Matrix c;
};

/// Everything a 2x2 contraction completion needs, with the free parameter
/// living in defect-basis coordinates. For the corner problem
///
///     [ A  B ]       B = D_{A*} Gamma1,   C = Gamma2 D_A,
///     [ C  ? ]
///
/// gamma1 maps the second domain summand into D_{A*} coordinates and gamma2
/// maps D_A coordinates into the second codomain summand.
struct CornerData {
  Matrix a;
  Matrix gamma1;  ///< dim(D_{A*}) x p'
  Matrix gamma2;  ///< r x dim(D_A)

  Matrix defect_a;            ///< D_A
  Matrix defect_a_star;       ///< D_{A*}
  Matrix defect_gamma1;       ///< D_{Gamma1}
  Matrix defect_gamma2_star;  ///< D_{Gamma2*}

  Subspace space_a;            ///< defect space of A
  Subspace space_a_star;       ///< defect space of A*
  Subspace space_gamma1;       ///< defect space of Gamma1
  Subspace space_gamma2_star;  ///< defect space of Gamma2*
};

/// The unique contraction C with X = D_{T1*} C D_{T2}, in defect-basis
/// coordinates (dim D_{T2} -> dim D_{T1*}), given that [[T1, X], [0, T2]]
/// is a contraction.
Matrix factor_offdiag(const Matrix& t1, const Matrix& x, const Matrix& t2,
                      const Tolerance& tol);

/// Extracts the unique corner parameters Gamma1, Gamma2 from a row and a
/// column contraction sharing the block A.
CornerData extract_gammas(const RowContraction& row, const ColContraction& col,
                          const Tolerance& tol);

/// The completion T(Gamma) = [[A, D_{A*}Gamma1], [Gamma2 D_A, X]] with
/// X = -Gamma2 A* Gamma1 + D_{Gamma2*} Gamma D_{Gamma1}. `gamma` is given in
/// defect-basis coordinates (dim D_{Gamma1} -> dim D_{Gamma2*}).
Matrix complete_corner(const CornerData& corner, const Matrix& gamma,
                       const Tolerance& tol);

}  // namespace krein
