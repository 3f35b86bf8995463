#pragma once

#include "krein/cayley.hpp"
#include "krein/contraction.hpp"
#include "krein/linalg.hpp"
#include "krein/types.hpp"

namespace krein {

/// Block data extracted from a symmetric partial contraction T: the
/// compression A to dom(T), the column parameter Gamma2, and the defect data
/// of both. This is the coordinate system in which every selfadjoint
/// contraction extension of T is a one-parameter completion.
struct ExtensionParametrization {
  Index ambient_dim = 0;
  Subspace dom_t = Subspace::zero(0);       ///< V, n x k
  Subspace complement = Subspace::zero(0);  ///< W, n x (n-k); equals ker(I+S*)
  Matrix a;                                 ///< k x k hermitian contraction
  Matrix gamma2;            ///< (n-k) x dim(D_A), defect-basis coordinates
  Matrix defect_a;          ///< D_A, k x k
  Subspace space_a = Subspace::zero(0);  ///< defect space of A inside C^k
  Matrix defect_gamma2_star;  ///< D_{Gamma2*} on complement coordinates
  Subspace space_gamma2_star = Subspace::zero(0);  ///< inside C^{n-k}

  Index dom_dim() const noexcept { return dom_t.dim(); }
  /// Dimension of the parameter space D_{Gamma2*}.
  Index defect_dim() const noexcept { return space_gamma2_star.dim(); }
  /// Gamma2 as a map on all of C^k (zero on the complement of D_A).
  Matrix gamma2_ambient() const { return gamma2 * space_a.basis().adjoint(); }
  /// The original partial operator's action, reassembled.
  Matrix action() const;
};

/// The free parameter: a hermitian contraction on D_{Gamma2*} coordinates.
struct GammaParameter {
  Matrix matrix;

  static GammaParameter krein(Index d) {
    return GammaParameter{Matrix::Identity(d, d)};
  }
  static GammaParameter friedrichs(Index d) {
    return GammaParameter{-Matrix::Identity(d, d)};
  }
  static GammaParameter neutral(Index d) {
    return GammaParameter{Matrix::Zero(d, d)};
  }
};

enum class Extremal { krein, friedrichs };
enum class MembershipRoute { direct, interval };
enum class Order { le, ge, equal, incomparable };

struct DomainDecomposition {
  Subspace dom_friedrichs;  ///< ran(I + T~(-I))
  Subspace correction;      ///< D_{Gamma2*}(I+Gamma)D_{Gamma2*} ker(I+S*)
  Subspace dom_gamma;       ///< ran(I + T~(Gamma))
  bool verified = false;    ///< dom_friedrichs + correction == dom_gamma
};

/// Extracts the extension coordinates of a symmetric partial contraction.
ExtensionParametrization parametrize(const PartialOperator& t,
                                     const Tolerance& tol);

/// The selfadjoint contraction extension T~(Gamma) in ambient coordinates.
Matrix extend_contraction(const ExtensionParametrization& p,
                          const GammaParameter& gamma, const Tolerance& tol);

/// T~(I) (krein) or T~(-I) (friedrichs); cross-checked against the closed
/// forms I - Gamma2 (I+A) Gamma2* and Gamma2 (I-A) Gamma2* - I.
Matrix extremal(const ExtensionParametrization& p, Extremal which,
                const Tolerance& tol);

/// The unique Gamma with extend_contraction(p, Gamma) = B; rejects B that is
/// not a hermitian contraction extension of T.
GammaParameter recover_gamma(const ExtensionParametrization& p, const Matrix& b,
                             const Tolerance& tol);

/// Membership in the extension set, decided either directly (hermitian
/// contraction restricting to T) or through the operator interval
/// [T~(-I), T~(I)]. Total: malformed input yields false, never throws.
bool is_extension_member(const ExtensionParametrization& p, const Matrix& b,
                         MembershipRoute route, const Tolerance& tol);

/// S~(Gamma) = inverse Cayley transform of T~(Gamma).
SelfadjointRelation extension_relation(const ExtensionParametrization& p,
                                       const GammaParameter& gamma,
                                       const Tolerance& tol);

/// Order of two positive selfadjoint relations, decided on the Cayley side:
/// R1 <= R2 iff cayley(R1) >= cayley(R2). For everywhere defined operators a
/// form-definition cross-check must agree.
Order compare_extensions(const SelfadjointRelation& r1,
                         const SelfadjointRelation& r2, const Tolerance& tol);

/// dom(S~(Gamma)) = dom(F) + D_{Gamma2*}(I+Gamma)D_{Gamma2*} ker(I+S*),
/// with the subspace equality checked and reported in `verified`.
DomainDecomposition domain_decomposition(const ExtensionParametrization& p,
                                         const GammaParameter& gamma,
                                         const Tolerance& tol);

/// ran(I+A) inside ran((I+T)*) inside ran((I+A)^{1/2}); holds for every
/// valid parametrization, so a false return flags a library bug.
bool range_inclusion_check(const ExtensionParametrization& p,
                           const Tolerance& tol);

/// [[0, M], [M^H, N]].
Matrix assemble_offdiag_block(const Matrix& m, const Matrix& n_block);

/// The positivity criterion for that block: M = 0 and N PSD.
bool offdiag_block_criterion(const Matrix& m, const Matrix& n_block,
                             const Tolerance& tol);

const char* to_string(Order order);

}  // namespace krein
