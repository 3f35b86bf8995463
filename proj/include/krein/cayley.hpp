#pragma once

#include <vector>

#include "krein/linalg.hpp"
#include "krein/types.hpp"

namespace krein {

/// A linear map defined on a closed subspace of the ambient space. Column j
/// of `action` is the image of column j of the domain basis.
struct PartialOperator {
  Subspace domain;
  Matrix action;

  Index ambient_dim() const noexcept { return domain.ambient_dim(); }
  Index dom_dim() const noexcept { return domain.dim(); }

  /// Compression to the domain: basis^H action.
  Matrix compression() const { return domain.basis().adjoint() * action; }

  bool is_symmetric(const Tolerance& tol) const;
  bool is_contraction(const Tolerance& tol) const;
  bool is_positive(const Tolerance& tol) const;

  void require_symmetric(const Tolerance& tol) const;
  void require_contraction(const Tolerance& tol) const;
  void require_positive(const Tolerance& tol) const;
};

/// Residual between two partial operators: how far the domains and the
/// actions (matched through the change of basis) are from agreeing.
double partial_operator_distance(const PartialOperator& p,
                                 const PartialOperator& q);

/// A positive selfadjoint linear relation: an operator part on its domain
/// plus a multivalued part on the orthogonal complement. The finite
/// dimensional carrier of extensions whose inverse Cayley transform hits the
/// eigenvalue -1.
class SelfadjointRelation {
 public:
  /// `action` is dim(domain) x dim(domain), hermitian with spectrum bounded
  /// below by -tol.psd, expressed in the coordinates of `domain`'s basis.
  SelfadjointRelation(Subspace domain, Matrix action, Subspace multivalued,
                      const Tolerance& tol);

  Index ambient_dim() const noexcept { return domain_.ambient_dim(); }
  const Subspace& domain() const noexcept { return domain_; }
  const Matrix& action() const noexcept { return action_; }
  const Subspace& multivalued_part() const noexcept { return multivalued_; }

  bool everywhere_defined() const noexcept {
    return multivalued_.dim() == 0;
  }

  /// Dense matrix of the operator part, Q action Q^H (zero on the
  /// multivalued part's directions).
  Matrix operator_matrix() const;

  /// (I + R)^{-1} as an everywhere defined matrix; maps xi to the unique h
  /// with xi in (I + R)h.
  Matrix resolvent() const;

  /// The Cayley image (I - R)(I + R)^{-1} = 2 (I + R)^{-1} - I, a hermitian
  /// contraction on the whole space.
  Matrix cayley() const;

  /// Whether the pair (xi, eta) belongs to the relation's graph within tol.
  bool graph_contains(const Vector& xi, const Vector& eta,
                      const Tolerance& tol) const;

 private:
  Subspace domain_;
  Matrix action_;
  Subspace multivalued_;
};

struct RelationSpectrum {
  std::vector<double> finite;    ///< ascending
  Index infinity_multiplicity;
};

/// S0 - m0 I on the same domain.
PartialOperator shift_lower_bound(const PartialOperator& s0, double m0,
                                  const Tolerance& tol = Tolerance{});

/// T = (I - S)(I + S)^{-1} on ran(I + S), for S symmetric positive. The
/// result is a symmetric partial contraction with dom(T) = ran(I + S).
PartialOperator cayley_transform(const PartialOperator& s, const Tolerance& tol);

/// S = (I - T)(I + T)^{-1} for an everywhere defined hermitian contraction,
/// extended to a selfadjoint relation when I + T is singular.
SelfadjointRelation inverse_cayley(const Matrix& t, const Tolerance& tol);

/// S = (I - T)(I + T)^{-1} for a partial symmetric contraction with I + T
/// injective; round-trip companion of cayley_transform.
PartialOperator inverse_cayley_partial(const PartialOperator& t,
                                       const Tolerance& tol);

/// Finite eigenvalues of the operator part plus the multiplicity of the
/// eigenvalue at infinity; counts always add up to the ambient dimension.
RelationSpectrum relation_spectrum(const SelfadjointRelation& r,
                                   const Tolerance& tol);

}  // namespace krein
