#include "krein/cayley.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace krein {

namespace {

// Equality-type checks scale with the operator: a positive operator fed to
// the Cayley transform can be large, and its roundoff grows with the norm.
double operator_scale(const Matrix& compression) {
  return std::max(1.0, spectral_norm(compression));
}

}  // namespace

bool PartialOperator::is_symmetric(const Tolerance& tol) const {
  const Matrix comp = compression();
  return all_finite(action) &&
         hermitian_residual(comp) <= tol.compare * operator_scale(comp);
}

bool PartialOperator::is_contraction(const Tolerance& tol) const {
  return all_finite(action) && spectral_norm(action) <= 1.0 + tol.contraction;
}

bool PartialOperator::is_positive(const Tolerance& tol) const {
  if (!is_symmetric(tol)) return false;
  const Matrix comp = compression();
  return min_eigenvalue(comp) >= -tol.psd * operator_scale(comp);
}

void PartialOperator::require_symmetric(const Tolerance& tol) const {
  const Matrix comp = compression();
  const double res = hermitian_residual(comp);
  if (!all_finite(action) || res > tol.compare * operator_scale(comp)) {
    throw InvariantError("symmetric", res,
                         "partial operator is not symmetric on its domain");
  }
}

void PartialOperator::require_contraction(const Tolerance& tol) const {
  const double norm = spectral_norm(action);
  if (!all_finite(action) || norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", norm - 1.0,
                         "partial operator is not a contraction");
  }
}

void PartialOperator::require_positive(const Tolerance& tol) const {
  require_symmetric(tol);
  const Matrix comp = compression();
  const double lam = min_eigenvalue(comp);
  if (lam < -tol.psd * operator_scale(comp)) {
    throw InvariantError("positive", -lam,
                         "partial operator is not positive on its domain");
  }
}

double partial_operator_distance(const PartialOperator& p,
                                 const PartialOperator& q) {
  if (p.ambient_dim() != q.ambient_dim()) {
    return std::numeric_limits<double>::infinity();
  }
  if (p.dom_dim() != q.dom_dim()) {
    return std::numeric_limits<double>::infinity();
  }
  double res = containment_residual(p.domain, q.domain);
  res = std::max(res, containment_residual(q.domain, p.domain));
  if (p.dom_dim() == 0) return res;
  // Match coordinates: columns of q's basis expressed in p's basis.
  const Matrix change = p.domain.basis().adjoint() * q.domain.basis();
  res = std::max(res, spectral_norm(p.action * change - q.action));
  return res;
}

SelfadjointRelation::SelfadjointRelation(Subspace domain, Matrix action,
                                         Subspace multivalued,
                                         const Tolerance& tol)
    : domain_(std::move(domain)),
      action_(std::move(action)),
      multivalued_(std::move(multivalued)) {
  if (domain_.ambient_dim() != multivalued_.ambient_dim()) {
    throw InvariantError("ambient_dim", 0.0,
                         "relation parts live in different ambient spaces");
  }
  if (domain_.dim() + multivalued_.dim() != domain_.ambient_dim()) {
    throw InvariantError(
        "relation_split",
        static_cast<double>(domain_.dim() + multivalued_.dim() -
                            domain_.ambient_dim()),
        "domain and multivalued part must span the whole space");
  }
  if (multivalued_.dim() > 0 && domain_.dim() > 0) {
    const double overlap =
        spectral_norm(domain_.basis().adjoint() * multivalued_.basis());
    if (overlap > tol.compare) {
      throw InvariantError("relation_orthogonal", overlap,
                           "multivalued part is not orthogonal to the domain");
    }
  }
  if (action_.rows() != domain_.dim() || action_.cols() != domain_.dim()) {
    throw InvariantError("shape", 0.0,
                         "relation action must be square on domain coordinates");
  }
  const double herm = hermitian_residual(action_);
  if (action_.rows() > 0 && herm > tol.compare) {
    throw InvariantError("symmetric", herm, "relation action is not hermitian");
  }
  const double lam = min_eigenvalue(action_);
  if (action_.rows() > 0 && lam < -tol.psd * std::max(1.0, spectral_norm(action_))) {
    throw InvariantError("positive", -lam, "relation is not positive");
  }
}

Matrix SelfadjointRelation::operator_matrix() const {
  const Index n = ambient_dim();
  if (domain_.dim() == 0) return Matrix::Zero(n, n);
  return domain_.basis() * action_ * domain_.basis().adjoint();
}

Matrix SelfadjointRelation::resolvent() const {
  const Index n = ambient_dim();
  if (domain_.dim() == 0) return Matrix::Zero(n, n);
  const Index m = domain_.dim();
  const Matrix inner =
      (Matrix::Identity(m, m) + action_).partialPivLu().solve(
          Matrix::Identity(m, m));
  return domain_.basis() * inner * domain_.basis().adjoint();
}

Matrix SelfadjointRelation::cayley() const {
  const Index n = ambient_dim();
  return hermitian_part(2.0 * resolvent() - Matrix::Identity(n, n));
}

bool SelfadjointRelation::graph_contains(const Vector& xi, const Vector& eta,
                                         const Tolerance& tol) const {
  const double scale = std::max(1.0, std::max(xi.norm(), eta.norm()));
  const Vector in_domain = domain_.basis().adjoint() * xi;
  const double off_domain = (xi - domain_.basis() * in_domain).norm();
  if (off_domain > tol.compare * scale) return false;
  // The value set at xi is (operator part) + multivalued part, so only the
  // component of eta inside the domain is pinned down.
  const Vector expected = action_ * in_domain;
  const Vector got = domain_.basis().adjoint() * eta;
  return (got - expected).norm() <= tol.compare * scale;
}

PartialOperator shift_lower_bound(const PartialOperator& s0, double m0,
                                  const Tolerance& tol) {
  s0.require_symmetric(tol);
  return PartialOperator{s0.domain, s0.action - m0 * s0.domain.basis()};
}

namespace {

// Shared Moebius step: domain' = ran(V + M), action' maps (V + M)x to
// (V - M)x. Both Cayley directions reduce to this.
PartialOperator mobius_partial(const PartialOperator& p, const Tolerance& tol,
                               const char* what) {
  const Matrix forward = p.domain.basis() + p.action;
  const Matrix backward = p.domain.basis() - p.action;
  if (p.dom_dim() == 0) {
    return PartialOperator{Subspace::zero(p.ambient_dim()),
                           Matrix(p.ambient_dim(), 0)};
  }
  Eigen::JacobiSVD<Matrix> svd(forward,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  if (sigma(sigma.size() - 1) <= tol.rank_rel * sigma(0)) {
    throw InvariantError("injective", sigma(sigma.size() - 1),
                         std::string(what) +
                             ": I + operator is numerically rank deficient");
  }
  const Subspace dom = orthonormal_basis(forward, tol);
  if (dom.dim() != p.dom_dim()) {
    throw InvariantError("injective",
                         static_cast<double>(p.dom_dim() - dom.dim()),
                         std::string(what) + ": rank of I + operator dropped");
  }
  // Solve (V + M) x = basis column-wise, then apply V - M.
  const Matrix coeff = svd.solve(dom.basis());
  return PartialOperator{dom, backward * coeff};
}

}  // namespace

PartialOperator cayley_transform(const PartialOperator& s, const Tolerance& tol) {
  s.require_symmetric(tol);
  s.require_positive(tol);
  return mobius_partial(s, tol, "cayley_transform");
}

PartialOperator inverse_cayley_partial(const PartialOperator& t,
                                       const Tolerance& tol) {
  t.require_symmetric(tol);
  t.require_contraction(tol);
  return mobius_partial(t, tol, "inverse_cayley_partial");
}

SelfadjointRelation inverse_cayley(const Matrix& t, const Tolerance& tol) {
  const double norm = spectral_norm(t);
  if (!all_finite(t) || norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", norm - 1.0,
                         "inverse_cayley input is not a contraction");
  }
  const HermitianEig eig = hermitian_eig(t, tol);
  const Index n = t.rows();
  // Eigenvalue -1 carries the multivalued part; the split uses the same
  // cutoff as rank decisions.
  Index mul_dim = 0;
  while (mul_dim < n && std::abs(eig.eigenvalues(mul_dim) + 1.0) <= tol.rank_rel) {
    ++mul_dim;
  }
  const Index fin_dim = n - mul_dim;
  Matrix mul_basis = eig.eigenvectors.leftCols(mul_dim);
  Matrix dom_basis = eig.eigenvectors.rightCols(fin_dim);
  RealVector finite(fin_dim);
  for (Index i = 0; i < fin_dim; ++i) {
    const double lam = eig.eigenvalues(mul_dim + i);
    finite(i) = (1.0 - lam) / (1.0 + lam);
  }
  Matrix action = finite.cast<Complex>().asDiagonal();
  return SelfadjointRelation(Subspace(n, std::move(dom_basis)),
                             std::move(action),
                             Subspace(n, std::move(mul_basis)), tol);
}

RelationSpectrum relation_spectrum(const SelfadjointRelation& r,
                                   const Tolerance& tol) {
  RelationSpectrum out;
  out.infinity_multiplicity = r.multivalued_part().dim();
  const HermitianEig eig = hermitian_eig(r.action(), tol);
  out.finite.assign(eig.eigenvalues.data(),
                    eig.eigenvalues.data() + eig.eigenvalues.size());
  return out;
}

}  // namespace krein
