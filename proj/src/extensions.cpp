#include "krein/extensions.hpp"

#include <algorithm>
#include <cmath>

namespace krein {

namespace {

void require_gamma(const ExtensionParametrization& p, const GammaParameter& g,
                   const Tolerance& tol) {
  const Index d = p.defect_dim();
  if (g.matrix.rows() != d || g.matrix.cols() != d) {
    throw InvariantError("shape",
                         static_cast<double>(g.matrix.rows() - d),
                         "Gamma must be square on D_{Gamma2*} coordinates");
  }
  if (d == 0) return;
  const double herm = hermitian_residual(g.matrix);
  if (herm > tol.compare) {
    throw InvariantError("symmetric", herm, "Gamma is not hermitian");
  }
  const double norm = spectral_norm(g.matrix);
  if (norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", norm - 1.0, "Gamma is not a contraction");
  }
}

// Corner data for the hermitian completion problem: A = A*, Gamma1 = Gamma2*.
CornerData corner_of(const ExtensionParametrization& p) {
  return CornerData{.a = p.a,
                    .gamma1 = p.gamma2.adjoint(),
                    .gamma2 = p.gamma2,
                    .defect_a = p.defect_a,
                    .defect_a_star = p.defect_a,
                    .defect_gamma1 = p.defect_gamma2_star,
                    .defect_gamma2_star = p.defect_gamma2_star,
                    .space_a = p.space_a,
                    .space_a_star = p.space_a,
                    .space_gamma1 = p.space_gamma2_star,
                    .space_gamma2_star = p.space_gamma2_star};
}

Matrix frame(const ExtensionParametrization& p) {
  Matrix u(p.ambient_dim, p.ambient_dim);
  u << p.dom_t.basis(), p.complement.basis();
  return u;
}

Matrix to_ambient(const ExtensionParametrization& p, const Matrix& in_frame) {
  const Matrix u = frame(p);
  return hermitian_part(u * in_frame * u.adjoint());
}

// PSD square root of I + A without the psd_sqrt error path; lambda_min is
// bounded below by -tol.contraction for a contraction A.
Matrix sqrt_one_plus(const Matrix& a, const Tolerance& tol) {
  const Index k = a.rows();
  const HermitianEig eig =
      hermitian_eig(Matrix::Identity(k, k) + a, tol);
  RealVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return hermitian_part(eig.eigenvectors * roots.asDiagonal() *
                        eig.eigenvectors.adjoint());
}

}  // namespace

Matrix ExtensionParametrization::action() const {
  return dom_t.basis() * a +
         complement.basis() * gamma2 * space_a.basis().adjoint() * defect_a;
}

ExtensionParametrization parametrize(const PartialOperator& t,
                                     const Tolerance& tol) {
  t.require_symmetric(tol);
  t.require_contraction(tol);

  ExtensionParametrization p;
  p.ambient_dim = t.ambient_dim();
  p.dom_t = t.domain;
  p.complement = orthogonal_complement(t.domain);

  p.a = hermitian_part(t.compression());
  const Matrix lower = p.complement.basis().adjoint() * t.action;

  const DefectPair da = defect_pair(p.a, tol);
  p.defect_a = da.defect_operator;
  p.space_a = da.defect_space;

  // lower = Gamma2 D_A with Gamma2 supported on the defect space of A.
  const Matrix g2_adj = solve_on_range(p.defect_a, lower.adjoint(), tol);
  p.gamma2 = g2_adj.adjoint() * p.space_a.basis();
  const double g2_norm = spectral_norm(p.gamma2);
  if (g2_norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", g2_norm - 1.0,
                         "parametrize: Gamma2 exceeds norm 1, so T was not a "
                         "contraction");
  }

  const DefectPair dg2s = defect_pair(p.gamma2.adjoint(), tol);
  p.defect_gamma2_star = dg2s.defect_operator;
  p.space_gamma2_star = dg2s.defect_space;

  const double recon =
      spectral_norm(lower - p.gamma2_ambient() * p.defect_a);
  if (recon > tol.compare * std::max(1.0, spectral_norm(lower))) {
    throw InternalError("parametrize: Gamma2 D_A does not reproduce the "
                        "off-domain block");
  }
  return p;
}

Matrix extend_contraction(const ExtensionParametrization& p,
                          const GammaParameter& gamma, const Tolerance& tol) {
  require_gamma(p, gamma, tol);
  const Matrix in_frame = complete_corner(corner_of(p), gamma.matrix, tol);
  return to_ambient(p, in_frame);
}

Matrix extremal(const ExtensionParametrization& p, Extremal which,
                const Tolerance& tol) {
  const Index d = p.defect_dim();
  const GammaParameter gamma = which == Extremal::krein
                                   ? GammaParameter::krein(d)
                                   : GammaParameter::friedrichs(d);
  const Matrix generic = extend_contraction(p, gamma, tol);

  // Closed forms for the lower-right block.
  const Index k = p.dom_dim();
  const Index c = p.ambient_dim - k;
  const Matrix g2a = p.gamma2_ambient();
  const Matrix eye_k = Matrix::Identity(k, k);
  const Matrix eye_c = Matrix::Identity(c, c);
  Matrix closed_lr;
  if (which == Extremal::krein) {
    closed_lr = eye_c - g2a * (eye_k + p.a).adjoint() * g2a.adjoint();
  } else {
    closed_lr = g2a * (eye_k - p.a).adjoint() * g2a.adjoint() - eye_c;
  }
  Matrix in_frame(p.ambient_dim, p.ambient_dim);
  in_frame.topLeftCorner(k, k) = p.a;
  in_frame.topRightCorner(k, c) = p.defect_a * g2a.adjoint();
  in_frame.bottomLeftCorner(c, k) = g2a * p.defect_a;
  in_frame.bottomRightCorner(c, c) = closed_lr;
  const Matrix closed = to_ambient(p, in_frame);

  const double gap = spectral_norm(closed - generic);
  if (gap > tol.compare) {
    throw InternalError("extremal: closed form and generic completion "
                        "disagree beyond tol.compare");
  }
  return generic;
}

GammaParameter recover_gamma(const ExtensionParametrization& p, const Matrix& b,
                             const Tolerance& tol) {
  if (b.rows() != p.ambient_dim || b.cols() != p.ambient_dim) {
    throw InvariantError("shape", static_cast<double>(b.rows() - p.ambient_dim),
                         "recover_gamma: candidate has the wrong size");
  }
  const double herm = hermitian_residual(b);
  if (herm > tol.compare) {
    throw InvariantError("symmetric", herm,
                         "recover_gamma: candidate is not hermitian");
  }
  const double norm = spectral_norm(b);
  if (norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", norm - 1.0,
                         "recover_gamma: candidate is not a contraction");
  }
  const Matrix action = p.action();
  const double ext =
      spectral_norm(b * p.dom_t.basis() - action);
  if (ext > tol.compare * std::max(1.0, spectral_norm(action))) {
    throw InvariantError("extension", ext,
                         "recover_gamma: candidate does not extend T");
  }

  const Matrix x =
      p.complement.basis().adjoint() * b * p.complement.basis();
  const Matrix ea = p.space_a.basis();
  const Matrix cross = p.gamma2 * (ea.adjoint() * p.a * ea) * p.gamma2.adjoint();
  // x + cross = D_{Gamma2*} Gamma_ambient D_{Gamma2*}.
  const Matrix y = solve_on_range(p.defect_gamma2_star, x + cross, tol);
  const Matrix z = solve_on_range(p.defect_gamma2_star, y.adjoint(), tol);
  const Matrix g_ambient = z.adjoint();
  const Matrix e = p.space_gamma2_star.basis();
  GammaParameter gamma{hermitian_part(e.adjoint() * g_ambient * e)};

  const double g_norm = spectral_norm(gamma.matrix);
  if (g_norm > 1.0 + tol.contraction) {
    throw InvariantError("contraction", g_norm - 1.0,
                         "recover_gamma: recovered Gamma exceeds norm 1");
  }
  const Matrix rebuilt = extend_contraction(p, gamma, tol);
  const double residual = spectral_norm(rebuilt - b);
  if (residual > tol.compare * std::max(1.0, norm)) {
    throw InvariantError("inconsistent_factorization", residual,
                         "recover_gamma: candidate is not of the completion "
                         "form (corrupted input)");
  }
  return gamma;
}

bool is_extension_member(const ExtensionParametrization& p, const Matrix& b,
                         MembershipRoute route, const Tolerance& tol) {
  if (b.rows() != p.ambient_dim || b.cols() != p.ambient_dim || !all_finite(b)) {
    return false;
  }
  if (!is_hermitian(b, tol)) return false;
  if (route == MembershipRoute::direct) {
    if (spectral_norm(b) > 1.0 + tol.contraction) return false;
    const Matrix action = p.action();
    const double ext = spectral_norm(b * p.dom_t.basis() - action);
    return ext <= tol.compare * std::max(1.0, spectral_norm(action));
  }
  const Matrix upper = extremal(p, Extremal::krein, tol);
  const Matrix lower = extremal(p, Extremal::friedrichs, tol);
  return is_psd(upper - b, tol) && is_psd(b - lower, tol);
}

SelfadjointRelation extension_relation(const ExtensionParametrization& p,
                                       const GammaParameter& gamma,
                                       const Tolerance& tol) {
  return inverse_cayley(extend_contraction(p, gamma, tol), tol);
}

Order compare_extensions(const SelfadjointRelation& r1,
                         const SelfadjointRelation& r2, const Tolerance& tol) {
  if (r1.ambient_dim() != r2.ambient_dim()) {
    throw InvariantError(
        "ambient_dim", static_cast<double>(r1.ambient_dim() - r2.ambient_dim()),
        "compare_extensions: ambient dimensions differ");
  }
  const Matrix diff = hermitian_part(r1.cayley() - r2.cayley());
  const bool le = is_psd(diff, tol);   // R1 <= R2 iff C(R1) >= C(R2)
  const bool ge = is_psd(Matrix(-diff), tol);

  if (r1.everywhere_defined() && r2.everywhere_defined()) {
    // Form-definition cross-check on a sampled vector set. Disagreement with
    // a wide margin means the Cayley route is broken.
    const Matrix m1 = r1.operator_matrix();
    const Matrix m2 = r2.operator_matrix();
    const Index n = m1.rows();
    const double scale = std::max(1.0, spectral_norm(m1) + spectral_norm(m2));
    const double slack = 10.0 * tol.psd * scale;
    Matrix samples(n, 2 * n);
    samples.leftCols(n) = Matrix::Identity(n, n);
    samples.rightCols(n) =
        hermitian_eig(hermitian_part(m2 - m1), tol).eigenvectors;
    for (Index j = 0; j < samples.cols(); ++j) {
      const Vector xi = samples.col(j);
      const double q1 = std::real(Complex(xi.dot(m1 * xi)));
      const double q2 = std::real(Complex(xi.dot(m2 * xi)));
      if (le && q1 > q2 + slack) {
        throw InternalError("compare_extensions: form order contradicts the "
                            "Cayley-side decision (le)");
      }
      if (ge && q2 > q1 + slack) {
        throw InternalError("compare_extensions: form order contradicts the "
                            "Cayley-side decision (ge)");
      }
    }
  }

  if (le && ge) return Order::equal;
  if (le) return Order::le;
  if (ge) return Order::ge;
  return Order::incomparable;
}

DomainDecomposition domain_decomposition(const ExtensionParametrization& p,
                                         const GammaParameter& gamma,
                                         const Tolerance& tol) {
  require_gamma(p, gamma, tol);
  const Index n = p.ambient_dim;
  const Matrix eye = Matrix::Identity(n, n);

  const Matrix t_friedrichs = extremal(p, Extremal::friedrichs, tol);
  const Index c = n - p.dom_dim();
  const Matrix e = p.space_gamma2_star.basis();
  const Matrix correction_op =
      p.defect_gamma2_star *
      (Matrix::Identity(c, c) + e * gamma.matrix * e.adjoint()) *
      p.defect_gamma2_star;
  const Matrix correction_image = p.complement.basis() * correction_op;
  const Matrix t_gamma = extend_contraction(p, gamma, tol);

  // I + T~(Gamma) = (I + T~(-I)) + (correction block), a sum of PSD pieces,
  // so its range is the subspace sum of the two ranges. All three rank
  // decisions must happen at one common scale, otherwise a direction of size
  // eps stays in one subspace and drops out of the other.
  const Matrix m_gamma = eye + t_gamma;
  const double cutoff = tol.rank_rel * spectral_norm(m_gamma);

  const Subspace dom_f =
      orthonormal_basis_absolute(eye + t_friedrichs, cutoff);
  const Subspace correction =
      orthonormal_basis_absolute(correction_image, cutoff);
  const Subspace dom_gamma = orthonormal_basis_absolute(m_gamma, cutoff);

  const bool verified =
      subspace_relation(subspace_sum(dom_f, correction, tol), dom_gamma, tol) ==
      SubspaceRelation::equal;
  return DomainDecomposition{dom_f, correction, dom_gamma, verified};
}

bool range_inclusion_check(const ExtensionParametrization& p,
                           const Tolerance& tol) {
  const Index k = p.dom_dim();
  const Matrix one_plus_a = Matrix::Identity(k, k) + p.a;
  Matrix adjoint_block(k, p.ambient_dim);
  adjoint_block.leftCols(k) = one_plus_a;
  adjoint_block.rightCols(p.ambient_dim - k) =
      p.defect_a * p.gamma2_ambient().adjoint();

  const Subspace ran_t_star = orthonormal_basis(adjoint_block, tol);
  const Subspace ran_sqrt = orthonormal_basis(sqrt_one_plus(p.a, tol), tol);

  // Containments are tested on the raw matrices: deciding a numerical rank
  // for the left-hand ranges would turn negligible directions into unit
  // vectors and report spurious violations at degenerate corners.
  const double res_inner =
      spectral_norm(one_plus_a - ran_t_star.projector() * one_plus_a);
  const double res_outer =
      spectral_norm(adjoint_block - ran_sqrt.projector() * adjoint_block);
  const double bound_inner =
      tol.compare * std::max(1.0, spectral_norm(one_plus_a));
  const double bound_outer =
      tol.compare * std::max(1.0, spectral_norm(adjoint_block));
  return res_inner <= bound_inner && res_outer <= bound_outer;
}

Matrix assemble_offdiag_block(const Matrix& m, const Matrix& n_block) {
  const Index a = m.rows();
  const Index b = m.cols();
  if (n_block.rows() != b || n_block.cols() != b) {
    throw InvariantError("shape", static_cast<double>(n_block.rows() - b),
                         "assemble_offdiag_block: N must be square matching "
                         "the columns of M");
  }
  Matrix out(a + b, a + b);
  out.setZero();
  out.topRightCorner(a, b) = m;
  out.bottomLeftCorner(b, a) = m.adjoint();
  out.bottomRightCorner(b, b) = n_block;
  return out;
}

bool offdiag_block_criterion(const Matrix& m, const Matrix& n_block,
                             const Tolerance& tol) {
  return spectral_norm(m) <= tol.compare && is_psd(n_block, tol);
}

const char* to_string(Order order) {
  switch (order) {
    case Order::le: return "le";
    case Order::ge: return "ge";
    case Order::equal: return "equal";
    case Order::incomparable: return "incomparable";
  }
  return "incomparable";
}

}  // namespace krein
