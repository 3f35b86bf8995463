#include "krein/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace krein {

namespace {

std::uint64_t mix_words(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// lambda_i(R1) <= lambda_i(R2) pointwise, infinities last; the counting
// function statement of the form order.
bool spectra_dominated(const RelationSpectrum& r1, const RelationSpectrum& r2,
                       double slack) {
  const std::size_t n1 = r1.finite.size();
  const std::size_t n2 = r2.finite.size();
  if (n1 < n2) return false;  // R2 has more infinities than R1 can match
  for (std::size_t i = 0; i < n2; ++i) {
    if (r1.finite[i] > r2.finite[i] + slack) return false;
  }
  return true;
}

}  // namespace

MinimalLaplacianProblem minimal_laplacian(Index n) {
  if (n < 4) {
    throw InvariantError("grid_size", static_cast<double>(n),
                         "minimal_laplacian needs n >= 4");
  }
  MinimalLaplacianProblem prob;
  prob.n = n;
  prob.laplacian = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    prob.laplacian(i, i) = 2.0;
    if (i + 1 < n) {
      prob.laplacian(i, i + 1) = -1.0;
      prob.laplacian(i + 1, i) = -1.0;
    }
  }
  Matrix basis = Matrix::Zero(n, n - 2);
  for (Index j = 0; j < n - 2; ++j) basis(j + 1, j) = 1.0;
  Subspace interior(n, std::move(basis));
  prob.minimal = PartialOperator{interior, prob.laplacian * interior.basis()};

  const Tolerance tol;
  prob.minimal.require_positive(tol);
  return prob;
}

LaplacianDemoReport demo_report(const MinimalLaplacianProblem& prob,
                                long gamma_samples, std::uint64_t seed,
                                const Tolerance& tol, RunPolicy policy) {
  if (gamma_samples < 1) {
    throw InvariantError("samples", static_cast<double>(gamma_samples),
                         "demo_report needs at least one sample");
  }
  LaplacianDemoReport report;
  report.n = prob.n;
  report.dom_s_dim = prob.minimal.dom_dim();

  const PartialOperator t = cayley_transform(prob.minimal, tol);
  const ExtensionParametrization p = parametrize(t, tol);
  report.dom_dim = p.dom_dim();
  report.complement_dim = p.ambient_dim - p.dom_dim();
  report.defect_dim = p.defect_dim();
  if (report.complement_dim != 2) {
    throw InternalError("minimal Laplacian should have a two-dimensional "
                        "complement after the Cayley transform");
  }

  const Index d = p.defect_dim();
  const SelfadjointRelation s_k =
      extension_relation(p, GammaParameter::krein(d), tol);
  const SelfadjointRelation s_f =
      extension_relation(p, GammaParameter::friedrichs(d), tol);
  const RelationSpectrum spec_k = relation_spectrum(s_k, tol);
  const RelationSpectrum spec_f = relation_spectrum(s_f, tol);
  report.krein = {spec_k.finite, spec_k.infinity_multiplicity};
  report.friedrichs = {spec_f.finite, spec_f.infinity_multiplicity};
  report.krein_min_eigenvalue =
      spec_k.finite.empty() ? std::numeric_limits<double>::infinity()
                            : spec_k.finite.front();
  report.krein_kernel_detected = report.krein_min_eigenvalue <= tol.psd;
  report.dom_krein_dim = s_k.domain().dim();
  report.dom_friedrichs_dim = s_f.domain().dim();

  struct SampleOutcome {
    bool order_ok = true;
    bool domain_ok = true;
    bool interlacing_ok = true;
    double order_residual = 0.0;
    double domain_residual = 0.0;
  };
  std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(gamma_samples));
  const std::uint64_t base = mix_words(seed, 0x6c61706cULL);  // "lapl"

  for_each_trial(gamma_samples, policy.parallel, [&](long i) {
    SampleOutcome& out = outcomes[static_cast<std::size_t>(i)];
    try {
      std::mt19937_64 eng(mix_words(base, static_cast<std::uint64_t>(i)));
      const GammaParameter gamma{random_hermitian_contraction(eng, d)};

      const SelfadjointRelation s_gamma = extension_relation(p, gamma, tol);
      const Order left = compare_extensions(s_k, s_gamma, tol);
      const Order right = compare_extensions(s_gamma, s_f, tol);
      out.order_ok = (left == Order::le || left == Order::equal) &&
                     (right == Order::le || right == Order::equal);
      const Matrix t_gamma = extend_contraction(p, gamma, tol);
      out.order_residual =
          std::max(0.0, -min_eigenvalue(extremal(p, Extremal::krein, tol) -
                                        t_gamma));

      const DomainDecomposition dd = domain_decomposition(p, gamma, tol);
      out.domain_ok = dd.verified;
      const Subspace sum = subspace_sum(dd.dom_friedrichs, dd.correction, tol);
      out.domain_residual =
          std::max(containment_residual(sum, dd.dom_gamma),
                   containment_residual(dd.dom_gamma, sum));

      const RelationSpectrum spec_g = relation_spectrum(s_gamma, tol);
      out.interlacing_ok = spectra_dominated(spec_k, spec_g, 1e-8) &&
                           spectra_dominated(spec_g, spec_f, 1e-8);
    } catch (const std::exception&) {
      out.order_ok = out.domain_ok = out.interlacing_ok = false;
      out.order_residual = std::numeric_limits<double>::infinity();
    }
  });

  report.samples = gamma_samples;
  for (const SampleOutcome& out : outcomes) {
    if (!out.order_ok) ++report.order_failures;
    if (!out.domain_ok) ++report.domain_failures;
    if (!out.interlacing_ok) ++report.interlacing_failures;
    report.worst_order_residual =
        std::max(report.worst_order_residual, out.order_residual);
    report.worst_domain_residual =
        std::max(report.worst_domain_residual, out.domain_residual);
  }

  // Interior Dirichlet block, recorded for comparison only.
  const Matrix dirichlet = prob.minimal.compression();
  const HermitianEig eig = hermitian_eig(dirichlet, tol);
  report.dirichlet_spectrum.assign(
      eig.eigenvalues.data(), eig.eigenvalues.data() + eig.eigenvalues.size());
  const std::size_t overlap =
      std::min(report.dirichlet_spectrum.size(), report.friedrichs.finite.size());
  double diff = 0.0;
  for (std::size_t i = 0; i < overlap; ++i) {
    diff = std::max(diff, std::abs(report.dirichlet_spectrum[i] -
                                   report.friedrichs.finite[i]));
  }
  report.dirichlet_vs_friedrichs_max_diff = diff;
  return report;
}

}  // namespace krein
