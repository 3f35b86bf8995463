#include <doctest.h>

#include "krein/laplacian.hpp"

using namespace krein;

namespace {
const Tolerance tol;
}

TEST_CASE("minimal_laplacian construction and stencil") {
  CHECK_THROWS_AS(minimal_laplacian(3), InvariantError);

  const MinimalLaplacianProblem prob = minimal_laplacian(4);
  CHECK(prob.minimal.dom_dim() == 2);
  CHECK(prob.minimal.is_symmetric(tol));
  CHECK(prob.minimal.is_positive(tol));

  // First domain basis vector is e2; its image is the stencil (-1, 2, -1, 0).
  Vector image = prob.minimal.action.col(0);
  CHECK(std::abs(image(0) - Complex(-1.0)) < 1e-14);
  CHECK(std::abs(image(1) - Complex(2.0)) < 1e-14);
  CHECK(std::abs(image(2) - Complex(-1.0)) < 1e-14);
  CHECK(std::abs(image(3)) < 1e-14);

  // Two boundary directions survive the Cayley transform.
  const ExtensionParametrization p =
      parametrize(cayley_transform(prob.minimal, tol), tol);
  CHECK(p.ambient_dim - p.dom_dim() == 2);
}

TEST_CASE("interior block is positive definite") {
  const MinimalLaplacianProblem prob = minimal_laplacian(10);
  const Matrix interior = prob.minimal.compression();
  CHECK(interior.rows() == 8);
  CHECK(hermitian_residual(interior) < 1e-14);
  CHECK(min_eigenvalue(interior) > 0.0);
}

TEST_CASE("demo report at n = 6") {
  const LaplacianDemoReport report =
      demo_report(minimal_laplacian(6), 50, 11, tol);

  CHECK(report.order_failures == 0);
  CHECK(report.domain_failures == 0);
  CHECK(report.interlacing_failures == 0);
  CHECK(report.krein_kernel_detected);
  CHECK(report.krein_min_eigenvalue <= tol.psd);

  // Golden dimensions, frozen from a library run at n = 6.
  CHECK(report.dom_s_dim == 4);
  CHECK(report.complement_dim == 2);
  CHECK(report.defect_dim == 2);
  CHECK(report.dom_friedrichs_dim == 4);
  CHECK(report.dom_krein_dim == 6);
  CHECK(report.friedrichs.infinity_multiplicity == 2);
  CHECK(report.krein.infinity_multiplicity == 0);
  REQUIRE(report.friedrichs.finite.size() == 4);
  REQUIRE(report.krein.finite.size() == 6);

  // The Krein extension is singular: a two-dimensional kernel here.
  CHECK(report.krein.finite[0] <= tol.psd);
  CHECK(report.krein.finite[1] <= tol.psd);
  CHECK(report.krein.finite[2] > 0.1);

  // Recorded comparison: the Friedrichs spectrum sits next to the interior
  // Dirichlet block spectrum. No equality asserted, only shape.
  CHECK(report.dirichlet_spectrum.size() == 4);
}

TEST_CASE("demo report is deterministic given the seed") {
  const MinimalLaplacianProblem prob = minimal_laplacian(6);
  const LaplacianDemoReport a = demo_report(prob, 20, 5, tol, RunPolicy{true});
  const LaplacianDemoReport b = demo_report(prob, 20, 5, tol, RunPolicy{false});
  CHECK(a.worst_order_residual == b.worst_order_residual);
  CHECK(a.worst_domain_residual == b.worst_domain_residual);
  CHECK(a.order_failures == b.order_failures);
}

TEST_CASE("demo rejects a non-positive sample count") {
  CHECK_THROWS_AS(demo_report(minimal_laplacian(4), 0, 1, tol), InvariantError);
}
