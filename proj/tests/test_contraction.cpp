#include <doctest.h>

#include <random>

#include "krein/contraction.hpp"
#include "krein/oracle.hpp"

using namespace krein;

namespace {
const Tolerance tol;
const double kInvSqrt2 = 0.7071067811865476;

Matrix scalar(double x) {
  Matrix m(1, 1);
  m(0, 0) = x;
  return m;
}
}  // namespace

TEST_CASE("factor_offdiag with vanishing diagonal blocks returns X") {
  std::mt19937_64 eng(2);
  const Matrix x = random_contraction(eng, 3, 2);
  const Matrix c = factor_offdiag(Matrix::Zero(3, 3), x, Matrix::Zero(2, 2), tol);
  CHECK(spectral_norm(c - x) < 1e-12);
}

TEST_CASE("factor_offdiag with a unitary T1 forces X = 0") {
  // D_{T1*} = 0, so the defect space collapses and C is a 0 x 1 map.
  const Matrix c = factor_offdiag(scalar(1.0), scalar(0.0), scalar(0.0), tol);
  CHECK(c.rows() == 0);
  CHECK(c.cols() == 1);
}

TEST_CASE("factor_offdiag scalar example") {
  const Matrix c = factor_offdiag(scalar(0.6), scalar(0.64), scalar(0.6), tol);
  REQUIRE(c.rows() == 1);
  REQUIRE(c.cols() == 1);
  CHECK(std::abs(c(0, 0) - 1.0) < 1e-10);
}

TEST_CASE("factor_offdiag rejects a non-contractive block") {
  CHECK_THROWS_AS(factor_offdiag(scalar(0.9), scalar(0.9), scalar(0.9), tol),
                  InvariantError);
}

TEST_CASE("factor_offdiag inverts block assembly") {
  std::mt19937_64 eng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Index q1 = 2 + trial % 2, p1 = 2, q2 = 2, p2 = 1 + trial % 3;
    const Matrix t1 = random_contraction(eng, q1, p1);
    const Matrix t2 = random_contraction(eng, q2, p2);
    const DefectPair d1s = defect_pair(t1.adjoint(), tol);
    const DefectPair d2 = defect_pair(t2, tol);
    const Matrix c = random_contraction(eng, d1s.defect_space.dim(),
                                        d2.defect_space.dim());
    const Matrix x = d1s.defect_operator * d1s.defect_space.basis() * c *
                     d2.defect_space.basis().adjoint() * d2.defect_operator;
    const Matrix recovered = factor_offdiag(t1, x, t2, tol);
    CHECK(spectral_norm(recovered - c) < tol.compare);
  }
}

TEST_CASE("extract_gammas scalar corner cases") {
  // A = 0: D_{A*} = 1, so Gamma1 = b.
  const CornerData zero_case = extract_gammas(
      RowContraction{scalar(0.0), scalar(0.5)},
      ColContraction{scalar(0.0), scalar(kInvSqrt2)}, tol);
  REQUIRE(zero_case.gamma1.rows() == 1);
  CHECK(std::abs(zero_case.gamma1(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(zero_case.gamma2(0, 0) - kInvSqrt2) < 1e-12);

  // A unitary: both defect spaces vanish.
  const CornerData unitary_case = extract_gammas(
      RowContraction{scalar(1.0), scalar(0.0)},
      ColContraction{scalar(1.0), scalar(0.0)}, tol);
  CHECK(unitary_case.space_a.dim() == 0);
  CHECK(unitary_case.space_a_star.dim() == 0);
  CHECK(unitary_case.gamma1.rows() == 0);
  CHECK(unitary_case.gamma2.cols() == 0);
}

TEST_CASE("extract_gammas requires a shared A block") {
  CHECK_THROWS_AS(extract_gammas(RowContraction{scalar(0.1), scalar(0.1)},
                                 ColContraction{scalar(0.2), scalar(0.1)}, tol),
                  InvariantError);
}

TEST_CASE("complete_corner explicit 2x2 completions") {
  // A = 0, Gamma1 = Gamma2 = 0: completion is [[0, 0], [0, gamma]].
  const CornerData trivial = extract_gammas(
      RowContraction{scalar(0.0), scalar(0.0)},
      ColContraction{scalar(0.0), scalar(0.0)}, tol);
  const Matrix t = complete_corner(trivial, scalar(0.25), tol);
  CHECK(std::abs(t(0, 0)) < 1e-14);
  CHECK(std::abs(t(0, 1)) < 1e-14);
  CHECK(std::abs(t(1, 0)) < 1e-14);
  CHECK(std::abs(t(1, 1) - 0.25) < 1e-12);

  // A = 0, Gamma1 = Gamma2 = 1: the completion is unique and antidiagonal.
  const CornerData rigid = extract_gammas(
      RowContraction{scalar(0.0), scalar(1.0)},
      ColContraction{scalar(0.0), scalar(1.0)}, tol);
  CHECK(rigid.space_gamma2_star.dim() == 0);
  CHECK(rigid.space_gamma1.dim() == 0);
  const Matrix flip = complete_corner(rigid, Matrix(0, 0), tol);
  CHECK(std::abs(flip(0, 1) - 1.0) < 1e-12);
  CHECK(std::abs(flip(1, 0) - 1.0) < 1e-12);
  CHECK(std::abs(flip(1, 1)) < 1e-12);

  // A = 0, Gamma1 = Gamma2 = 1/sqrt(2), Gamma = 1: lower right is 1/2.
  const CornerData reference = extract_gammas(
      RowContraction{scalar(0.0), scalar(kInvSqrt2)},
      ColContraction{scalar(0.0), scalar(kInvSqrt2)}, tol);
  const Matrix ref = complete_corner(reference, scalar(1.0), tol);
  CHECK(std::abs(ref(0, 1) - kInvSqrt2) < 1e-12);
  CHECK(std::abs(ref(1, 0) - kInvSqrt2) < 1e-12);
  CHECK(std::abs(ref(1, 1) - 0.5) < 1e-12);
}

TEST_CASE("complete_corner rejects an oversized parameter") {
  const CornerData corner = extract_gammas(
      RowContraction{scalar(0.0), scalar(0.5)},
      ColContraction{scalar(0.0), scalar(0.5)}, tol);
  CHECK_THROWS_AS(complete_corner(corner, scalar(1.5), tol), InvariantError);
  CHECK_THROWS_AS(complete_corner(corner, Matrix::Zero(2, 2), tol),
                  InvariantError);
}

namespace {

CornerData random_corner(std::mt19937_64& eng, Index q, Index p, Index r,
                         Index p2) {
  const Matrix full = random_contraction(eng, q + r, p + p2);
  const Matrix a = full.topLeftCorner(q, p);
  const Matrix b = full.topRightCorner(q, p2);
  const Matrix c = full.bottomLeftCorner(r, p);
  return extract_gammas(RowContraction{a, b}, ColContraction{a, c}, tol);
}

}  // namespace

TEST_CASE("corner round trip reproduces Gamma1 and Gamma2") {
  std::mt19937_64 eng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const CornerData corner = random_corner(eng, 2, 2, 1 + trial % 2, 2);
    const Matrix gamma = random_contraction(eng, corner.space_gamma2_star.dim(),
                                            corner.space_gamma1.dim());
    const Matrix completed = complete_corner(corner, gamma, tol);

    CHECK(spectral_norm(completed) <= 1.0 + tol.contraction);

    const Index q = corner.a.rows(), p = corner.a.cols();
    const Index r = corner.gamma2.rows(), p2 = corner.gamma1.cols();
    const CornerData again = extract_gammas(
        RowContraction{completed.topLeftCorner(q, p),
                       completed.topRightCorner(q, p2)},
        ColContraction{completed.topLeftCorner(q, p),
                       completed.bottomLeftCorner(r, p)},
        tol);
    CHECK(spectral_norm(again.gamma1 - corner.gamma1) < tol.compare);
    CHECK(spectral_norm(again.gamma2 - corner.gamma2) < tol.compare);
  }
}

TEST_CASE("distinct parameters differ exactly in the lower-right block") {
  std::mt19937_64 eng(78);
  for (int trial = 0; trial < 20; ++trial) {
    const CornerData corner = random_corner(eng, 2, 2, 2, 2);
    const Index dr = corner.space_gamma2_star.dim();
    const Index dc = corner.space_gamma1.dim();
    if (dr == 0 || dc == 0) continue;
    const Matrix g1 = random_contraction(eng, dr, dc);
    const Matrix g2 = random_contraction(eng, dr, dc);
    const Matrix diff = complete_corner(corner, g1, tol) -
                        complete_corner(corner, g2, tol);
    const Matrix expected = corner.defect_gamma2_star *
                            corner.space_gamma2_star.basis() * (g1 - g2) *
                            corner.space_gamma1.basis().adjoint() *
                            corner.defect_gamma1;
    CHECK(spectral_norm(diff.topRows(corner.a.rows())) < 1e-13);
    CHECK(spectral_norm(diff.bottomLeftCorner(corner.gamma2.rows(),
                                              corner.a.cols())) < 1e-13);
    CHECK(spectral_norm(diff.bottomRightCorner(corner.gamma2.rows(),
                                               corner.gamma1.cols()) -
                        expected) < 1e-12);
  }
}
