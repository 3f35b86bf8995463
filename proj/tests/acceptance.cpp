// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "krein/laplacian.hpp"
#include "krein/oracle.hpp"

using namespace krein;

namespace {

const Tolerance tol;
int failed_criteria = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!pass) ++failed_criteria;
}

double now_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return std::string(buf);
}

// Deterministic per-trial problem: ambient dimension cycles 2..5, domain
// dimension drawn from the trial stream.
struct TrialProblem {
  PartialOperator t{Subspace::zero(0), Matrix(0, 0)};
  ExtensionParametrization p;
  std::mt19937_64 eng{0};
};

TrialProblem make_trial(std::uint64_t seed, long i) {
  TrialProblem trial;
  trial.eng.seed(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i));
  const Index n = 2 + static_cast<Index>(i % 4);
  const Index k =
      1 + static_cast<Index>(trial.eng() % static_cast<std::uint64_t>(n));
  trial.t = random_partial_symmetric_contraction(trial.eng, n, k);
  trial.p = parametrize(trial.t, tol);
  return trial;
}

void criterion_interval_theorem() {
  const auto start = std::chrono::steady_clock::now();
  const auto reports = verify_all(2026, {2, 3, 4, 5}, 200, tol);
  const double elapsed = now_seconds(start);
  long interval_failures = 0;
  long total_failures = 0;
  for (const auto& r : reports) {
    total_failures += r.failures;
    if (r.property == "interval_theorem") interval_failures += r.failures;
  }
  const bool pass = interval_failures == 0 && total_failures == 0 &&
                    elapsed < 10.0;
  report("interval_theorem",
         pass,
         "dims 2..5, 200 trials per instance: " +
             std::to_string(interval_failures) + " route disagreements, " +
             std::to_string(total_failures) + " total failures" +
             fmt(", %.2fs (< 10s)", elapsed));
}

void criterion_bijection() {
  constexpr long kTrials = 200;
  constexpr double kBound = 1e-10;
  long failures = 0;
  double worst = 0.0;
  for (long i = 0; i < kTrials; ++i) {
    TrialProblem trial = make_trial(101, i);
    const GammaParameter gamma{
        random_hermitian_contraction(trial.eng, trial.p.defect_dim())};
    const Matrix b = extend_contraction(trial.p, gamma, tol);
    const GammaParameter back = recover_gamma(trial.p, b, tol);
    const double gamma_res = spectral_norm(back.matrix - gamma.matrix);
    const double b_res =
        spectral_norm(extend_contraction(trial.p, back, tol) - b);
    worst = std::max({worst, gamma_res, b_res});
    if (gamma_res > kBound || b_res > kBound) ++failures;
  }
  report("bijection", failures == 0,
         std::to_string(kTrials) + " round trips within 1e-10" +
             fmt(" (worst %.2e)", worst));
}

void criterion_norm_identity() {
  constexpr long kTrials = 200;
  constexpr double kBound = 1e-12;
  long failures = 0;
  double worst = 0.0;
  for (long i = 0; i < kTrials; ++i) {
    TrialProblem trial = make_trial(202, i);
    const Index d = trial.p.defect_dim();
    const GammaParameter g1{random_hermitian_contraction(trial.eng, d)};
    const GammaParameter g2{random_hermitian_contraction(trial.eng, d)};
    const double lhs = spectral_norm(extend_contraction(trial.p, g1, tol) -
                                     extend_contraction(trial.p, g2, tol));
    const Matrix e = trial.p.space_gamma2_star.basis();
    const double rhs =
        spectral_norm(trial.p.defect_gamma2_star * e *
                      (g1.matrix - g2.matrix) * e.adjoint() *
                      trial.p.defect_gamma2_star);
    const double gap = std::abs(lhs - rhs);
    worst = std::max(worst, gap);
    if (gap > kBound) ++failures;
  }
  report("norm_identity", failures == 0,
         std::to_string(kTrials) + " pairs within 1e-12" +
             fmt(" (worst %.2e)", worst));
}

void criterion_monotone_antitone() {
  constexpr long kTrials = 200;
  long failures = 0;
  double worst = 0.0;
  for (long i = 0; i < kTrials; ++i) {
    TrialProblem trial = make_trial(303, i);
    const Index d = trial.p.defect_dim();

    const GammaParameter lo{random_hermitian_contraction(trial.eng, d)};
    Matrix step = random_matrix(trial.eng, d, d, 1.0);
    step = hermitian_part(step.adjoint() * step);
    double t_max = 0.0;
    if (d > 0 && spectral_norm(step) > 0.0) {
      t_max = std::clamp((1.0 - 1e-12 + min_eigenvalue(Matrix(-lo.matrix))) /
                             spectral_norm(step),
                         0.0, 1.0);
    }
    const GammaParameter hi{hermitian_part(lo.matrix + t_max * step)};

    const Matrix t_lo = extend_contraction(trial.p, lo, tol);
    const Matrix t_hi = extend_contraction(trial.p, hi, tol);
    bool ok = is_psd(t_hi - t_lo, tol);  // PSD within the 1e-9 slack
    worst = std::max(worst, std::max(0.0, -min_eigenvalue(t_hi - t_lo)));

    const Order ord = compare_extensions(inverse_cayley(t_lo, tol),
                                         inverse_cayley(t_hi, tol), tol);
    ok = ok && (ord == Order::ge || ord == Order::equal);

    const SelfadjointRelation s_g = extension_relation(trial.p, lo, tol);
    const SelfadjointRelation s_k =
        extension_relation(trial.p, GammaParameter::krein(d), tol);
    const SelfadjointRelation s_f =
        extension_relation(trial.p, GammaParameter::friedrichs(d), tol);
    const Order left = compare_extensions(s_k, s_g, tol);
    const Order right = compare_extensions(s_g, s_f, tol);
    ok = ok && (left == Order::le || left == Order::equal) &&
         (right == Order::le || right == Order::equal);

    if (!ok) ++failures;
  }
  report("monotone_antitone", failures == 0,
         std::to_string(kTrials) +
             " ordered pairs: contraction order, relation order, sandwich" +
             fmt(" (worst PSD deficit %.2e)", worst));
}

void criterion_cayley() {
  constexpr long kTrials = 200;
  constexpr double kRoundBound = 1e-10;
  long failures = 0;
  double worst_round = 0.0;
  double worst_eig = 0.0;
  for (long i = 0; i < kTrials; ++i) {
    std::mt19937_64 eng(404 * 0x9e3779b97f4a7c15ULL +
                        static_cast<std::uint64_t>(i));
    const Index n = 2 + static_cast<Index>(i % 4);
    const Index k = 1 + static_cast<Index>(eng() % static_cast<std::uint64_t>(n));
    bool ok = true;

    const PartialOperator s = random_positive_partial(eng, n, k, 2.0);
    const PartialOperator back =
        inverse_cayley_partial(cayley_transform(s, tol), tol);
    const double res = partial_operator_distance(back, s) /
                       std::max(1.0, spectral_norm(s.action));
    worst_round = std::max(worst_round, res);
    ok = ok && res <= kRoundBound;

    Matrix full = random_hermitian_contraction(eng, n);
    if (i % 3 == 0) {
      HermitianEig eig = hermitian_eig(full, tol);
      RealVector vals = eig.eigenvalues;
      for (Index j = 0; j < 1 + static_cast<Index>(i) % n && j < vals.size(); ++j)
        vals(j) = -1.0;
      full = hermitian_part(eig.eigenvectors * vals.asDiagonal() *
                            eig.eigenvectors.adjoint());
    }
    const HermitianEig eig = hermitian_eig(full, tol);
    const RelationSpectrum spec =
        relation_spectrum(inverse_cayley(full, tol), tol);
    Index expected_infinity = 0;
    std::vector<double> expected;
    for (Index j = 0; j < eig.eigenvalues.size(); ++j) {
      const double lam = eig.eigenvalues(j);
      if (std::abs(lam + 1.0) <= tol.rank_rel) {
        ++expected_infinity;
      } else {
        expected.push_back((1.0 - lam) / (1.0 + lam));
      }
    }
    std::sort(expected.begin(), expected.end());
    ok = ok && spec.infinity_multiplicity == expected_infinity &&
         spec.finite.size() == expected.size();
    if (spec.finite.size() == expected.size()) {
      for (std::size_t j = 0; j < expected.size(); ++j) {
        const double err = std::abs(spec.finite[j] - expected[j]) /
                           std::max(1.0, std::abs(expected[j]));
        worst_eig = std::max(worst_eig, err);
        ok = ok && err <= 1e-8;
      }
    }
    if (!ok) ++failures;
  }
  report("cayley_roundtrip_spectral", failures == 0,
         std::to_string(kTrials) +
             " instances: round trips within 1e-10, eigenvalue map within "
             "1e-8, infinity multiplicities exact" +
             fmt(" (worst %.2e / %.2e)", worst_round, worst_eig));
}

void criterion_resolvent() {
  constexpr long kTrials = 200;
  constexpr double kBound = 1e-10;
  long failures = 0;
  double worst_ident = 0.0;
  double worst_ratio_gap = 0.0;
  for (long i = 0; i < kTrials; ++i) {
    TrialProblem trial = make_trial(505, i);
    const Index d = trial.p.defect_dim();
    const Index n = trial.p.ambient_dim;
    bool ok = true;

    GammaParameter gamma{0.7 * random_hermitian_contraction(trial.eng, d)};
    const Matrix t_base = extend_contraction(trial.p, gamma, tol);
    const SelfadjointRelation base = inverse_cayley(t_base, tol);
    const double ident = spectral_norm(
        base.resolvent() - 0.5 * (Matrix::Identity(n, n) + t_base));
    worst_ident = std::max(worst_ident, ident);
    ok = ok && ident <= kBound;

    Matrix direction = random_hermitian(trial.eng, d, 1.0);
    const double dir_norm = spectral_norm(direction);
    const double room = 1.0 - 1e-12 - spectral_norm(gamma.matrix);
    if (d > 0 && dir_norm > 0.0) direction *= 0.99 * room / dir_norm;

    double bounds[6];
    for (int j = 0; j < 6; ++j) {
      const GammaParameter shifted{
          hermitian_part(gamma.matrix + std::ldexp(1.0, -(j + 1)) * direction)};
      bounds[j] = 0.5 * spectral_norm(extend_contraction(trial.p, shifted, tol) -
                                      t_base);
    }
    for (int j = 0; j + 1 < 6; ++j) {
      if (bounds[j] > 1e-13) {
        const double gap = std::abs(bounds[j + 1] / bounds[j] - 0.5);
        worst_ratio_gap = std::max(worst_ratio_gap, gap);
        ok = ok && gap <= 0.1;
      }
    }
    if (!ok) ++failures;
  }
  report("resolvent_identity_continuity", failures == 0,
         std::to_string(kTrials) +
             " samples: (I+S)^{-1} = (I+T)/2 within 1e-10, halving ratios "
             "0.5 +- 0.1" +
             fmt(" (worst %.2e / %.2e)", worst_ident, worst_ratio_gap));
}

void criterion_domain_decomposition() {
  constexpr long kTrials = 200;
  constexpr double kResidualBound = 1e-8;
  long failures = 0;
  double worst = 0.0;
  for (long i = 0; i < kTrials; ++i) {
    TrialProblem trial = make_trial(606, i);
    const Index d = trial.p.defect_dim();
    GammaParameter gamma{random_hermitian_contraction(trial.eng, d)};
    if (i % 3 == 1) gamma = GammaParameter::krein(d);
    if (i % 3 == 2) gamma = GammaParameter::friedrichs(d);

    const DomainDecomposition dd = domain_decomposition(trial.p, gamma, tol);
    const Subspace sum = subspace_sum(dd.dom_friedrichs, dd.correction, tol);
    const double residual = std::max(containment_residual(sum, dd.dom_gamma),
                                     containment_residual(dd.dom_gamma, sum));
    worst = std::max(worst, residual);
    if (!dd.verified || residual > kResidualBound) ++failures;
  }
  report("domain_decomposition", failures == 0,
         std::to_string(kTrials) +
             " samples incl. boundary parameters, subspace equality within "
             "1e-8" +
             fmt(" (worst %.2e)", worst));
}

void criterion_range_inclusions() {
  constexpr long kTrials = 200;
  long failures = 0;
  for (long i = 0; i < kTrials; ++i) {
    TrialProblem trial = make_trial(707, i);
    if (!range_inclusion_check(trial.p, tol)) ++failures;
  }
  report("range_inclusions", failures == 0,
         std::to_string(kTrials) + " sampled instances, containment residual "
                                   "within 1e-8");
}

void criterion_reference_chain() {
  const double inv_sqrt2 = 0.7071067811865476;
  const double sqrt2 = 1.4142135623730951;
  bool ok = true;

  Matrix basis(2, 1), action(2, 1);
  basis << 1.0, 0.0;
  action << 0.0, inv_sqrt2;
  const PartialOperator t{Subspace(2, basis), action};
  const ExtensionParametrization p = parametrize(t, tol);

  Matrix expected_krein(2, 2), expected_friedrichs(2, 2), expected_sk(2, 2);
  expected_krein << 0.0, inv_sqrt2, inv_sqrt2, 0.5;
  expected_friedrichs << 0.0, inv_sqrt2, inv_sqrt2, -0.5;
  expected_sk << 2.0, -sqrt2, -sqrt2, 1.0;

  ok = ok && spectral_norm(extremal(p, Extremal::krein, tol) - expected_krein) <
                 1e-10;
  ok = ok && spectral_norm(extremal(p, Extremal::friedrichs, tol) -
                           expected_friedrichs) < 1e-10;

  const SelfadjointRelation s_k =
      extension_relation(p, GammaParameter::krein(1), tol);
  ok = ok && s_k.everywhere_defined();
  ok = ok && spectral_norm(s_k.operator_matrix() - expected_sk) < 1e-10;
  const RelationSpectrum ks = relation_spectrum(s_k, tol);
  ok = ok && ks.finite.size() == 2 && std::abs(ks.finite[0]) < 1e-10 &&
       std::abs(ks.finite[1] - 3.0) < 1e-10;

  const SelfadjointRelation s_f =
      extension_relation(p, GammaParameter::friedrichs(1), tol);
  const RelationSpectrum fs = relation_spectrum(s_f, tol);
  ok = ok && fs.infinity_multiplicity == 1 && fs.finite.size() == 1 &&
       std::abs(fs.finite[0] - 1.0 / 3.0) < 1e-10;

  report("reference_2x2_chain", ok,
         "T~(+-1), S_K = [[2,-sqrt2],[-sqrt2,1]] with spectrum {0,3}, S_F "
         "with finite spectrum {1/3} and one infinity");
}

void criterion_laplacian_demo() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (Index n : {Index(6), Index(10)}) {
    const LaplacianDemoReport r =
        demo_report(minimal_laplacian(n), 100, 2026, tol);
    const long failures =
        r.order_failures + r.domain_failures + r.interlacing_failures;
    ok = ok && failures == 0 && r.krein_min_eigenvalue <= 1e-8;
    detail += "n=" + std::to_string(n) + ": " + std::to_string(failures) +
              " failures" + fmt(", lambda_min(S_K)=%.1e; ",
                                std::abs(r.krein_min_eigenvalue));
  }
  const double elapsed = now_seconds(start);
  ok = ok && elapsed < 5.0;
  report("laplacian_demo", ok, detail + fmt("%.2fs (< 5s)", elapsed));
}

}  // namespace

int main() {
  criterion_interval_theorem();
  criterion_bijection();
  criterion_norm_identity();
  criterion_monotone_antitone();
  criterion_cayley();
  criterion_resolvent();
  criterion_domain_decomposition();
  criterion_range_inclusions();
  criterion_reference_chain();
  criterion_laplacian_demo();
  if (failed_criteria == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failed_criteria);
  }
  return failed_criteria;
}
