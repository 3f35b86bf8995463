#include "krein/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>

namespace krein {

namespace {

constexpr double kBallRadius = 1.0 - 1e-12;
constexpr double kRoundTripResidual = 1e-10;
constexpr double kNormIdentityResidual = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t acc, std::uint64_t word) {
  return splitmix64(acc ^ (word + 0x9e3779b97f4a7c15ULL));
}

struct TrialOutcome {
  long failures = 0;
  double residual = 0.0;

  void check(bool ok) {
    if (!ok) ++failures;
  }
  void check(bool ok, double r) {
    check(ok);
    residual = std::max(residual, r);
  }
};

// Runs trials (parallel or serial), folds outcomes into a report. Exceptions
// escaping a trial count as failures with an infinite residual so the report
// stays deterministic either way.
template <typename Fn>
VerificationReport run_verifier(std::string property, const Sampler& s,
                                long trials, bool parallel, Fn&& trial) {
  if (trials < 1) {
    throw InvariantError("trials", static_cast<double>(trials),
                         "verifier needs at least one trial");
  }
  s.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  for_each_trial(trials, parallel, [&](long i) {
    try {
      outcomes[static_cast<std::size_t>(i)] = trial(i);
    } catch (const std::exception& e) {
      if (std::getenv("KREIN_TRACE_TRIALS") != nullptr) {
        std::fprintf(stderr, "[trial %ld] %s\n", i, e.what());
      }
      outcomes[static_cast<std::size_t>(i)] =
          TrialOutcome{1, std::numeric_limits<double>::infinity()};
    }
  });
  VerificationReport report;
  report.property = std::move(property);
  report.instance = "n=" + std::to_string(s.ambient_dim) +
                    ",k=" + std::to_string(s.dom_dim);
  report.trials = trials;
  for (const TrialOutcome& o : outcomes) {
    report.failures += o.failures;
    report.worst_residual = std::max(report.worst_residual, o.residual);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::mt19937_64 trial_stream(const Sampler& s, std::uint64_t property_id,
                             long trial) {
  std::uint64_t h = mix(s.seed, property_id);
  h = mix(h, static_cast<std::uint64_t>(s.ambient_dim));
  h = mix(h, static_cast<std::uint64_t>(s.dom_dim));
  h = mix(h, static_cast<std::uint64_t>(trial));
  return std::mt19937_64(h);
}

double psd_deficit(const Matrix& m) { return std::max(0.0, -min_eigenvalue(m)); }

// Largest eigenvalue of the hermitian part; -inf for empty matrices.
double max_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return -std::numeric_limits<double>::infinity();
  return -min_eigenvalue(Matrix(-m));
}

GammaParameter random_gamma(std::mt19937_64& eng, Index d) {
  return GammaParameter{random_hermitian_contraction(eng, d)};
}

}  // namespace

void Sampler::validate() const {
  if (ambient_dim < 1 || dom_dim < 1 || dom_dim > ambient_dim) {
    throw InvariantError("sampler_dims", static_cast<double>(dom_dim),
                         "sampler needs 1 <= dom_dim <= ambient_dim");
  }
}

std::mt19937_64 Sampler::stream(std::initializer_list<std::uint64_t> words) const {
  std::uint64_t h = mix(seed, static_cast<std::uint64_t>(ambient_dim));
  h = mix(h, static_cast<std::uint64_t>(dom_dim));
  for (std::uint64_t w : words) h = mix(h, w);
  return std::mt19937_64(h);
}

Matrix random_matrix(std::mt19937_64& eng, Index rows, Index cols, double scale) {
  std::normal_distribution<double> gauss(0.0, scale / std::sqrt(2.0));
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = Complex(gauss(eng), gauss(eng));
    }
  }
  return m;
}

Matrix random_hermitian(std::mt19937_64& eng, Index n, double scale) {
  return hermitian_part(random_matrix(eng, n, n, scale));
}

Matrix clip_spectrum(const Matrix& hermitian, double lo, double hi) {
  if (hermitian.rows() == 0) return hermitian;
  const HermitianEig eig = hermitian_eig(hermitian, Tolerance{});
  RealVector clipped = eig.eigenvalues.cwiseMax(lo).cwiseMin(hi);
  return hermitian_part(eig.eigenvectors * clipped.asDiagonal() *
                        eig.eigenvectors.adjoint());
}

Matrix random_hermitian_contraction(std::mt19937_64& eng, Index n) {
  // Rescaled, not clipped: clipping would pile probability mass at
  // quasi-degenerate spectra a hair inside the ball, while rescaling lands
  // the extremal eigenvalue exactly on the boundary, which the rank cutoffs
  // handle cleanly.
  Matrix h = random_hermitian(eng, n, 1.0);
  const double norm = spectral_norm(h);
  if (norm > 1.0) h /= norm;
  return h;
}

Matrix random_contraction(std::mt19937_64& eng, Index rows, Index cols) {
  Matrix g = random_matrix(eng, rows, cols, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double target = uni(eng);
  const double norm = spectral_norm(g);
  if (rows == 0 || cols == 0 || norm == 0.0) return g;
  return g * (target / norm);
}

PartialOperator random_partial_symmetric_contraction(std::mt19937_64& eng,
                                                     Index n, Index k) {
  const Tolerance tol;
  const Subspace dom = orthonormal_basis(random_matrix(eng, n, k, 1.0), tol);
  if (dom.dim() != k) {
    throw InternalError("random domain sample was rank deficient");
  }
  const Subspace comp = orthogonal_complement(dom);
  const Matrix a = random_hermitian_contraction(eng, k);
  const Matrix gamma2 = random_contraction(eng, n - k, k);
  const Matrix defect_a =
      defect_pair(a, tol).defect_operator;
  const Matrix action =
      dom.basis() * a + comp.basis() * (gamma2 * defect_a);
  return PartialOperator{dom, action};
}

PartialOperator random_positive_partial(std::mt19937_64& eng, Index n, Index k,
                                        double scale) {
  const Tolerance tol;
  const Subspace dom = orthonormal_basis(random_matrix(eng, n, k, 1.0), tol);
  if (dom.dim() != k) {
    throw InternalError("random domain sample was rank deficient");
  }
  const Subspace comp = orthogonal_complement(dom);
  // |H| spectrally: positive with generic spectrum in [0, O(scale)].
  const HermitianEig eig = hermitian_eig(random_hermitian(eng, k, scale), tol);
  const Matrix compression =
      eig.eigenvectors * eig.eigenvalues.cwiseAbs().asDiagonal() *
      eig.eigenvectors.adjoint();
  const Matrix off = random_matrix(eng, n - k, k, scale);
  return PartialOperator{dom, dom.basis() * hermitian_part(compression) +
                                  comp.basis() * off};
}

PartialOperator sample_partial_symmetric_contraction(const Sampler& s) {
  s.validate();
  std::mt19937_64 eng = s.stream({0x70617274ULL});  // "part"
  return random_partial_symmetric_contraction(eng, s.ambient_dim, s.dom_dim);
}

Matrix sample_hermitian(const Sampler& s, double scale) {
  s.validate();
  if (!(scale > 0)) {
    throw InvariantError("scale", scale, "sample_hermitian needs scale > 0");
  }
  std::mt19937_64 eng = s.stream({0x6865726dULL});  // "herm"
  return random_hermitian(eng, s.ambient_dim, scale);
}

VerificationReport verify_interval_theorem(const Sampler& s, long trials,
                                           const Tolerance& tol,
                                           RunPolicy policy) {
  return run_verifier(
      "interval_theorem", s, trials, policy.parallel, [&](long i) {
        std::mt19937_64 eng = trial_stream(s, 1, i);
        const PartialOperator t =
            random_partial_symmetric_contraction(eng, s.ambient_dim, s.dom_dim);
        const ExtensionParametrization p = parametrize(t, tol);
        TrialOutcome out;

        // A constructed member passes both routes.
        const GammaParameter gamma = random_gamma(eng, p.defect_dim());
        const Matrix member = extend_contraction(p, gamma, tol);
        const double ext_res =
            spectral_norm(member * p.dom_t.basis() - p.action());
        out.check(is_extension_member(p, member, MembershipRoute::direct, tol),
                  ext_res);
        const Matrix upper = extremal(p, Extremal::krein, tol);
        const Matrix lower = extremal(p, Extremal::friedrichs, tol);
        out.check(is_extension_member(p, member, MembershipRoute::interval, tol),
                  std::max(psd_deficit(upper - member),
                           psd_deficit(member - lower)));

        // Routes agree on arbitrary hermitian candidates at mixed scales.
        const double scales[] = {0.1, 1.0, 10.0};
        const Matrix candidate =
            random_hermitian(eng, s.ambient_dim, scales[i % 3]);
        out.check(
            is_extension_member(p, candidate, MembershipRoute::direct, tol) ==
            is_extension_member(p, candidate, MembershipRoute::interval, tol));

        // The boundary itself is a member on both routes.
        const Matrix& boundary = (i % 2 == 0) ? upper : lower;
        out.check(is_extension_member(p, boundary, MembershipRoute::direct, tol));
        out.check(
            is_extension_member(p, boundary, MembershipRoute::interval, tol));
        return out;
      });
}

VerificationReport verify_extension_bijection(const Sampler& s, long trials,
                                              const Tolerance& tol,
                                              RunPolicy policy) {
  return run_verifier(
      "extension_bijection", s, trials, policy.parallel, [&](long i) {
        std::mt19937_64 eng = trial_stream(s, 2, i);
        const PartialOperator t =
            random_partial_symmetric_contraction(eng, s.ambient_dim, s.dom_dim);
        const ExtensionParametrization p = parametrize(t, tol);
        const GammaParameter gamma = random_gamma(eng, p.defect_dim());

        const Matrix b = extend_contraction(p, gamma, tol);
        const GammaParameter recovered = recover_gamma(p, b, tol);
        const double gamma_res = spectral_norm(recovered.matrix - gamma.matrix);
        const Matrix rebuilt = extend_contraction(p, recovered, tol);
        const double b_res = spectral_norm(rebuilt - b);

        TrialOutcome out;
        out.check(gamma_res <= kRoundTripResidual, gamma_res);
        out.check(b_res <= kRoundTripResidual, b_res);
        return out;
      });
}

VerificationReport verify_monotone_antitone(const Sampler& s, long trials,
                                            const Tolerance& tol,
                                            RunPolicy policy) {
  return run_verifier(
      "monotone_antitone", s, trials, policy.parallel, [&](long i) {
        std::mt19937_64 eng = trial_stream(s, 3, i);
        const PartialOperator t =
            random_partial_symmetric_contraction(eng, s.ambient_dim, s.dom_dim);
        const ExtensionParametrization p = parametrize(t, tol);
        const Index d = p.defect_dim();

        const GammaParameter lo = random_gamma(eng, d);
        // PSD increment scaled so the sum stays inside the ball; scaling the
        // step (instead of clipping the sum) keeps lo <= hi exact.
        Matrix step = random_matrix(eng, d, d, 1.0);
        step = hermitian_part(step.adjoint() * step);
        double t_max = 0.0;
        if (d > 0 && max_eigenvalue(step) > 0.0) {
          t_max = std::min(
              1.0, (kBallRadius - max_eigenvalue(lo.matrix)) /
                       max_eigenvalue(step));
          t_max = std::max(0.0, t_max);
        }
        const GammaParameter hi{hermitian_part(lo.matrix + t_max * step)};

        const Matrix t_lo = extend_contraction(p, lo, tol);
        const Matrix t_hi = extend_contraction(p, hi, tol);

        TrialOutcome out;
        // Monotone on the contraction side.
        out.check(is_psd(t_hi - t_lo, tol), psd_deficit(t_hi - t_lo));

        // Exact norm identity for the difference.
        const Matrix e = p.space_gamma2_star.basis();
        const Matrix inner = p.defect_gamma2_star * e *
                             (lo.matrix - hi.matrix) * e.adjoint() *
                             p.defect_gamma2_star;
        const double gap =
            std::abs(spectral_norm(t_lo - t_hi) - spectral_norm(inner));
        out.check(gap <= kNormIdentityResidual, gap);

        // Antitone on the relation side.
        const SelfadjointRelation s_lo = inverse_cayley(t_lo, tol);
        const SelfadjointRelation s_hi = inverse_cayley(t_hi, tol);
        const Order order = compare_extensions(s_lo, s_hi, tol);
        out.check(order == Order::ge || order == Order::equal);

        // Sandwich between the Krein and Friedrichs extensions.
        const SelfadjointRelation s_k =
            extension_relation(p, GammaParameter::krein(d), tol);
        const SelfadjointRelation s_f =
            extension_relation(p, GammaParameter::friedrichs(d), tol);
        const Order left = compare_extensions(s_k, s_lo, tol);
        const Order right = compare_extensions(s_lo, s_f, tol);
        out.check(left == Order::le || left == Order::equal);
        out.check(right == Order::le || right == Order::equal);
        return out;
      });
}

VerificationReport verify_cayley_bijection(const Sampler& s, long trials,
                                           const Tolerance& tol,
                                           RunPolicy policy) {
  return run_verifier(
      "cayley_bijection", s, trials, policy.parallel, [&](long i) {
        std::mt19937_64 eng = trial_stream(s, 4, i);
        TrialOutcome out;
        const double scales[] = {0.5, 2.0, 10.0};

        // Positive side: C^{-1}(C(S)) = S.
        const PartialOperator pos = random_positive_partial(
            eng, s.ambient_dim, s.dom_dim, scales[i % 3]);
        const PartialOperator back =
            inverse_cayley_partial(cayley_transform(pos, tol), tol);
        const double pos_res = partial_operator_distance(back, pos) /
                               std::max(1.0, spectral_norm(pos.action));
        out.check(pos_res <= kRoundTripResidual, pos_res);

        // Contraction side: C(C^{-1}(T)) = T. The sampled spectrum stays
        // clear of -1 so that I + T is injective, as the inverse requires.
        const Subspace dom = orthonormal_basis(
            random_matrix(eng, s.ambient_dim, s.dom_dim, 1.0), tol);
        const Subspace comp = orthogonal_complement(dom);
        const Matrix a = clip_spectrum(
            random_hermitian(eng, s.dom_dim, 1.0), -1.0 + 1e-3, kBallRadius);
        const Matrix gamma2 =
            random_contraction(eng, s.ambient_dim - s.dom_dim, s.dom_dim);
        const Matrix action =
            dom.basis() * a +
            comp.basis() * (gamma2 * defect_pair(a, tol).defect_operator);
        const PartialOperator t{dom, action};
        const PartialOperator t_back =
            cayley_transform(inverse_cayley_partial(t, tol), tol);
        const double t_res = partial_operator_distance(t_back, t);
        out.check(t_res <= kRoundTripResidual, t_res);

        // Spectral mapping for full hermitian contractions, with exact -1
        // eigenvalues forced on a third of the trials.
        Matrix full = random_hermitian_contraction(eng, s.ambient_dim);
        if (i % 3 == 0) {
          HermitianEig eig = hermitian_eig(full, tol);
          RealVector vals = eig.eigenvalues;
          const Index pinned = 1 + static_cast<Index>(i % s.ambient_dim);
          for (Index j = 0; j < pinned && j < vals.size(); ++j) vals(j) = -1.0;
          full = hermitian_part(eig.eigenvectors * vals.asDiagonal() *
                                eig.eigenvectors.adjoint());
        }
        const HermitianEig eig = hermitian_eig(full, tol);
        const SelfadjointRelation rel = inverse_cayley(full, tol);
        const RelationSpectrum spec = relation_spectrum(rel, tol);

        Index expected_infinity = 0;
        std::vector<double> expected_finite;
        for (Index j = 0; j < eig.eigenvalues.size(); ++j) {
          const double lam = eig.eigenvalues(j);
          if (std::abs(lam + 1.0) <= tol.rank_rel) {
            ++expected_infinity;
          } else {
            expected_finite.push_back((1.0 - lam) / (1.0 + lam));
          }
        }
        std::sort(expected_finite.begin(), expected_finite.end());
        out.check(spec.infinity_multiplicity == expected_infinity);
        out.check(spec.finite.size() == expected_finite.size());
        if (spec.finite.size() == expected_finite.size()) {
          for (std::size_t j = 0; j < expected_finite.size(); ++j) {
            const double err = std::abs(spec.finite[j] - expected_finite[j]) /
                               std::max(1.0, std::abs(expected_finite[j]));
            out.check(err <= 1e-8, err);
          }
        }
        return out;
      });
}

VerificationReport verify_resolvent_continuity(const Sampler& s, long steps,
                                               const Tolerance& tol,
                                               RunPolicy policy) {
  return run_verifier(
      "resolvent_continuity", s, steps, policy.parallel, [&](long i) {
        std::mt19937_64 eng = trial_stream(s, 5, i);
        const PartialOperator t =
            random_partial_symmetric_contraction(eng, s.ambient_dim, s.dom_dim);
        const ExtensionParametrization p = parametrize(t, tol);
        const Index d = p.defect_dim();
        TrialOutcome out;

        GammaParameter gamma{0.7 * random_hermitian_contraction(eng, d)};
        const Matrix t_base = extend_contraction(p, gamma, tol);
        const SelfadjointRelation base = inverse_cayley(t_base, tol);

        // Resolvent identity at the base point.
        const Index n = p.ambient_dim;
        const double ident_res = spectral_norm(
            base.resolvent() - 0.5 * (Matrix::Identity(n, n) + t_base));
        out.check(ident_res <= kRoundTripResidual, ident_res);

        // Direction scaled into the ball once, so no later clipping is ever
        // needed and the perturbation sizes halve exactly.
        Matrix direction = random_hermitian(eng, d, 1.0);
        const double dir_norm = spectral_norm(direction);
        const double room = kBallRadius - spectral_norm(gamma.matrix);
        if (d > 0 && dir_norm > 0.0 && room > 0.0) {
          direction *= 0.99 * room / dir_norm;
        }

        constexpr int kHalvings = 6;
        double bounds[kHalvings];
        const Matrix base_res = base.resolvent();
        for (int j = 0; j < kHalvings; ++j) {
          const double step = std::ldexp(1.0, -(j + 1));  // 2^{-(j+1)}
          const GammaParameter shifted{
              hermitian_part(gamma.matrix + step * direction)};
          const Matrix t_shift = extend_contraction(p, shifted, tol);
          const SelfadjointRelation rel = inverse_cayley(t_shift, tol);
          const Matrix res = rel.resolvent();
          bounds[j] = 0.5 * spectral_norm(t_shift - t_base);
          for (int v = 0; v < 3; ++v) {
            const Vector xi = random_matrix(eng, n, 1, 1.0).col(0);
            const double lhs = (res * xi - base_res * xi).norm();
            const double excess = lhs - bounds[j] * xi.norm() - 1e-12;
            out.check(excess <= 0.0, std::max(0.0, excess));
          }
        }
        for (int j = 0; j + 1 < kHalvings; ++j) {
          if (bounds[j] > 1e-13) {
            const double ratio = bounds[j + 1] / bounds[j];
            out.check(std::abs(ratio - 0.5) <= 0.1, std::abs(ratio - 0.5));
          }
        }
        return out;
      });
}

VerificationReport verify_domain_decomposition(const Sampler& s, long trials,
                                               const Tolerance& tol,
                                               RunPolicy policy) {
  return run_verifier(
      "domain_decomposition", s, trials, policy.parallel, [&](long i) {
        std::mt19937_64 eng = trial_stream(s, 6, i);
        const PartialOperator t =
            random_partial_symmetric_contraction(eng, s.ambient_dim, s.dom_dim);
        const ExtensionParametrization p = parametrize(t, tol);
        const Index d = p.defect_dim();

        GammaParameter gamma = random_gamma(eng, d);
        if (i % 3 == 1) gamma = GammaParameter::krein(d);
        if (i % 3 == 2) gamma = GammaParameter::friedrichs(d);

        const DomainDecomposition dd = domain_decomposition(p, gamma, tol);
        const Subspace sum =
            subspace_sum(dd.dom_friedrichs, dd.correction, tol);
        const double residual =
            std::max(containment_residual(sum, dd.dom_gamma),
                     containment_residual(dd.dom_gamma, sum));

        TrialOutcome out;
        out.check(dd.verified, residual);
        out.check(range_inclusion_check(p, tol));
        return out;
      });
}

std::vector<VerificationReport> verify_all(std::uint64_t seed,
                                           const std::vector<Index>& dims,
                                           long trials, const Tolerance& tol,
                                           RunPolicy policy) {
  std::vector<VerificationReport> reports;
  for (Index n : dims) {
    for (Index k = 1; k <= n; ++k) {
      const Sampler s{seed, n, k};
      reports.push_back(verify_interval_theorem(s, trials, tol, policy));
      reports.push_back(verify_extension_bijection(s, trials, tol, policy));
      reports.push_back(verify_monotone_antitone(s, trials, tol, policy));
      reports.push_back(verify_cayley_bijection(s, trials, tol, policy));
      reports.push_back(verify_resolvent_continuity(s, trials, tol, policy));
      reports.push_back(verify_domain_decomposition(s, trials, tol, policy));
    }
  }
  return reports;
}

}  // namespace krein
