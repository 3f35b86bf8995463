#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "krein/cayley.hpp"
#include "krein/extensions.hpp"
#include "krein/types.hpp"

namespace krein {

/// Deterministic instance generator. Identical fields give identical sample
/// streams; every derived stream depends only on (seed, stream words), so
/// parallel and serial trial loops see the same data.
struct Sampler {
  std::uint64_t seed = 0;
  Index ambient_dim = 2;
  Index dom_dim = 1;

  void validate() const;
  /// Independent substream labelled by an arbitrary word list.
  std::mt19937_64 stream(std::initializer_list<std::uint64_t> words) const;
};

struct VerificationReport {
  std::string property;
  std::string instance;  ///< free-form context, e.g. "n=3,k=2"
  long trials = 0;
  long failures = 0;
  double worst_residual = 0.0;
  double elapsed_seconds = 0.0;
};

struct RunPolicy {
  bool parallel = true;
};

/// Trial-loop driver shared by the verifiers and the demo: runs `fn(i)` for
/// i in [0, trials), OpenMP-parallel when requested. Results must be written
/// into per-index slots by the caller to stay deterministic.
template <typename Fn>
void for_each_trial(long trials, bool parallel, Fn&& fn) {
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < trials; ++i) fn(i);
  } else {
    for (long i = 0; i < trials; ++i) fn(i);
  }
}

// Engine-level generators.
Matrix random_matrix(std::mt19937_64& eng, Index rows, Index cols, double scale);
Matrix random_hermitian(std::mt19937_64& eng, Index n, double scale);
/// Spectral projection of a hermitian matrix onto [lo, hi].
Matrix clip_spectrum(const Matrix& hermitian, double lo, double hi);
/// Hermitian with spectrum clipped into the open unit ball (radius 1 - 1e-12).
Matrix random_hermitian_contraction(std::mt19937_64& eng, Index n);
/// Operator norm uniformly distributed in [0, 1).
Matrix random_contraction(std::mt19937_64& eng, Index rows, Index cols);
PartialOperator random_partial_symmetric_contraction(std::mt19937_64& eng,
                                                     Index n, Index k);
PartialOperator random_positive_partial(std::mt19937_64& eng, Index n, Index k,
                                        double scale);

// Sampler-level entry points.
PartialOperator sample_partial_symmetric_contraction(const Sampler& s);
Matrix sample_hermitian(const Sampler& s, double scale);

/// Membership routes (direct vs interval) agree for constructed members,
/// random hermitian candidates, and the extremal boundary.
VerificationReport verify_interval_theorem(const Sampler& s, long trials,
                                           const Tolerance& tol,
                                           RunPolicy policy = {});

/// extend_contraction and recover_gamma invert each other to 1e-10.
VerificationReport verify_extension_bijection(const Sampler& s, long trials,
                                              const Tolerance& tol,
                                              RunPolicy policy = {});

/// Gamma' <= Gamma'' gives T~(Gamma') <= T~(Gamma''), the reversed order on
/// the relation side, the exact norm identity, and the Krein/Friedrichs
/// sandwich.
VerificationReport verify_monotone_antitone(const Sampler& s, long trials,
                                            const Tolerance& tol,
                                            RunPolicy policy = {});

/// Cayley round trips on both sides plus the spectral mapping
/// t -> (1 - t)/(1 + t) with infinity multiplicities matched exactly.
VerificationReport verify_cayley_bijection(const Sampler& s, long trials,
                                           const Tolerance& tol,
                                           RunPolicy policy = {});

/// The resolvent identity (I + S~(Gamma))^{-1} = (I + T~(Gamma))/2 and the
/// halving of resolvent perturbations along Gamma_j = Gamma + 2^{-j} Delta.
VerificationReport verify_resolvent_continuity(const Sampler& s, long steps,
                                               const Tolerance& tol,
                                               RunPolicy policy = {});

/// Domain decomposition through the Friedrichs domain (including the
/// boundary parameters +I/-I) and the range inclusion chain.
VerificationReport verify_domain_decomposition(const Sampler& s, long trials,
                                               const Tolerance& tol,
                                               RunPolicy policy = {});

/// Every verifier, for every ambient dimension in `dims` and every domain
/// dimension 1..n.
std::vector<VerificationReport> verify_all(std::uint64_t seed,
                                           const std::vector<Index>& dims,
                                           long trials, const Tolerance& tol,
                                           RunPolicy policy = {});

}  // namespace krein
