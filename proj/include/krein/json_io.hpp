#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "krein/cayley.hpp"
#include "krein/extensions.hpp"
#include "krein/laplacian.hpp"
#include "krein/oracle.hpp"
#include "krein/types.hpp"

namespace krein {

using Json = nlohmann::json;

/// A file or document that does not match the documented schema.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Complex scalars serialize as [re, im]; matrices as row-major nested arrays.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json real_vector_to_json(const std::vector<double>& v);

Json subspace_to_json(const Subspace& s);

Json tolerance_to_json(const Tolerance& tol);
/// Partial overrides: absent fields keep the values in `base`.
Tolerance tolerance_from_json(const Json& j, Tolerance base);

/// Parsed problem file: the operator (domain orthonormalized on ingest, the
/// action re-expressed against the new basis), tolerance overrides, and the
/// optional lower-bound shift.
struct ProblemFile {
  PartialOperator op{Subspace::zero(0), Matrix(0, 0)};
  Tolerance tol;
  std::optional<double> lower_bound_shift;
};

ProblemFile problem_from_json(const Json& j, const Tolerance& default_tol);

/// Gamma file: an explicit matrix in the library-reported defect basis, or
/// one of the literals "krein" / "friedrichs" / "neutral".
GammaParameter gamma_from_json(const Json& j, Index defect_dim);

Json parametrization_to_json(const ExtensionParametrization& p);
Json relation_to_json(const SelfadjointRelation& r);
Json report_to_json(const VerificationReport& r);
Json demo_report_to_json(const LaplacianDemoReport& r);
Json domain_decomposition_to_json(const DomainDecomposition& dd);

}  // namespace krein
