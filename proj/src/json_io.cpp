#include "krein/json_io.hpp"

#include <cmath>

namespace krein {

namespace {

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) {
    throw ParseError(std::string(what) + ": expected a number");
  }
  const double x = j.get<double>();
  if (!std::isfinite(x)) {
    throw ParseError(std::string(what) + ": number is not finite");
  }
  return x;
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("complex entries must be [re, im] pairs");
  }
  return Complex(finite_number(j[0], "re"), finite_number(j[1], "im"));
}

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be a nested array");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  for (const Json& row : j) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays");
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
    } else if (static_cast<Index>(row.size()) != cols) {
      throw ParseError("matrix rows have inconsistent lengths");
    }
  }
  if (rows == 0) return Matrix(0, 0);
  Matrix m(rows, std::max<Index>(cols, 0));
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

Json real_vector_to_json(const std::vector<double>& v) {
  return Json(v);
}

Json subspace_to_json(const Subspace& s) {
  return Json{{"ambient_dim", s.ambient_dim()},
              {"dim", s.dim()},
              {"basis", matrix_to_json(s.basis())}};
}

Json tolerance_to_json(const Tolerance& tol) {
  return Json{{"ortho", tol.ortho},
              {"rank_rel", tol.rank_rel},
              {"psd", tol.psd},
              {"contraction", tol.contraction},
              {"compare", tol.compare}};
}

Tolerance tolerance_from_json(const Json& j, Tolerance base) {
  if (!j.is_object()) throw ParseError("tolerance overrides must be an object");
  for (const auto& [key, value] : j.items()) {
    const double x = finite_number(value, key.c_str());
    if (key == "ortho") base.ortho = x;
    else if (key == "rank_rel") base.rank_rel = x;
    else if (key == "psd") base.psd = x;
    else if (key == "contraction") base.contraction = x;
    else if (key == "compare") base.compare = x;
    else throw ParseError("unknown tolerance field '" + key + "'");
  }
  base.validate();
  return base;
}

ProblemFile problem_from_json(const Json& j, const Tolerance& default_tol) {
  if (!j.is_object()) throw ParseError("problem file must be a JSON object");
  if (!j.contains("ambient_dim") || !j.contains("domain_basis") ||
      !j.contains("action")) {
    throw ParseError(
        "problem file needs ambient_dim, domain_basis, and action");
  }
  ProblemFile out;
  out.tol = default_tol;
  if (j.contains("tolerance")) {
    out.tol = tolerance_from_json(j["tolerance"], out.tol);
  }
  if (!j["ambient_dim"].is_number_integer()) {
    throw ParseError("ambient_dim must be an integer");
  }
  const Index n = j["ambient_dim"].get<Index>();
  if (n < 1) throw ParseError("ambient_dim must be at least 1");

  const Matrix raw_basis = matrix_from_json(j["domain_basis"]);
  const Matrix raw_action = matrix_from_json(j["action"]);
  if (raw_basis.rows() != n || raw_action.rows() != n) {
    throw ParseError("domain_basis and action must have ambient_dim rows");
  }
  if (raw_basis.cols() != raw_action.cols()) {
    throw ParseError("domain_basis and action must have the same column count");
  }
  if (raw_basis.cols() < 1) {
    throw ParseError("the domain must contain at least one column");
  }

  // Orthonormalize the written basis and re-express the action against it.
  const Subspace dom = orthonormal_basis(raw_basis, out.tol);
  if (dom.dim() != raw_basis.cols()) {
    throw InvariantError(
        "domain_rank", static_cast<double>(raw_basis.cols() - dom.dim()),
        "domain_basis columns are numerically dependent, the operator is "
        "not well defined");
  }
  const Matrix change = dom.basis().adjoint() * raw_basis;  // k x k, invertible
  const Matrix action = raw_action * change.inverse();
  out.op = PartialOperator{dom, action};

  if (j.contains("lower_bound_shift")) {
    out.lower_bound_shift =
        finite_number(j["lower_bound_shift"], "lower_bound_shift");
  }
  return out;
}

GammaParameter gamma_from_json(const Json& j, Index defect_dim) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "krein") return GammaParameter::krein(defect_dim);
    if (name == "friedrichs") return GammaParameter::friedrichs(defect_dim);
    if (name == "neutral") return GammaParameter::neutral(defect_dim);
    throw ParseError("unknown gamma literal '" + name + "'");
  }
  if (j.is_object() && j.contains("special")) {
    return gamma_from_json(j["special"], defect_dim);
  }
  const Json& mat = j.is_object() && j.contains("matrix") ? j["matrix"] : j;
  GammaParameter gamma{matrix_from_json(mat)};
  if (gamma.matrix.rows() != defect_dim || gamma.matrix.cols() != defect_dim) {
    throw ParseError("gamma matrix must be " + std::to_string(defect_dim) +
                     "x" + std::to_string(defect_dim) +
                     " in the reported defect basis");
  }
  return gamma;
}

Json parametrization_to_json(const ExtensionParametrization& p) {
  return Json{
      {"ambient_dim", p.ambient_dim},
      {"dom_dim", p.dom_dim()},
      {"defect_dims",
       Json{{"d_a", p.space_a.dim()}, {"d_gamma2_star", p.defect_dim()}}},
      {"a", matrix_to_json(p.a)},
      {"gamma2", matrix_to_json(p.gamma2)},
      {"defect_a", matrix_to_json(p.defect_a)},
      {"defect_gamma2_star", matrix_to_json(p.defect_gamma2_star)},
      {"dom_basis", matrix_to_json(p.dom_t.basis())},
      {"complement_basis", matrix_to_json(p.complement.basis())},
      {"defect_a_basis", matrix_to_json(p.space_a.basis())},
      {"defect_gamma2_star_basis", matrix_to_json(p.space_gamma2_star.basis())},
      {"defect_gamma2_star_basis_ambient",
       matrix_to_json(p.complement.basis() * p.space_gamma2_star.basis())}};
}

Json relation_to_json(const SelfadjointRelation& r) {
  return Json{{"ambient_dim", r.ambient_dim()},
              {"domain_basis", matrix_to_json(r.domain().basis())},
              {"operator_action", matrix_to_json(r.action())},
              {"operator_matrix_ambient", matrix_to_json(r.operator_matrix())},
              {"multivalued_basis", matrix_to_json(r.multivalued_part().basis())}};
}

Json report_to_json(const VerificationReport& r) {
  return Json{{"property", r.property},
              {"instance", r.instance},
              {"trials", r.trials},
              {"failures", r.failures},
              {"worst_residual", r.worst_residual},
              {"elapsed_seconds", r.elapsed_seconds}};
}

Json domain_decomposition_to_json(const DomainDecomposition& dd) {
  return Json{{"dom_friedrichs_basis", matrix_to_json(dd.dom_friedrichs.basis())},
              {"correction_basis", matrix_to_json(dd.correction.basis())},
              {"dom_gamma_basis", matrix_to_json(dd.dom_gamma.basis())},
              {"verified", dd.verified}};
}

Json demo_report_to_json(const LaplacianDemoReport& r) {
  return Json{
      {"n", r.n},
      {"dom_dim", r.dom_dim},
      {"complement_dim", r.complement_dim},
      {"defect_dim", r.defect_dim},
      {"krein",
       Json{{"finite_spectrum", real_vector_to_json(r.krein.finite)},
            {"infinity_multiplicity", r.krein.infinity_multiplicity}}},
      {"friedrichs",
       Json{{"finite_spectrum", real_vector_to_json(r.friedrichs.finite)},
            {"infinity_multiplicity", r.friedrichs.infinity_multiplicity}}},
      {"krein_min_eigenvalue", r.krein_min_eigenvalue},
      {"krein_kernel_detected", r.krein_kernel_detected},
      {"dom_s_dim", r.dom_s_dim},
      {"dom_friedrichs_dim", r.dom_friedrichs_dim},
      {"dom_krein_dim", r.dom_krein_dim},
      {"samples", r.samples},
      {"order_failures", r.order_failures},
      {"domain_failures", r.domain_failures},
      {"interlacing_failures", r.interlacing_failures},
      {"worst_order_residual", r.worst_order_residual},
      {"worst_domain_residual", r.worst_domain_residual},
      {"dirichlet_spectrum", real_vector_to_json(r.dirichlet_spectrum)},
      {"dirichlet_vs_friedrichs_max_diff", r.dirichlet_vs_friedrichs_max_diff}};
}

}  // namespace krein
