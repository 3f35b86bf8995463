// krein: positive selfadjoint extensions of partial symmetric operators on
// finite-dimensional complex spaces. Subcommands parse JSON problem files,
// run the extension machinery, and emit JSON reports on standard output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "krein/json_io.hpp"

namespace {

using krein::GammaParameter;
using krein::Index;
using krein::Json;
using krein::Tolerance;

constexpr int kExitOk = 0;
constexpr int kExitMalformedFile = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitVerificationFailure = 3;

constexpr const char* kToleranceEnvVar = "KREIN_TOLERANCES";

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw krein::ParseError("cannot open file '" + path + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw krein::ParseError("cannot parse '" + path + "': " + e.what());
  }
}

Tolerance default_tolerance() {
  Tolerance tol;
  if (const char* env = std::getenv(kToleranceEnvVar)) {
    try {
      tol = krein::tolerance_from_json(Json::parse(env), tol);
    } catch (const std::exception& e) {
      throw krein::ParseError(std::string(kToleranceEnvVar) +
                              " does not hold a tolerance object: " + e.what());
    }
  }
  return tol;
}

// The problem file describes a symmetric operator bounded from below. The
// pipeline shifts it positive, takes the Cayley transform, and parametrizes
// the resulting symmetric partial contraction.
struct LoadedProblem {
  krein::Tolerance tol;
  double shift = 0.0;
  krein::PartialOperator positive_op{krein::Subspace::zero(0), krein::Matrix(0, 0)};
  krein::PartialOperator contraction{krein::Subspace::zero(0), krein::Matrix(0, 0)};
  krein::ExtensionParametrization parametrization;
};

LoadedProblem load_problem(const std::string& path) {
  const krein::ProblemFile file =
      krein::problem_from_json(read_json_file(path), default_tolerance());
  LoadedProblem out;
  out.tol = file.tol;
  out.shift = file.lower_bound_shift.value_or(0.0);
  out.positive_op = krein::shift_lower_bound(file.op, out.shift, file.tol);
  out.positive_op.require_positive(file.tol);
  out.contraction = krein::cayley_transform(out.positive_op, file.tol);
  out.parametrization = krein::parametrize(out.contraction, file.tol);
  return out;
}

GammaParameter load_gamma(const std::string& arg, Index defect_dim) {
  if (arg == "krein" || arg == "friedrichs" || arg == "neutral") {
    return krein::gamma_from_json(Json(arg), defect_dim);
  }
  return krein::gamma_from_json(read_json_file(arg), defect_dim);
}

std::vector<Index> parse_dims(const std::string& spec) {
  std::vector<Index> dims;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots != std::string::npos) {
      const Index lo = std::stol(part.substr(0, dots));
      const Index hi = std::stol(part.substr(dots + 2));
      for (Index n = lo; n <= hi; ++n) dims.push_back(n);
    } else if (!part.empty()) {
      dims.push_back(std::stol(part));
    }
  }
  if (dims.empty()) {
    throw krein::ParseError("--dims must name at least one dimension");
  }
  for (Index n : dims) {
    if (n < 1) throw krein::ParseError("dimensions must be positive");
  }
  return dims;
}

void emit(const Json& j) { std::cout << j.dump(2) << std::endl; }

int run_parametrize(const std::string& problem_path) {
  const LoadedProblem problem = load_problem(problem_path);
  Json out = krein::parametrization_to_json(problem.parametrization);
  out["lower_bound_shift"] = problem.shift;
  out["tolerance"] = krein::tolerance_to_json(problem.tol);
  emit(out);
  return kExitOk;
}

int run_extend(const std::string& problem_path, const std::string& gamma_arg) {
  const LoadedProblem problem = load_problem(problem_path);
  const auto& p = problem.parametrization;
  const GammaParameter gamma = load_gamma(gamma_arg, p.defect_dim());

  const krein::Matrix extended = krein::extend_contraction(p, gamma, problem.tol);
  const krein::SelfadjointRelation relation =
      krein::extension_relation(p, gamma, problem.tol);
  const krein::RelationSpectrum spectrum =
      krein::relation_spectrum(relation, problem.tol);
  const krein::DomainDecomposition dd =
      krein::domain_decomposition(p, gamma, problem.tol);

  emit(Json{{"t_tilde", krein::matrix_to_json(extended)},
            {"s_tilde", krein::relation_to_json(relation)},
            {"finite_spectrum", krein::real_vector_to_json(spectrum.finite)},
            {"infinity_multiplicity", spectrum.infinity_multiplicity},
            {"lower_bound_shift", problem.shift},
            {"domain_decomposition", krein::domain_decomposition_to_json(dd)}});
  return kExitOk;
}

int run_membership(const std::string& problem_path,
                   const std::string& candidate_path, const std::string& route) {
  const LoadedProblem problem = load_problem(problem_path);
  const Json candidate_json = read_json_file(candidate_path);
  const krein::Matrix candidate = krein::matrix_from_json(
      candidate_json.is_object() && candidate_json.contains("matrix")
          ? candidate_json["matrix"]
          : candidate_json);

  Json out;
  if (route == "direct" || route == "both") {
    out["direct"] = krein::is_extension_member(
        problem.parametrization, candidate, krein::MembershipRoute::direct,
        problem.tol);
  }
  if (route == "interval" || route == "both") {
    out["interval"] = krein::is_extension_member(
        problem.parametrization, candidate, krein::MembershipRoute::interval,
        problem.tol);
  }
  emit(out);
  return kExitOk;
}

int run_compare(const std::string& problem_path, const std::string& gamma_a,
                const std::string& gamma_b) {
  const LoadedProblem problem = load_problem(problem_path);
  const auto& p = problem.parametrization;
  const auto ra = krein::extension_relation(p, load_gamma(gamma_a, p.defect_dim()),
                                            problem.tol);
  const auto rb = krein::extension_relation(p, load_gamma(gamma_b, p.defect_dim()),
                                            problem.tol);
  emit(Json{
      {"order", krein::to_string(krein::compare_extensions(ra, rb, problem.tol))}});
  return kExitOk;
}

int run_verify(const std::string& dims_spec, long trials, std::uint64_t seed,
               bool serial) {
  const Tolerance tol = default_tolerance();
  const std::vector<Index> dims = parse_dims(dims_spec);
  const auto reports = krein::verify_all(seed, dims, trials, tol,
                                         krein::RunPolicy{!serial});
  long failures = 0;
  Json list = Json::array();
  for (const auto& r : reports) {
    failures += r.failures;
    list.push_back(krein::report_to_json(r));
  }
  emit(Json{{"command", "verify"},
            {"seed", seed},
            {"dims", dims},
            {"trials", trials},
            {"reports", list},
            {"failures_total", failures}});
  if (failures != 0) {
    std::cerr << "verification failed: " << failures << " failing trial(s)\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

int run_demo(Index size, long samples, std::uint64_t seed, bool serial) {
  const Tolerance tol = default_tolerance();
  const auto prob = krein::minimal_laplacian(size);
  const auto report =
      krein::demo_report(prob, samples, seed, tol, krein::RunPolicy{!serial});
  emit(krein::demo_report_to_json(report));
  const long failures =
      report.order_failures + report.domain_failures + report.interlacing_failures;
  if (failures != 0 || !report.krein_kernel_detected) {
    std::cerr << "demo checks failed\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Positive selfadjoint extensions of partial symmetric operators: "
      "parametrization, extremal extensions, order comparison, and "
      "theorem-level verification"};
  app.require_subcommand(1);

  std::string problem_path, gamma_arg, gamma_a, gamma_b, candidate_path;
  std::string route = "both";
  std::string dims_spec = "2..5";
  long trials = 200;
  long samples = 100;
  std::uint64_t seed = 1;
  Index size = 6;
  bool serial = false;

  auto* cmd_parametrize = app.add_subcommand(
      "parametrize", "Extract A, Gamma2, and the defect data of a problem");
  cmd_parametrize->add_option("problem", problem_path, "problem JSON file")
      ->required();

  auto* cmd_extend = app.add_subcommand(
      "extend", "Build T~(Gamma) and S~(Gamma) for a parameter");
  cmd_extend->add_option("problem", problem_path, "problem JSON file")
      ->required();
  cmd_extend
      ->add_option("--gamma", gamma_arg,
                   "gamma JSON file or krein|friedrichs|neutral")
      ->required();

  auto* cmd_membership = app.add_subcommand(
      "membership", "Test whether a candidate matrix extends the problem");
  cmd_membership->add_option("problem", problem_path, "problem JSON file")
      ->required();
  cmd_membership->add_option("--candidate", candidate_path, "matrix JSON file")
      ->required();
  cmd_membership->add_option("--route", route, "direct|interval|both")
      ->check(CLI::IsMember({"direct", "interval", "both"}));

  auto* cmd_compare = app.add_subcommand(
      "compare", "Order of two extensions S~(Gamma_a), S~(Gamma_b)");
  cmd_compare->add_option("problem", problem_path, "problem JSON file")
      ->required();
  cmd_compare->add_option("--gamma-a", gamma_a, "first parameter")->required();
  cmd_compare->add_option("--gamma-b", gamma_b, "second parameter")->required();

  auto* cmd_verify =
      app.add_subcommand("verify", "Run every randomized theorem check");
  cmd_verify->add_option("--dims", dims_spec, "ambient dimensions, e.g. 2..5");
  cmd_verify->add_option("--trials", trials, "trials per report")
      ->check(CLI::PositiveNumber);
  cmd_verify->add_option("--seed", seed, "sampler seed");
  cmd_verify->add_flag("--serial", serial, "disable the OpenMP trial loop");

  auto* cmd_demo = app.add_subcommand("demo", "Worked applications");
  cmd_demo->require_subcommand(1);
  auto* cmd_laplacian = cmd_demo->add_subcommand(
      "laplacian", "Second-difference minimal operator demo");
  cmd_laplacian->add_option("--size", size, "grid size (>= 4)");
  cmd_laplacian->add_option("--samples", samples, "number of sampled Gamma")
      ->check(CLI::PositiveNumber);
  cmd_laplacian->add_option("--seed", seed, "sampler seed");
  cmd_laplacian->add_flag("--serial", serial, "disable the OpenMP sample loop");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_parametrize->parsed()) return run_parametrize(problem_path);
    if (cmd_extend->parsed()) return run_extend(problem_path, gamma_arg);
    if (cmd_membership->parsed())
      return run_membership(problem_path, candidate_path, route);
    if (cmd_compare->parsed())
      return run_compare(problem_path, gamma_a, gamma_b);
    if (cmd_verify->parsed())
      return run_verify(dims_spec, trials, seed, serial);
    if (cmd_demo->parsed()) return run_demo(size, samples, seed, serial);
  } catch (const krein::ParseError& e) {
    emit(Json{{"error", Json{{"type", "malformed_file"}, {"message", e.what()}}}});
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformedFile;
  } catch (const krein::InvariantError& e) {
    emit(Json{{"error", Json{{"type", "invariant_violation"},
                             {"invariant", e.invariant()},
                             {"residual", e.residual()},
                             {"message", e.detail()}}}});
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const krein::InternalError& e) {
    emit(Json{{"error", Json{{"type", "internal_error"}, {"message", e.what()}}}});
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}
