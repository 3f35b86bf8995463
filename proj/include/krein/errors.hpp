#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace krein {

namespace detail {
inline std::string format_residual(double residual) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", residual);
  return std::string(buf);
}
}  // namespace detail

/// An input broke a documented invariant (symmetry, contraction bound,
/// positivity, range consistency, dimension agreement). Carries the name of
/// the violated invariant and the offending residual so callers can report
/// machine-readable diagnostics.
class InvariantError : public std::runtime_error {
 public:
  InvariantError(std::string invariant, double residual, std::string detail)
      : std::runtime_error("invariant '" + invariant +
                           "' violated (residual " +
                           detail::format_residual(residual) +
                           "): " + detail),
        invariant_(std::move(invariant)),
        residual_(residual),
        detail_(std::move(detail)) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double residual() const noexcept { return residual_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string invariant_;
  double residual_;
  std::string detail_;
};

/// A consistency check that holds by theorem failed. Indicates a library bug
/// or corrupted state, never bad user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace krein
