#pragma once

#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tscalc {

namespace detail {

/// Shortest "%g"-style rendering that round-trips a double.
inline std::string format_real(double x) {
  char buf[32];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace detail

enum class errc {
  point_not_in_scale,
  point_not_in_domain,
  empty_domain,
  degenerate_range,
  invalid_segment,
  invalid_step,
  invalid_config,
  syntax_error,
  domain_error,
  no_convergence,
  alpha_out_of_range,
  exponent_out_of_range,
  quadrature_failure,
  sign_change,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::point_not_in_scale: return "PointNotInScale";
    case errc::point_not_in_domain: return "PointNotInDomain";
    case errc::empty_domain: return "EmptyDomain";
    case errc::degenerate_range: return "DegenerateRange";
    case errc::invalid_segment: return "InvalidSegment";
    case errc::invalid_step: return "InvalidStep";
    case errc::invalid_config: return "InvalidConfig";
    case errc::syntax_error: return "SyntaxError";
    case errc::domain_error: return "DomainError";
    case errc::no_convergence: return "NoConvergence";
    case errc::alpha_out_of_range: return "AlphaOutOfRange";
    case errc::exponent_out_of_range: return "ExponentOutOfRange";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::sign_change: return "SignChange";
  }
  return "Unknown";
}

/// Base of every exception thrown by the library. `code()` identifies the
/// failure class; `what()` is a single-line human message.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Parse failure with the character offset where it was detected.
class syntax_error : public error {
 public:
  syntax_error(std::size_t position, const std::string& message)
      : error(errc::syntax_error,
              std::to_string(position) + ": " + message),
        position_(position),
        message_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

/// Evaluation outside the mathematical domain of an expression node.
class domain_error : public error {
 public:
  domain_error(double t, const std::string& node, const std::string& message)
      : error(errc::domain_error,
              message + " in '" + node + "' at t = " + detail::format_real(t)),
        t_(t),
        node_(node) {}

  double t() const noexcept { return t_; }
  const std::string& node() const noexcept { return node_; }

 private:
  double t_;
  std::string node_;
};

}  // namespace tscalc
