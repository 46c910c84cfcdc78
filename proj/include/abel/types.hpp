#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace abel {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Errc {
  invalid_argument,
  domain,
  target_below_range,
  no_convergence,
  duplicate_points,
  a_zero,
  degenerate_denominator,
  escapes_disc,
  underdetermined,
  basis_breakdown,
  tolerance_unreachable,
  criterion_violated,
  interleaving_violated,
  eta_not_found,
  condition_iii_violated,
  stage_failure,
  certificate_failure,
  node_search_failure,
  lift_failure,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace abel
