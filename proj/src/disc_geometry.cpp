#include "abel/disc_geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace abel {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::domain: return "domain-error";
    case Errc::target_below_range: return "target-below-range";
    case Errc::no_convergence: return "non-convergence";
    case Errc::duplicate_points: return "duplicate-points";
    case Errc::a_zero: return "a-zero";
    case Errc::degenerate_denominator: return "degenerate-denominator";
    case Errc::escapes_disc: return "escapes-disc";
    case Errc::underdetermined: return "underdetermined";
    case Errc::basis_breakdown: return "basis-breakdown";
    case Errc::tolerance_unreachable: return "tolerance-unreachable";
    case Errc::criterion_violated: return "criterion-violated";
    case Errc::interleaving_violated: return "interleaving-violated";
    case Errc::eta_not_found: return "eta-not-found";
    case Errc::condition_iii_violated: return "condition-iii-violated";
    case Errc::stage_failure: return "stage-failure";
    case Errc::certificate_failure: return "reciprocal-certificate-failure";
    case Errc::node_search_failure: return "node-search-failure";
    case Errc::lift_failure: return "lift-failure";
  }
  return "unknown";
}

namespace {

double normalize_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

DiscAutomorphism::DiscAutomorphism(Complex a, double theta) : a_(a), theta_(normalize_angle(theta)) {
  if (!is_finite(a) || !std::isfinite(theta)) throw Error(Errc::invalid_argument, "non-finite automorphism parameter");
  if (std::abs(a) >= 1.0) throw Error(Errc::invalid_argument, "automorphism needs |a| < 1");
  unit_ = std::polar(1.0, theta_);
}

DiscAutomorphism DiscAutomorphism::rotation(double angle) { return DiscAutomorphism(Complex(0.0, 0.0), angle + kPi); }

DiscAutomorphism DiscAutomorphism::translation(Complex w) { return DiscAutomorphism(-w, kPi); }

Complex DiscAutomorphism::operator()(Complex z) const {
  if (!is_finite(z) || std::abs(z) > 1.0 + 1e-12) throw Error(Errc::domain, "automorphism argument outside the closed disc");
  const Complex den = 1.0 - std::conj(a_) * z;
  if (std::abs(den) < 1e-14) throw Error(Errc::domain, "automorphism denominator vanishes");
  return unit_ * (a_ - z) / den;
}

// w = u (a - z)/(1 - conj(a) z)  <=>  z = u^{-1} (a u - w) / (1 - conj(a u) w)
DiscAutomorphism DiscAutomorphism::inverse() const { return DiscAutomorphism(a_ * unit_, -theta_); }

UnitCircleArc UnitCircleArc::make(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw Error(Errc::invalid_argument, "non-finite arc endpoint");
  if (alpha < 0.0 || !(alpha < beta) || beta > kTwoPi) throw Error(Errc::invalid_argument, "arc needs 0 <= alpha < beta <= 2pi");
  if (beta - alpha >= kTwoPi) throw Error(Errc::invalid_argument, "arc must be a proper subarc");
  return UnitCircleArc{alpha, beta};
}

bool UnitCircleArc::contains_angle(double t) const {
  const double s = normalize_angle(t);
  return s >= alpha && s <= beta;
}

OriginShiftDilation::OriginShiftDilation(Complex w_) : w(w_) {
  if (!is_finite(w) || std::abs(w) >= 1.0) throw Error(Errc::invalid_argument, "shift origin needs |w| < 1");
}

Complex apply_automorphism(const DiscAutomorphism& phi, Complex z) { return phi(z); }

double modulus_identity_residual(Complex a, Complex z) {
  const Complex w = DiscAutomorphism(a)(z);
  const double lhs = 1.0 - std::norm(w);
  const double rhs = (1.0 - std::norm(a)) * (1.0 - std::norm(z)) / std::norm(1.0 - std::conj(a) * z);
  return std::abs(lhs - rhs);
}

// d/dr of (1 - r^2)/(r^2|a|^2 - 2rc + 1) has the sign of c r^2 - (1 + |a|^2) r + c.
double radial_monotone_threshold(const DiscAutomorphism& phi, Complex zeta) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw Error(Errc::invalid_argument, "zeta must be unimodular");
  const double c = (std::conj(phi.a()) * zeta).real();
  const double q = 1.0 + std::norm(phi.a());
  auto numer = [&](double r) { return c * r * r - q * r + c; };
  if (numer(0.0) <= 0.0) return 0.0;
  // numer(0) > 0 > numer(1): single sign change
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (numer(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

double solve_level_radius(const DiscAutomorphism& phi, Complex zeta, double t, double r_low) {
  if (!(t < 1.0) || !(r_low >= 0.0) || !(r_low < 1.0)) throw Error(Errc::invalid_argument, "level radius needs t < 1 and r_low in [0,1)");
  auto level = [&](double r) { return std::abs(phi(r * zeta)) - t; };
  const double f_low = level(r_low);
  if (f_low > 1e-12) throw Error(Errc::target_below_range, "level below |phi(r_low zeta)|");
  if (f_low >= 0.0) return r_low;
  double lo = r_low, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (level(mid) < 0.0 ? lo : hi) = mid;
  }
  const double r = std::abs(level(lo)) <= std::abs(level(hi)) ? lo : hi;
  if (std::abs(level(r)) > 1e-12 || r >= 1.0) throw Error(Errc::no_convergence, "level radius bisection stalled");
  return r;
}

EuclideanCircle image_circle(Complex a, double R) {
  if (std::abs(a) >= 1.0 || !(R > 0.0) || !(R < 1.0)) throw Error(Errc::invalid_argument, "image circle needs |a| < 1, 0 < R < 1");
  const double a2 = std::norm(a);
  const double den = 1.0 - a2 * R * R;
  return EuclideanCircle{a * (1.0 - R * R) / den, (1.0 - a2) * R / den};
}

std::variant<EuclideanCircle, CollinearLine> circle_through_three(Complex p1, Complex p2, Complex p3) {
  const double d12 = std::abs(p1 - p2), d13 = std::abs(p1 - p3), d23 = std::abs(p2 - p3);
  if (std::min({d12, d13, d23}) <= 1e-12) throw Error(Errc::duplicate_points, "circle needs pairwise distinct points");
  const Complex b = p2 - p1, c = p3 - p1;
  const double cross = b.real() * c.imag() - b.imag() * c.real();
  const double dmax = std::max({d12, d13, d23});
  if (0.5 * std::abs(cross) < 1e-14 * dmax * dmax) {
    // endpoints of the collinear triple
    if (d12 >= d13 && d12 >= d23) return CollinearLine{p1, p2};
    if (d13 >= d23) return CollinearLine{p1, p3};
    return CollinearLine{p2, p3};
  }
  const double d = 2.0 * cross;
  const double nb = std::norm(b), nc = std::norm(c);
  const Complex u((c.imag() * nb - b.imag() * nc) / d, (b.real() * nc - c.real() * nb) / d);
  return EuclideanCircle{p1 + u, std::abs(u)};
}

std::optional<double> is_origin_shift_circle(const EuclideanCircle& c, Complex w, double tol) {
  if (std::abs(w) >= 1.0) throw Error(Errc::invalid_argument, "shift origin needs |w| < 1");
  const double r = c.radius;
  if (std::abs(c.center - (1.0 - r) * w) <= tol) return r;
  return std::nullopt;
}

Complex fixed_point_radius(Complex w, Complex a) {
  if (std::abs(a) <= 1e-14) throw Error(Errc::a_zero, "fixed-point radius needs a != 0");
  const Complex den = a - std::norm(a) * w;
  if (std::abs(den) <= 1e-14) throw Error(Errc::degenerate_denominator, "a - |a|^2 w vanishes");
  return (w - a) / den;
}

EuclideanCircle fit_circle(const Complex* pts, std::size_t n) {
  if (n < 3) throw Error(Errc::invalid_argument, "circle fit needs three points");
  Complex mean(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) mean += pts[i];
  mean /= static_cast<double>(n);
  // x^2 + y^2 + D x + E y + F = 0 in centered coordinates
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = pts[i] - mean;
    A(i, 0) = p.real();
    A(i, 1) = p.imag();
    A(i, 2) = 1.0;
    rhs(i) = -std::norm(p);
  }
  const Eigen::Vector3d s = A.colPivHouseholderQr().solve(rhs);
  const Complex c(-0.5 * s(0), -0.5 * s(1));
  return EuclideanCircle{mean + c, std::sqrt(std::max(0.0, std::norm(c) - s(2)))};
}

}  // namespace abel
