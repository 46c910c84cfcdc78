#pragma once

#include <optional>
#include <variant>

#include "abel/types.hpp"

namespace abel {

// z -> e^{i theta} (a - z) / (1 - conj(a) z), |a| < 1.
class DiscAutomorphism {
 public:
  DiscAutomorphism() = default;
  explicit DiscAutomorphism(Complex a, double theta = 0.0);

  // z -> e^{i angle} z
  static DiscAutomorphism rotation(double angle);
  // z -> (z + w) / (1 + conj(w) z)
  static DiscAutomorphism translation(Complex w);

  Complex a() const { return a_; }
  double theta() const { return theta_; }
  bool is_rotation() const { return a_ == Complex(0.0, 0.0); }

  Complex operator()(Complex z) const;
  DiscAutomorphism inverse() const;

 private:
  Complex a_{0.0, 0.0};
  double theta_ = 0.0;
  Complex unit_{1.0, 0.0};
};

struct UnitCircleArc {
  double alpha = 0.0;
  double beta = 0.0;

  static UnitCircleArc make(double alpha, double beta);
  double length() const { return beta - alpha; }
  bool contains_angle(double t) const;
};

struct EuclideanCircle {
  Complex center;
  double radius = 0.0;
};

struct CollinearLine {
  Complex p;
  Complex q;
};

// zeta -> w + r (zeta - w)
struct OriginShiftDilation {
  Complex w;

  explicit OriginShiftDilation(Complex w_);
  Complex operator()(double r, Complex zeta) const { return w + r * (zeta - w); }
};

Complex apply_automorphism(const DiscAutomorphism& phi, Complex z);

double modulus_identity_residual(Complex a, Complex z);

double radial_monotone_threshold(const DiscAutomorphism& phi, Complex zeta);

double solve_level_radius(const DiscAutomorphism& phi, Complex zeta, double t, double r_low);

EuclideanCircle image_circle(Complex a, double R);

std::variant<EuclideanCircle, CollinearLine> circle_through_three(Complex p1, Complex p2, Complex p3);

std::optional<double> is_origin_shift_circle(const EuclideanCircle& c, Complex w, double tol);

Complex fixed_point_radius(Complex w, Complex a);

// Algebraic least-squares circle fit; used as an independent oracle.
EuclideanCircle fit_circle(const Complex* pts, std::size_t n);

}  // namespace abel
