#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abel/builder.hpp"

namespace abel {

struct ReciprocalCertificate {
  double min_modulus = 0.0;
  std::size_t grid_size = 0;
};

// Immutable composition tree. Leaves are polynomials or built series; unary nodes are
// exp, reciprocal, a polynomial applied to the output, and a disc automorphism applied to the input.
class FunctionExpr {
 public:
  enum class Kind { Polynomial, Series, Exp, Reciprocal, PolynomialOut, PreCompose };

  static FunctionExpr polynomial(ComplexPolynomial p);
  static FunctionExpr series(std::shared_ptr<const UniversalSeries> s, int upto = -1);

  Kind kind() const;
  std::string describe() const;
  std::optional<ReciprocalCertificate> certificate() const;

  Complex operator()(Complex z) const;
  std::vector<Complex> evaluate(const std::vector<Complex>& z) const;

  struct Node;

 private:
  explicit FunctionExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend struct LeftOp;
  friend FunctionExpr compose_left(const struct LeftOp& g, const FunctionExpr& f, const std::vector<Complex>& probe_grid);
  friend FunctionExpr compose_right(const FunctionExpr& f, const DiscAutomorphism& phi);
};

struct LeftOp {
  enum class Kind { Exp, Reciprocal, Polynomial };
  Kind kind = Kind::Exp;
  ComplexPolynomial p;

  static LeftOp exp() { return LeftOp{Kind::Exp, {}}; }
  static LeftOp reciprocal() { return LeftOp{Kind::Reciprocal, {}}; }
  static LeftOp polynomial(ComplexPolynomial q) { return LeftOp{Kind::Polynomial, std::move(q)}; }
};

// Reciprocal needs the probe grid on which f will be evaluated; the minimum of |f| there must exceed 1e-6.
FunctionExpr compose_left(const LeftOp& g, const FunctionExpr& f, const std::vector<Complex>& probe_grid = {});
FunctionExpr compose_right(const FunctionExpr& f, const DiscAutomorphism& phi);

// Target on an arc, as a function of the unit-circle point zeta.
using ArcTarget = std::function<Complex(Complex)>;

ArcTarget polynomial_target(const ComplexPolynomial& p);

double dilate_distance(const FunctionExpr& f, const UnitCircleArc& arc, const ArcTarget& target, double r, int density);

struct DilateEntry {
  int target_id = 0;
  int arc_id = 0;
  std::vector<int> n;
  std::vector<double> r;
  std::vector<double> errors;
  int best_n = 0;
  double best_error = 0.0;
};

struct DilateReport {
  int density = 0;
  std::string note;
  std::vector<DilateEntry> entries;
};

DilateReport universality_scan(const FunctionExpr& f, const std::vector<ArcTarget>& targets,
                               const std::vector<UnitCircleArc>& arcs, const RadiiSchedule& rho, int N, int density = 256);

// Every point a scan with these arguments evaluates f at; used for reciprocal certificates.
std::vector<Complex> scan_grid(const std::vector<UnitCircleArc>& arcs, const RadiiSchedule& rho, int N, int density = 256);

double radial_value_coverage(const FunctionExpr& f, Complex zeta, const RadiiSchedule& rho, int N,
                             const std::vector<Complex>& targets, double eps);

}  // namespace abel
