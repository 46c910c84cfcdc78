#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abel/probe.hpp"

namespace abel {

// Entire outer function g for inverse lifting: exp or a polynomial.
struct LiftFunction {
  enum class Kind { Exp, Polynomial };
  Kind kind = Kind::Exp;
  ComplexPolynomial p;

  static LiftFunction exp() { return LiftFunction{Kind::Exp, {}}; }
  static LiftFunction polynomial(ComplexPolynomial q);
  static LiftFunction square();

  Complex value(Complex h) const;
  Complex derivative(Complex h) const;
  // g^{-1}(w); principal branch plus none other for exp
  std::vector<Complex> preimages(Complex w) const;
  // empty for exp
  std::vector<Complex> critical_values() const;
  std::string name() const;
};

enum class LiftStatus { Complete, CriticalPointHit, Diverged };

const char* to_string(LiftStatus s);

struct LiftResult {
  // normalised arc length, lift value and path point at every accepted step
  std::vector<double> t;
  std::vector<Complex> h0;
  std::vector<Complex> path;
  // lift value at each polyline vertex reached
  std::vector<Complex> at_vertices;
  double max_defect = 0.0;
  LiftStatus status = LiftStatus::Complete;
  // index of the sample where continuation stopped; -1 when complete
  int fail_index = -1;
  std::string message;
  int halvings = 0;

  bool complete() const { return status == LiftStatus::Complete; }
  Complex endpoint() const { return h0.back(); }
};

LiftResult lift_path(const LiftFunction& g, const std::vector<Complex>& path, Complex start, double tol);

struct LiftableOptions {
  int density = 256;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int max_resamples = 200;
};

struct LiftableTarget {
  // arc parameter grid and the sampled lift h0 and target h on it
  std::vector<double> t;
  std::vector<Complex> h0;
  std::vector<Complex> target;
  std::vector<int> node_index;
  std::vector<Complex> node_w;
  int n_nodes = 0;
  double defect = 0.0;
};

// Piecewise-linear surrogate through nodes w_k near h(t_k), lifted through g along each segment.
LiftableTarget liftable_target(const LiftFunction& g, const UnitCircleArc& arc, const ArcTarget& h, double eps, int n_nodes,
                               const LiftableOptions& opts = {});

}  // namespace abel
