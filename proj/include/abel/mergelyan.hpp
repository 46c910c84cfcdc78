#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "abel/compacta.hpp"
#include "abel/polynomial.hpp"

namespace abel {

struct FitOptions {
  // rounds of per-component reweighting; 0 gives the plain weighted least-squares fit
  int reweight_rounds = 8;
  // lower clamp on a component multiplier relative to the largest one
  double min_weight_ratio = 1e-6;
  bool report_monomial = true;
};

struct FitReport {
  int degree = 0;
  double sup_error = 0.0;
  double rms_error = 0.0;
  double basis_condition = 1.0;
  int escalations = 0;
  bool converged = true;
  double tol = 0.0;
  std::size_t samples = 0;
  std::vector<double> component_sup;
  // multipliers applied to the base weights (1/count per component) in the returned fit
  std::vector<double> component_weights;
  // (degree, best sup error) for every rung of the escalation ladder
  std::vector<std::pair<int, double>> ladder;
  // grid residual after converting to monomial coefficients; NaN when not computed
  double monomial_sup_error = std::numeric_limits<double>::quiet_NaN();
};

struct Fit {
  ArnoldiPolynomial poly;
  FitReport report;
};

Fit fit_polynomial(const CompoundCompactum& set, int degree, const FitOptions& opts = {});

// Degree ladder 8, 16, ... capped at max_degree. Returns the best fit; report.converged is false
// when the tolerance was not reached within the budget.
Fit fit_until(const CompoundCompactum& set, double tol, int max_degree = 512, const FitOptions& opts = {});

}  // namespace abel
