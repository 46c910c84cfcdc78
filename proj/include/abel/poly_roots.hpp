#pragma once

#include <vector>

#include "abel/polynomial.hpp"

namespace abel {

// Roots of p from the eigenvalues of its companion matrix, each refined by a few Newton steps.
// Leading zero coefficients are trimmed; the zero and constant polynomials have no roots.
std::vector<Complex> polynomial_roots(const ComplexPolynomial& p);

// Values of p at the roots of p'.
std::vector<Complex> critical_values(const ComplexPolynomial& p);

}  // namespace abel
