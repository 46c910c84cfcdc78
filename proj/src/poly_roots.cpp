#include "abel/poly_roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace abel {

std::vector<Complex> polynomial_roots(const ComplexPolynomial& p) {
  std::vector<Complex> c = p.coeffs();
  while (c.size() > 1 && c.back() == Complex(0.0, 0.0)) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw Error(Errc::no_convergence, "companion eigenvalue iteration failed");
  const ComplexPolynomial trimmed(c);
  const ComplexPolynomial dp = trimmed.derivative();
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Complex z = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      const Complex f = trimmed(z), g = dp(z);
      if (std::abs(g) == 0.0) break;
      const Complex step = f / g;
      // keep the eigenvalue when Newton would leave its neighbourhood (clustered roots)
      if (std::abs(step) > 1e-3 * (1.0 + std::abs(z))) break;
      z -= step;
    }
    roots[static_cast<std::size_t>(i)] = z;
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

std::vector<Complex> critical_values(const ComplexPolynomial& p) {
  std::vector<Complex> v;
  for (const Complex& r : polynomial_roots(p.derivative())) v.push_back(p(r));
  return v;
}

}  // namespace abel
