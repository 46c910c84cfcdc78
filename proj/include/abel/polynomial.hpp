#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "abel/types.hpp"

namespace abel {

// Coefficients c_0..c_d in the monomial basis; trailing zeros are allowed.
class ComplexPolynomial {
 public:
  ComplexPolynomial() : coeffs_{Complex(0.0, 0.0)} {}
  explicit ComplexPolynomial(std::vector<Complex> coeffs);

  static ComplexPolynomial constant(Complex c) { return ComplexPolynomial({c}); }
  static ComplexPolynomial identity() { return ComplexPolynomial({Complex(0.0, 0.0), Complex(1.0, 0.0)}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_constant() const;

  Complex operator()(Complex z) const;
  void evaluate(std::span<const Complex> z, std::span<Complex> out) const;
  ComplexPolynomial derivative() const;

  ComplexPolynomial operator+(const ComplexPolynomial& o) const;
  ComplexPolynomial operator-(const ComplexPolynomial& o) const;
  ComplexPolynomial operator-() const;
  ComplexPolynomial operator*(Complex s) const;

 private:
  std::vector<Complex> coeffs_;
};

Complex evaluate(const ComplexPolynomial& p, Complex z);
ComplexPolynomial accumulate(std::span<const ComplexPolynomial> series);

// Polynomial held as coefficients against a basis q_0..q_d that is orthonormal on a sample grid.
// The basis obeys the Arnoldi recurrence
//   q_0 = 1 / norm0,   H(k+1,k) q_{k+1}(z) = z q_k(z) - sum_{j<=k} H(j,k) q_j(z).
// High-degree fits stay accurate in this form where monomial coefficients do not.
class ArnoldiPolynomial {
 public:
  ArnoldiPolynomial() = default;
  ArnoldiPolynomial(double norm0, Eigen::MatrixXcd hessenberg, Eigen::VectorXcd coeffs);

  static ArnoldiPolynomial zero();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double norm0() const { return norm0_; }
  const Eigen::MatrixXcd& hessenberg() const { return h_; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }

  Complex operator()(Complex z) const;
  void evaluate(std::span<const Complex> z, std::span<Complex> out) const;

  // Exact in exact arithmetic; loses accuracy quickly with degree in floating point.
  ComplexPolynomial to_monomial() const;

 private:
  double norm0_ = 1.0;
  Eigen::MatrixXcd h_;  // (d+1) x d
  Eigen::VectorXcd coeffs_;
};

}  // namespace abel
