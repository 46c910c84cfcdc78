#include "abel/polynomial.hpp"

#include <algorithm>

namespace abel {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex(0.0, 0.0));
  for (const Complex& c : coeffs_) {
    if (!is_finite(c)) throw Error(Errc::invalid_argument, "non-finite polynomial coefficient");
  }
}

bool ComplexPolynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex(0.0, 0.0); });
}

bool ComplexPolynomial::is_constant() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](Complex c) { return c == Complex(0.0, 0.0); });
}

Complex ComplexPolynomial::operator()(Complex z) const {
  Complex acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

void ComplexPolynomial::evaluate(std::span<const Complex> z, std::span<Complex> out) const {
  if (z.size() != out.size()) throw Error(Errc::invalid_argument, "batch evaluation size mismatch");
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = (*this)(z[i]);
}

ComplexPolynomial ComplexPolynomial::derivative() const {
  if (coeffs_.size() == 1) return ComplexPolynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial ComplexPolynomial::operator+(const ComplexPolynomial& o) const {
  std::vector<Complex> c(std::max(coeffs_.size(), o.coeffs_.size()), Complex(0.0, 0.0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ComplexPolynomial::operator-() const {
  std::vector<Complex> c(coeffs_);
  for (Complex& x : c) x = -x;
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ComplexPolynomial::operator-(const ComplexPolynomial& o) const { return *this + (-o); }

ComplexPolynomial ComplexPolynomial::operator*(Complex s) const {
  std::vector<Complex> c(coeffs_);
  for (Complex& x : c) x *= s;
  return ComplexPolynomial(std::move(c));
}

Complex evaluate(const ComplexPolynomial& p, Complex z) { return p(z); }

ComplexPolynomial accumulate(std::span<const ComplexPolynomial> series) {
  ComplexPolynomial sum;
  for (const auto& p : series) sum = sum + p;
  return sum;
}

ArnoldiPolynomial::ArnoldiPolynomial(double norm0, Eigen::MatrixXcd hessenberg, Eigen::VectorXcd coeffs)
    : norm0_(norm0), h_(std::move(hessenberg)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw Error(Errc::invalid_argument, "empty coefficient vector");
  const Eigen::Index d = coeffs_.size() - 1;
  if (h_.rows() < d + 1 || h_.cols() < d) throw Error(Errc::invalid_argument, "Hessenberg matrix too small for the degree");
  if (h_.rows() != d + 1 || h_.cols() != d) h_ = h_.topLeftCorner(d + 1, d).eval();
  if (!(norm0_ > 0.0)) throw Error(Errc::invalid_argument, "basis normalization must be positive");
}

ArnoldiPolynomial ArnoldiPolynomial::zero() {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(1);
  return ArnoldiPolynomial(1.0, Eigen::MatrixXcd(1, 0), c);
}

Complex ArnoldiPolynomial::operator()(Complex z) const {
  const Eigen::Index d = coeffs_.size() - 1;
  std::vector<Complex> q(static_cast<std::size_t>(d + 1));
  q[0] = Complex(1.0 / norm0_, 0.0);
  Complex acc = coeffs_(0) * q[0];
  for (Eigen::Index k = 0; k < d; ++k) {
    Complex v = z * q[static_cast<std::size_t>(k)];
    for (Eigen::Index j = 0; j <= k; ++j) v -= h_(j, k) * q[static_cast<std::size_t>(j)];
    v /= h_(k + 1, k);
    q[static_cast<std::size_t>(k + 1)] = v;
    acc += coeffs_(k + 1) * v;
  }
  return acc;
}

void ArnoldiPolynomial::evaluate(std::span<const Complex> z, std::span<Complex> out) const {
  if (z.size() != out.size()) throw Error(Errc::invalid_argument, "batch evaluation size mismatch");
  const Eigen::Index d = coeffs_.size() - 1;
  // blocks of points run the recurrence column by column, which keeps the work in cache
  constexpr std::size_t kBlock = 64;
  Eigen::MatrixXcd v(static_cast<Eigen::Index>(kBlock), d + 1);
  Eigen::VectorXcd zb(static_cast<Eigen::Index>(kBlock)), w(static_cast<Eigen::Index>(kBlock));
  for (std::size_t s = 0; s < z.size(); s += kBlock) {
    const auto n = static_cast<Eigen::Index>(std::min(kBlock, z.size() - s));
    for (Eigen::Index i = 0; i < n; ++i) zb(i) = z[s + static_cast<std::size_t>(i)];
    auto vb = v.topRows(n);
    vb.col(0).setConstant(Complex(1.0 / norm0_, 0.0));
    for (Eigen::Index k = 0; k < d; ++k) {
      auto wk = w.head(n);
      wk = zb.head(n).cwiseProduct(vb.col(k));
      wk.noalias() -= vb.leftCols(k + 1) * h_.col(k).head(k + 1);
      vb.col(k + 1) = wk / h_(k + 1, k);
    }
    const Eigen::VectorXcd vals = vb * coeffs_;
    for (Eigen::Index i = 0; i < n; ++i) out[s + static_cast<std::size_t>(i)] = vals(i);
  }
}

ComplexPolynomial ArnoldiPolynomial::to_monomial() const {
  const Eigen::Index d = coeffs_.size() - 1;
  // column k holds the monomial coefficients of q_k
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  m(0, 0) = 1.0 / norm0_;
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d + 1);
    v.segment(1, k + 1) = m.col(k).head(k + 1);
    for (Eigen::Index j = 0; j <= k; ++j) v.head(j + 1) -= h_(j, k) * m.col(j).head(j + 1);
    m.col(k + 1) = v / h_(k + 1, k);
  }
  const Eigen::VectorXcd c = m * coeffs_;
  return ComplexPolynomial(std::vector<Complex>(c.data(), c.data() + c.size()));
}

}  // namespace abel
