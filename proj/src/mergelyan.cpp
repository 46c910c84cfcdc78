#include "abel/mergelyan.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace abel {

namespace {

struct Samples {
  Eigen::VectorXcd z;
  Eigen::VectorXcd b;
  Eigen::VectorXd sw;  // square roots of the base weights
  std::vector<Eigen::Index> start;
  double total_weight = 0.0;

  std::size_t n_components() const { return start.size() - 1; }
  Eigen::Index rows(std::size_t c) const { return start[c + 1] - start[c]; }
};

Samples gather(const CompoundCompactum& set) {
  Samples s;
  const auto m = static_cast<Eigen::Index>(set.total_samples());
  s.z.resize(m);
  s.b.resize(m);
  s.sw.resize(m);
  Eigen::Index i = 0;
  s.start.push_back(0);
  for (const auto& c : set.components) {
    if (!c.target) throw Error(Errc::invalid_argument, "component '" + c.label + "' has no target");
    const double w = c.weight / static_cast<double>(c.size());
    for (std::size_t k = 0; k < c.size(); ++k, ++i) {
      s.z(i) = c.points[k];
      s.b(i) = (*c.target)[k];
      s.sw(i) = std::sqrt(w);
      if (!is_finite(s.b(i))) throw Error(Errc::invalid_argument, "non-finite target value");
    }
    s.total_weight += c.weight;
    s.start.push_back(i);
  }
  return s;
}

// Weighted Arnoldi basis, stored row-scaled by sqrt(weight) so columns are Euclidean-orthonormal.
class Basis {
 public:
  explicit Basis(const Samples& s) : s_(s) {
    const Eigen::Index m = s.z.size();
    norm0_ = s.sw.norm();
    q_.resize(m, 1);
    q_.col(0) = s.sw.cast<Complex>() / norm0_;
    h_.resize(1, 0);
  }

  int degree() const { return static_cast<int>(q_.cols()) - 1; }
  double norm0() const { return norm0_; }
  const Eigen::MatrixXcd& q() const { return q_; }
  const Eigen::MatrixXcd& h() const { return h_; }

  void extend(int d) {
    const Eigen::Index m = q_.rows();
    if (d + 1 > m) throw Error(Errc::underdetermined, "degree exceeds sample count");
    const int d0 = degree();
    if (d <= d0) return;
    q_.conservativeResize(m, d + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d + 1, d);
    h.topLeftCorner(h_.rows(), h_.cols()) = h_;
    h_ = std::move(h);
    Eigen::VectorXcd v(m);
    for (int k = d0; k < d; ++k) {
      v = s_.z.cwiseProduct(q_.col(k));
      const double vnorm = v.norm();
      // modified Gram-Schmidt, then one reorthogonalization pass
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j <= k; ++j) {
          const Complex c = q_.col(j).dot(v);
          h_(j, k) += c;
          v.noalias() -= c * q_.col(j);
        }
      }
      const double nrm = v.norm();
      if (!(nrm > 1e-13 * vnorm) || !(nrm > 0.0)) throw Error(Errc::basis_breakdown, "orthogonalization norm underflow at degree " + std::to_string(k + 1));
      h_(k + 1, k) = nrm;
      q_.col(k + 1) = v / nrm;
    }
  }

 private:
  const Samples& s_;
  double norm0_ = 1.0;
  Eigen::MatrixXcd q_;
  Eigen::MatrixXcd h_;
};

struct RoundResult {
  Eigen::VectorXcd x;
  double sup = 0.0;
  std::vector<double> comp_sup;
  std::vector<double> mult;
};

class Fitter {
 public:
  Fitter(const CompoundCompactum& set, const FitOptions& opts) : opts_(opts), s_(gather(set)), basis_(s_) {
    bs_ = s_.b.cwiseProduct(s_.sw.cast<Complex>());
  }

  std::size_t samples() const { return static_cast<std::size_t>(s_.z.size()); }

  RoundResult solve(int d, double tol) {
    basis_.extend(d);
    const std::size_t nc = s_.n_components();
    const auto& q = basis_.q();
    std::vector<Eigen::MatrixXcd> gram(nc);
    std::vector<Eigen::VectorXcd> beta(nc);
    for (std::size_t c = 0; c < nc; ++c) {
      auto qc = q.block(s_.start[c], 0, s_.rows(c), d + 1);
      gram[c].resize(d + 1, d + 1);
      gram[c].setZero();
      gram[c].selfadjointView<Eigen::Lower>().rankUpdate(qc.adjoint());
      gram[c] = gram[c].selfadjointView<Eigen::Lower>();
      beta[c] = qc.adjoint() * bs_.segment(s_.start[c], s_.rows(c));
    }

    std::vector<double> mult(nc, 1.0);
    RoundResult best;
    best.sup = std::numeric_limits<double>::infinity();
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(d + 1);
    for (const auto& bc : beta) x += bc;
    for (int round = 0;; ++round) {
      RoundResult cur;
      cur.x = x;
      cur.mult = mult;
      residuals(cur, d);
      if (cur.sup < best.sup) best = cur;
      if (best.sup <= tol || round >= opts_.reweight_rounds || cur.sup == 0.0) break;
      double mmax = 0.0;
      for (std::size_t c = 0; c < nc; ++c) {
        mult[c] *= cur.comp_sup[c] / cur.sup;
        mmax = std::max(mmax, mult[c]);
      }
      for (double& m : mult) m = std::max(m, opts_.min_weight_ratio * mmax);
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d + 1, d + 1);
      Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d + 1);
      for (std::size_t c = 0; c < nc; ++c) {
        g += mult[c] * gram[c];
        rhs += mult[c] * beta[c];
      }
      Eigen::LLT<Eigen::MatrixXcd> llt(g);
      if (llt.info() == Eigen::Success) {
        x = llt.solve(rhs);
      } else {
        x = g.ldlt().solve(rhs);
      }
    }
    return best;
  }

  ArnoldiPolynomial polynomial(const Eigen::VectorXcd& x, int d) const {
    return ArnoldiPolynomial(basis_.norm0(), basis_.h().topLeftCorner(d + 1, d), x);
  }

  // Grid sup error of the polynomial evaluated through its recurrence. At high degree this can
  // exceed the basis-matrix residual, which only reflects the orthogonalized columns.
  double evaluated_sup(const ArnoldiPolynomial& p) const {
    Eigen::VectorXcd vals(s_.z.size());
    p.evaluate(std::span<const Complex>(s_.z.data(), static_cast<std::size_t>(s_.z.size())),
               std::span<Complex>(vals.data(), static_cast<std::size_t>(vals.size())));
    double sup = 0.0;
    for (Eigen::Index i = 0; i < s_.z.size(); ++i) {
      const double r = std::abs(vals(i) - s_.b(i));
      sup = std::isfinite(r) ? std::max(sup, r) : std::numeric_limits<double>::infinity();
    }
    return sup;
  }

  // Exact grid residuals of the returned polynomial, evaluated through its recurrence.
  void finish(const Fit& fit, FitReport& rep) const {
    Eigen::VectorXcd vals(s_.z.size());
    fit.poly.evaluate(std::span<const Complex>(s_.z.data(), static_cast<std::size_t>(s_.z.size())),
                      std::span<Complex>(vals.data(), static_cast<std::size_t>(vals.size())));
    const std::size_t nc = s_.n_components();
    rep.component_sup.assign(nc, 0.0);
    double sup = 0.0, wsum = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      for (Eigen::Index i = s_.start[c]; i < s_.start[c + 1]; ++i) {
        const double r = std::abs(vals(i) - s_.b(i));
        rep.component_sup[c] = std::max(rep.component_sup[c], r);
        wsum += s_.sw(i) * s_.sw(i) * r * r;
      }
      sup = std::max(sup, rep.component_sup[c]);
    }
    rep.sup_error = sup;
    rep.rms_error = std::sqrt(wsum / s_.total_weight);
    rep.samples = samples();
    const int d = fit.poly.degree();
    double growth = 0.0;
    const auto& q = basis_.q();
    for (Eigen::Index i = 0; i < s_.z.size(); ++i) {
      const double row = q.row(i).head(d + 1).cwiseAbs().maxCoeff() / s_.sw(i);
      growth = std::max(growth, row);
    }
    rep.basis_condition = growth * std::sqrt(s_.total_weight);
    if (opts_.report_monomial) {
      try {
        const ComplexPolynomial mono = fit.poly.to_monomial();
        double msup = 0.0;
        for (Eigen::Index i = 0; i < s_.z.size(); ++i) msup = std::max(msup, std::abs(mono(s_.z(i)) - s_.b(i)));
        rep.monomial_sup_error = std::isfinite(msup) ? msup : std::numeric_limits<double>::infinity();
      } catch (const Error&) {
        rep.monomial_sup_error = std::numeric_limits<double>::infinity();
      }
    }
  }

 private:
  void residuals(RoundResult& r, int d) const {
    const auto& q = basis_.q();
    const Eigen::VectorXcd scaled = q.leftCols(d + 1) * r.x;
    const std::size_t nc = s_.n_components();
    r.comp_sup.assign(nc, 0.0);
    r.sup = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      for (Eigen::Index i = s_.start[c]; i < s_.start[c + 1]; ++i) {
        r.comp_sup[c] = std::max(r.comp_sup[c], std::abs(scaled(i) / s_.sw(i) - s_.b(i)));
      }
      r.sup = std::max(r.sup, r.comp_sup[c]);
    }
  }

  FitOptions opts_;
  Samples s_;
  Basis basis_;
  Eigen::VectorXcd bs_;
};

}  // namespace

Fit fit_polynomial(const CompoundCompactum& set, int degree, const FitOptions& opts) {
  if (degree < 0) throw Error(Errc::invalid_argument, "degree must be non-negative");
  if (set.total_samples() < static_cast<std::size_t>(degree) + 1) throw Error(Errc::underdetermined, "fewer samples than coefficients");
  Fitter fitter(set, opts);
  RoundResult r = fitter.solve(degree, 0.0);
  Fit fit{fitter.polynomial(r.x, degree), FitReport{}};
  fit.report.degree = degree;
  fit.report.component_weights = r.mult;
  fitter.finish(fit, fit.report);
  fit.report.tol = 0.0;
  fit.report.ladder.emplace_back(degree, fit.report.sup_error);
  return fit;
}

Fit fit_until(const CompoundCompactum& set, double tol, int max_degree, const FitOptions& opts) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  if (max_degree < 0) throw Error(Errc::invalid_argument, "max degree must be non-negative");
  Fitter fitter(set, opts);
  const int cap = std::min<int>(max_degree, static_cast<int>(fitter.samples()) - 1);
  Fit best{ArnoldiPolynomial::zero(), FitReport{}};
  best.report.sup_error = std::numeric_limits<double>::infinity();
  FitReport ladder_rep;
  int d = std::min(8, cap);
  int escalations = 0;
  for (;;) {
    RoundResult r;
    try {
      r = fitter.solve(d, tol);
    } catch (const Error& e) {
      if (e.code() != Errc::basis_breakdown || escalations == 0) throw;
      break;
    }
    ArnoldiPolynomial cand = fitter.polynomial(r.x, d);
    const double sup = fitter.evaluated_sup(cand);
    ladder_rep.ladder.emplace_back(d, sup);
    if (sup < best.report.sup_error) {
      best.poly = std::move(cand);
      best.report.sup_error = sup;
      best.report.degree = d;
      best.report.component_weights = r.mult;
    }
    if (sup <= tol || d >= cap) break;
    d = std::min(2 * d, cap);
    ++escalations;
  }
  FitReport rep = best.report;
  fitter.finish(best, rep);
  rep.ladder = std::move(ladder_rep.ladder);
  rep.escalations = escalations;
  rep.tol = tol;
  rep.converged = rep.sup_error <= tol;
  best.report = std::move(rep);
  return best;
}

}  // namespace abel
