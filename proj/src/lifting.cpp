#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "abel/lifting.hpp"
#include "abel/poly_roots.hpp"

namespace abel {

namespace {

constexpr double kCriticalDerivative = 1e-8;
constexpr double kCriticalValueGap = 1e-8;
constexpr double kDivergence = 1e6;

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

struct Attempt {
  std::optional<Complex> x;
  double min_derivative = std::numeric_limits<double>::infinity();
  bool diverged = false;
};

// damped Newton on g(x) = target from the predictor
Attempt correct(const LiftFunction& g, Complex pred, Complex target, double tol) {
  Attempt a;
  Complex x = pred;
  for (int it = 0; it < 40; ++it) {
    const Complex r = g.value(x) - target;
    const double rn = std::abs(r);
    if (rn <= tol) {
      a.x = x;
      return a;
    }
    const Complex d = g.derivative(x);
    a.min_derivative = std::min(a.min_derivative, std::abs(d));
    if (std::abs(d) < 1e-300) return a;
    const Complex dx = r / d;
    double lam = 1.0;
    Complex xn = x - dx;
    while (lam > 1.0 / 1024.0 && !(std::abs(g.value(xn) - target) < rn)) {
      lam *= 0.5;
      xn = x - lam * dx;
    }
    x = xn;
    if (!is_finite(x) || std::abs(x) > kDivergence) {
      a.diverged = true;
      return a;
    }
  }
  return a;
}

}  // namespace

LiftFunction LiftFunction::polynomial(ComplexPolynomial q) {
  if (q.is_constant()) throw Error(Errc::invalid_argument, "outer function must be non-constant");
  return LiftFunction{Kind::Polynomial, std::move(q)};
}

LiftFunction LiftFunction::square() {
  return polynomial(ComplexPolynomial({Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0)}));
}

Complex LiftFunction::value(Complex h) const { return kind == Kind::Exp ? std::exp(h) : p(h); }

Complex LiftFunction::derivative(Complex h) const {
  if (kind == Kind::Exp) return std::exp(h);
  return p.derivative()(h);
}

std::vector<Complex> LiftFunction::preimages(Complex w) const {
  if (kind == Kind::Exp) {
    if (w == Complex(0.0, 0.0)) return {};
    return {std::log(w)};
  }
  return polynomial_roots(p - ComplexPolynomial::constant(w));
}

std::vector<Complex> LiftFunction::critical_values() const {
  if (kind == Kind::Exp) return {};
  return abel::critical_values(p);
}

std::string LiftFunction::name() const { return kind == Kind::Exp ? "exp" : "poly[deg " + std::to_string(p.degree()) + "]"; }

const char* to_string(LiftStatus s) {
  switch (s) {
    case LiftStatus::Complete: return "Complete";
    case LiftStatus::CriticalPointHit: return "CriticalPointHit";
    case LiftStatus::Diverged: return "Diverged";
  }
  return "?";
}

LiftResult lift_path(const LiftFunction& g, const std::vector<Complex>& path, Complex start, double tol) {
  if (path.empty()) throw Error(Errc::invalid_argument, "empty path");
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  if (!(std::abs(g.value(start) - path.front()) <= tol)) throw Error(Errc::invalid_argument, "start does not lie over the path origin");

  std::vector<double> seg(path.size() - 1);
  double L = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) L += seg[k] = std::abs(path[k + 1] - path[k]);
  const std::vector<Complex> cvals = g.critical_values();

  LiftResult res;
  auto record = [&](double s, Complex h, Complex p) {
    res.t.push_back(L > 0.0 ? s / L : 0.0);
    res.h0.push_back(h);
    res.path.push_back(p);
    res.max_defect = std::max(res.max_defect, std::abs(g.value(h) - p));
  };
  Complex h = start;
  record(0.0, h, path.front());
  res.at_vertices.push_back(h);
  if (L == 0.0) {
    for (std::size_t k = 1; k < path.size(); ++k) res.at_vertices.push_back(h);
    return res;
  }

  const double min_step = 1e-6 * L;
  double s0 = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double len = seg[k];
    if (len == 0.0) {
      res.at_vertices.push_back(h);
      continue;
    }
    const Complex a = path[k];
    const Complex dir = (path[k + 1] - a) / len;
    auto at = [&](double u) { return u >= len ? path[k + 1] : a + u * dir; };
    const double cap = len / 64.0;
    double step = cap;
    double u = 0.0;
    double min_derivative = std::numeric_limits<double>::infinity();
    while (u < len) {
      step = std::min(step, len - u);
      const Complex here = at(u);
      const Complex target = at(u + step);
      const Complex d = g.derivative(h);
      Attempt att;
      att.min_derivative = std::abs(d);
      bool ok = false;
      if (std::abs(d) >= kCriticalDerivative) {
        const Complex pred = h + (target - g.value(h)) / d;
        att = correct(g, pred, target, tol);
        att.min_derivative = std::min(att.min_derivative, std::abs(d));
        if (att.diverged) {
          res.status = LiftStatus::Diverged;
          res.fail_index = static_cast<int>(res.h0.size());
          res.message = "lift modulus exceeded 1e6";
          return res;
        }
        if (att.x) {
          const Complex x = *att.x;
          // reject a jump to another branch and keep interpolation between accepted nodes faithful
          const bool same_branch = std::abs(x - pred) <= 0.5 * std::abs(pred - h) + 1e3 * tol;
          const bool small_step = step <= 2.0 * min_step;
          const bool midpoint = small_step || std::abs(g.value(0.5 * (h + x)) - at(u + 0.5 * step)) <= tol;
          ok = same_branch && midpoint;
        }
      }
      min_derivative = std::min(min_derivative, att.min_derivative);
      if (ok) {
        h = *att.x;
        u = step >= len - u ? len : u + step;
        record(s0 + u, h, at(u));
        step = std::min(cap, 1.5 * step);
        min_derivative = std::numeric_limits<double>::infinity();
        continue;
      }
      if (step > min_step) {
        step = std::max(0.5 * step, min_step);
        ++res.halvings;
        continue;
      }
      double cv_gap = std::numeric_limits<double>::infinity();
      for (const Complex& c : cvals) cv_gap = std::min(cv_gap, segment_distance(c, here, target));
      const bool critical = min_derivative < kCriticalDerivative || cv_gap <= 10.0 * min_step + tol;
      res.status = critical ? LiftStatus::CriticalPointHit : LiftStatus::Diverged;
      res.fail_index = static_cast<int>(res.h0.size());
      res.message = critical ? "continuation stalled at a critical value" : "continuation stalled at minimum step";
      return res;
    }
    s0 += len;
    res.at_vertices.push_back(h);
  }
  return res;
}

namespace {

Complex polish(const LiftFunction& g, Complex x, Complex w) {
  for (int it = 0; it < 8; ++it) {
    const Complex d = g.derivative(x);
    if (std::abs(d) < 1e-300) break;
    const Complex nx = x - (g.value(x) - w) / d;
    if (!is_finite(nx)) break;
    x = nx;
  }
  return x;
}

bool nodes_ok(const std::vector<Complex>& hv, const std::vector<int>& idx, double quarter) {
  for (std::size_t j = 0; j + 1 < idx.size(); ++j) {
    const Complex base = hv[static_cast<std::size_t>(idx[j])];
    if (!(std::abs(hv[static_cast<std::size_t>(idx[j + 1])] - base) < quarter)) return false;
    for (int i = idx[j] + 1; i < idx[j + 1]; ++i) {
      if (!(std::abs(hv[static_cast<std::size_t>(i)] - base) < quarter)) return false;
    }
  }
  return true;
}

std::vector<int> node_indices(int density, int n) {
  std::vector<int> idx;
  for (int j = 0; j < n; ++j) idx.push_back(static_cast<int>(std::lround(static_cast<double>(j) * (density - 1) / (n - 1))));
  return idx;
}

}  // namespace

LiftableTarget liftable_target(const LiftFunction& g, const UnitCircleArc& arc, const ArcTarget& h, double eps, int n_nodes,
                               const LiftableOptions& opts) {
  if (n_nodes < 2) throw Error(Errc::invalid_argument, "need at least two nodes");
  if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "eps must be positive");
  if (opts.density < n_nodes) throw Error(Errc::invalid_argument, "grid density below node count");

  LiftableTarget out;
  const int D = opts.density;
  for (int i = 0; i < D; ++i) {
    const double t = arc.alpha + arc.length() * i / (D - 1);
    out.t.push_back(t);
    out.target.push_back(h(std::polar(1.0, t)));
  }

  int n = n_nodes;
  std::vector<int> idx = node_indices(D, n);
  while (!nodes_ok(out.target, idx, 0.25 * eps)) {
    if (n == D) throw Error(Errc::node_search_failure, "target varies by eps/4 between adjacent grid points");
    n = std::min(D, 2 * n - 1);
    idx = node_indices(D, n);
  }
  out.node_index = idx;
  out.n_nodes = n;

  const std::vector<Complex> cvals = g.critical_values();
  const double radius = 0.125 * eps;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto point_ok = [&](Complex w) {
    return std::all_of(cvals.begin(), cvals.end(), [&](Complex c) { return std::abs(w - c) > kCriticalValueGap; });
  };
  auto segment_ok = [&](Complex a, Complex b) {
    return std::all_of(cvals.begin(), cvals.end(), [&](Complex c) { return segment_distance(c, a, b) > kCriticalValueGap; });
  };
  auto random_near = [&](Complex c) {
    const double rr = 0.99 * radius * std::sqrt(unit(rng));
    return c + std::polar(rr, kTwoPi * unit(rng));
  };

  const Complex h_first = out.target[static_cast<std::size_t>(idx.front())];
  Complex w = h_first;
  for (int tries = 0; !point_ok(w); ++tries) {
    if (tries >= opts.max_resamples) throw Error(Errc::node_search_failure, "cannot place the first node off the critical values");
    w = random_near(h_first);
  }
  const std::vector<Complex> pre = g.preimages(w);
  if (pre.empty()) throw Error(Errc::node_search_failure, "first node has no preimage");
  Complex h_cur = *std::max_element(pre.begin(), pre.end(), [](Complex x, Complex y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  h_cur = polish(g, h_cur, w);

  out.h0.assign(static_cast<std::size_t>(D), Complex(0.0, 0.0));
  out.h0[static_cast<std::size_t>(idx.front())] = h_cur;
  out.node_w.push_back(w);

  for (std::size_t j = 0; j + 1 < idx.size(); ++j) {
    const int i0 = idx[j];
    const int i1 = idx[j + 1];
    const Complex hn = out.target[static_cast<std::size_t>(i1)];
    const Complex w0 = out.node_w.back();
    std::vector<Complex> candidates;
    if (std::abs(w0 - hn) < radius) candidates.push_back(w0);
    candidates.push_back(hn);

    LiftResult lr;
    Complex w1;
    bool done = false;
    for (int tries = 0; !done && tries < opts.max_resamples + 2; ++tries) {
      w1 = tries < static_cast<int>(candidates.size()) ? candidates[static_cast<std::size_t>(tries)] : random_near(hn);
      if (!point_ok(w1) || !segment_ok(w0, w1)) continue;
      std::vector<Complex> poly;
      for (int i = i0; i <= i1; ++i) {
        const double lam = static_cast<double>(i - i0) / (i1 - i0);
        poly.push_back(w0 + lam * (w1 - w0));
      }
      lr = lift_path(g, poly, h_cur, opts.tol);
      done = lr.complete();
    }
    if (!done) throw Error(Errc::lift_failure, "segment lift failed after resampling");
    for (int i = i0; i <= i1; ++i) out.h0[static_cast<std::size_t>(i)] = lr.at_vertices[static_cast<std::size_t>(i - i0)];
    h_cur = lr.at_vertices.back();
    out.node_w.push_back(w1);
  }

  for (int i = 0; i < D; ++i) {
    out.defect = std::max(out.defect, std::abs(g.value(out.h0[static_cast<std::size_t>(i)]) - out.target[static_cast<std::size_t>(i)]));
  }
  if (!(out.defect < eps)) throw Error(Errc::lift_failure, "realized defect not below eps");
  return out;
}

}  // namespace abel
