#include <algorithm>
#include <cmath>
#include <limits>

#include "abel/builder.hpp"

namespace abel {

namespace {

// (z + t) / (1 + conj(t) z)
Complex shift(Complex t, Complex z) { return (z + t) / (1.0 + std::conj(t) * z); }
Complex unshift(Complex t, Complex p) { return (p - t) / (1.0 - std::conj(t) * p); }

}  // namespace

std::vector<Complex> probe_parameters(Complex w_center, double delta, int samples) {
  std::vector<Complex> taus;
  if (samples <= 1 || delta == 0.0) {
    taus.assign(static_cast<std::size_t>(std::max(samples, 1)), w_center);
    return taus;
  }
  // sunflower spiral: centre first, last sample on the boundary circle
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int j = 0; j < samples; ++j) {
    const double rad = delta * std::sqrt(static_cast<double>(j) / (samples - 1));
    taus.push_back(w_center + std::polar(rad, golden * j));
  }
  return taus;
}

double condition_iii_error(const ComplexPolynomial& target, Complex w_center, double delta, double r_k, int samples,
                           int grid) {
  double worst = 0.0;
  for (Complex tau : probe_parameters(w_center, delta, samples)) {
    for (int j = 0; j < grid; ++j) {
      // holomorphic in z on the closed disc, so the unit circle carries the maximum
      const Complex z = r_k * std::polar(1.0, kTwoPi * j / grid);
      worst = std::max(worst, std::abs(target(unshift(w_center, shift(tau, z))) - target(z)));
    }
  }
  return worst;
}

InvariantStageResult build_invariant_stage(Complex w_center, double delta, double r_k, const UnitCircleArc& arc,
                                           const ComplexPolynomial& target, int m, double tol,
                                           const InvariantStageOptions& opts) {
  if (m < 1) throw Error(Errc::invalid_argument, "target index must be positive");
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  InvariantStageResult res;
  res.delta = delta;
  res.fit_tol = tol;
  res.condition_iii = condition_iii_error(target, w_center, delta, r_k, opts.condition_samples, opts.condition_grid);
  if (!(res.condition_iii < 1.0 / m)) throw Error(Errc::condition_iii_violated, "parameter disc too large for 1/m");

  CompoundCompactum F = build_F_compactum(w_center, delta, r_k, arc, opts.param_density, opts.arc_density);
  SampledComponent fc = F.components.front();
  res.max_modulus = fc.max_modulus();
  double min_mod = std::numeric_limits<double>::infinity();
  for (const Complex& p : fc.points) min_mod = std::min(min_mod, std::abs(p));
  res.disc_radius = opts.disc_radius > 0.0 ? opts.disc_radius : 0.5 * min_mod;
  if (!(res.disc_radius > 0.0) || res.disc_radius >= min_mod) throw Error(Errc::invalid_argument, "disc constraint must stay inside the F-compactum");
  fc.set_target([&](Complex p) { return target(unshift(w_center, p)); });
  SampledComponent disc = sample_disc_constraint(res.disc_radius, opts.disc_density);
  CompoundCompactum set = make_union({disc, fc});
  res.fit = fit_until(set, tol, opts.max_degree, opts.fit);

  const auto& P = res.fit.poly;
  const Evaluator phi = opts.continuous_target ? opts.continuous_target : Evaluator([&](Complex z) { return target(z); });
  const SampledComponent arc_grid = sample_dilated_arc(arc, r_k, opts.arc_density);
  for (Complex tau : probe_parameters(w_center, delta, opts.condition_samples)) {
    ChainSample cs;
    cs.tau = tau;
    std::vector<Complex> pts;
    for (const Complex& z : arc_grid.points) pts.push_back(shift(tau, z));
    std::vector<Complex> vals(pts.size());
    P.evaluate(pts, vals);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Complex z = arc_grid.points[i];
      const Complex pulled = target(unshift(w_center, pts[i]));
      cs.lhs = std::max(cs.lhs, std::abs(vals[i] - phi(z)));
      cs.fit_term = std::max(cs.fit_term, std::abs(vals[i] - pulled));
      cs.condition_term = std::max(cs.condition_term, std::abs(pulled - target(z)));
      cs.substitution_term = std::max(cs.substitution_term, std::abs(target(z) - phi(z)));
    }
    res.chain_max = std::max(res.chain_max, cs.lhs);
    res.chain.push_back(cs);
  }
  return res;
}

InvariantStageResult find_invariant_stage(Complex w_center, double delta0, double r_k, const UnitCircleArc& arc,
                                          const ComplexPolynomial& target, int m, const InvariantStageOptions& opts,
                                          int max_halvings) {
  double delta = delta0;
  for (int h = 0; h <= max_halvings; ++h, delta *= 0.5) {
    if (std::abs(w_center) + delta >= 1.0) continue;
    if (!(condition_iii_error(target, w_center, delta, r_k, opts.condition_samples, opts.condition_grid) < 1.0 / m)) continue;
    try {
      InvariantStageResult res = build_invariant_stage(w_center, delta, r_k, arc, target, m, 1.0 / m, opts);
      res.halvings = h;
      return res;
    } catch (const Error& e) {
      if (e.code() != Errc::escapes_disc && e.code() != Errc::condition_iii_violated) throw;
    }
  }
  throw Error(Errc::condition_iii_violated, "no delta found within the halving budget");
}

}  // namespace abel
