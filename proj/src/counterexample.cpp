#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "abel/builder.hpp"
#include "builder_internal.hpp"

namespace abel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = a + (b - a) * j / (n - 1);
  t.back() = b;
  return t;
}

double modulus(const DiscAutomorphism& phi, Complex zeta, double r) { return std::abs(phi(r * zeta)); }

}  // namespace

CounterexampleWitness compute_witness(const DiscAutomorphism& phi, Complex zeta1, Complex zeta2,
                                      const RadiiSchedule& rho, int N) {
  if (std::abs(phi.a()) <= 1e-14) throw Error(Errc::a_zero, "the witness needs a non-rotation automorphism");
  if (N < 0) throw Error(Errc::invalid_argument, "stage count must be non-negative");
  rho.validate();
  const double c1 = (std::conj(phi.a()) * zeta1).real();
  const double c2 = (std::conj(phi.a()) * zeta2).real();
  if (std::abs(c1 - c2) <= 1e-12) throw Error(Errc::criterion_violated, "Re(conj(a) zeta) coincides for the two directions");

  CounterexampleWitness w;
  w.phi = phi;
  w.zeta1 = zeta1;
  w.zeta2 = zeta2;
  w.r_minus1 = std::max(radial_monotone_threshold(phi, zeta1), radial_monotone_threshold(phi, zeta2));
  // levels below the curves' starting moduli cannot be met on the monotone tails
  w.level_floor = std::max({w.r_minus1, modulus(phi, zeta1, w.r_minus1), modulus(phi, zeta2, w.r_minus1)});
  for (double r : rho.r) {
    if (r <= w.level_floor + 1e-12) {
      ++w.dropped;
    } else {
      w.rho.r.push_back(r);
    }
  }
  if (w.rho.size() < static_cast<std::size_t>(N) + 2) {
    std::ostringstream os;
    os << "need " << N + 2 << " radii above " << w.level_floor << ", have " << w.rho.size();
    throw Error(Errc::invalid_argument, os.str());
  }
  for (int n = 0; n <= N + 1; ++n) {
    const double rn = w.rho[static_cast<std::size_t>(n)];
    w.R1.push_back(solve_level_radius(phi, zeta1, rn, w.r_minus1));
    w.R2.push_back(solve_level_radius(phi, zeta2, rn, w.r_minus1));
  }
  for (int n = 0; n <= N; ++n) {
    const double half = 0.5 * (w.rho[static_cast<std::size_t>(n)] + w.rho[static_cast<std::size_t>(n + 1)]);
    w.s1.push_back(solve_level_radius(phi, zeta1, half, w.r_minus1));
    w.s2.push_back(solve_level_radius(phi, zeta2, half, w.r_minus1));
  }
  w.eta.assign(static_cast<std::size_t>(N) + 1, kNaN);

  for (int n = 0; n <= N; ++n) {
    const auto k = static_cast<std::size_t>(n);
    const bool ok1 = w.R1[k] < w.s1[k] && w.s1[k] < w.R1[k + 1] && w.R1[k] > w.r_minus1;
    const bool ok2 = w.R2[k] < w.s2[k] && w.s2[k] < w.R2[k + 1] && w.R2[k] > w.r_minus1;
    if (!ok1 || !ok2) throw Error(Errc::interleaving_violated, "R_n < s_n < R_{n+1} fails at n = " + std::to_string(n));
  }
  const std::vector<const std::vector<double>*> seqs{&w.R1, &w.R2, &w.s1, &w.s2};
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = i + 1; j < seqs.size(); ++j) {
      for (double x : *seqs[i]) {
        for (double y : *seqs[j]) {
          if (std::abs(x - y) < 1e-9) throw Error(Errc::interleaving_violated, "witness radii collide within 1e-9");
        }
      }
    }
  }
  return w;
}

namespace {

double curve_end(const CounterexampleWitness& w, int i, double kappa) {
  const double s_last = (i == 1 ? w.s1 : w.s2).back();
  const double r_to = 1.0 - kappa;
  return s_last < r_to ? r_to : 0.5 * (s_last + 1.0);
}

}  // namespace

StageCaseInfo classify_stage(int n, const SampledComponent& arc_set, const CounterexampleWitness& w, double kappa,
                             int curve_density) {
  StageCaseInfo info;
  info.kind = StageCase::I;
  if (w.R1.empty() || n < 0 || static_cast<std::size_t>(n) >= w.R1.size()) return info;
  bool meets[2] = {false, false};
  double dist[2];
  for (int i = 1; i <= 2; ++i) {
    const Complex zeta = i == 1 ? w.zeta1 : w.zeta2;
    SampledComponent curve = sample_radial_curve(w.phi, zeta, w.r_minus1, curve_end(w, i, kappa), curve_density);
    // the only point of the curve at modulus r_n
    curve.points.push_back(w.phi((i == 1 ? w.R1 : w.R2)[static_cast<std::size_t>(n)] * zeta));
    dist[i - 1] = min_distance(arc_set.points, curve.points);
    meets[i - 1] = dist[i - 1] < 1e-3;
  }
  info.distance1 = dist[0];
  info.distance2 = dist[1];
  if (meets[0] && meets[1]) {
    info.kind = StageCase::III;
    info.order = w.R1[static_cast<std::size_t>(n)] < w.R2[static_cast<std::size_t>(n)] ? 1 : -1;
  } else if (meets[0] || meets[1]) {
    info.kind = StageCase::II;
    info.curve = meets[0] ? 1 : 2;
  }
  return info;
}

std::optional<double> find_case3_eta(int n, const CounterexampleWitness& w, int order, double slack) {
  if (n < 1 || static_cast<std::size_t>(n) >= w.s1.size()) throw Error(Errc::invalid_argument, "stage outside the witness range");
  const auto k = static_cast<std::size_t>(n);
  // curve a carries the smaller level radius
  const bool a_is_1 = order > 0;
  const Complex za = a_is_1 ? w.zeta1 : w.zeta2, zb = a_is_1 ? w.zeta2 : w.zeta1;
  const std::vector<double>& Ra = a_is_1 ? w.R1 : w.R2;
  const std::vector<double>& Rb = a_is_1 ? w.R2 : w.R1;
  const std::vector<double>& sa = a_is_1 ? w.s1 : w.s2;
  const std::vector<double>& sb = a_is_1 ? w.s2 : w.s1;
  auto Ma = [&](double r) { return modulus(w.phi, za, r); };
  auto Mb = [&](double r) { return modulus(w.phi, zb, r); };
  const double rn = w.rho[k];
  const double ra = Ra[k], rb = Rb[k];
  if (!(ra < rb)) return std::nullopt;
  auto holds = [&](double eta) {
    if (rb + eta >= 1.0 || ra - eta <= w.r_minus1) return false;
    const double mb_hi = Mb(rb - eta);
    const double ma_lo = Ma(ra + eta);
    return std::max(Mb(sb[k - 1]), Mb(ra + eta)) + slack <= mb_hi && mb_hi + slack <= rn && rn + slack <= ma_lo &&
           ma_lo + slack <= std::min(Ma(sa[k]), Ma(rb - eta)) && Ma(ra - eta) >= Ma(sa[k - 1]) && Mb(rb + eta) <= Mb(sb[k]);
  };
  double eta = 0.25 * (rb - ra);
  for (int i = 0; i < 60; ++i, eta *= 0.5) {
    if (holds(eta)) return eta;
  }
  return std::nullopt;
}

namespace {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double f = std::exp(-1.0 / x), g = std::exp(-1.0 / (1.0 - x));
  return f / (f + g);
}

double ramp(BridgeShape shape, double r, double lo, double pin, double hi) {
  double x = r <= pin ? (r - lo) / (pin - lo) : (hi - r) / (hi - pin);
  x = std::clamp(x, 0.0, 1.0);
  return shape == BridgeShape::Smooth ? smooth_step(x) : x;
}

struct Window {
  double lo, pin, hi;
  Complex value;  // target at the pin
};

SampledComponent curve_component(const CounterexampleWitness& w, int i, double r_from, double r_to, const BuildConfig& cfg,
                                  const std::optional<Window>& win) {
  const Complex zeta = i == 1 ? w.zeta1 : w.zeta2;
  std::vector<double> rs = linspace(r_from, r_to, cfg.curve_density);
  if (win) {
    const double width = win->hi - win->lo;
    const double a = std::max(r_from, win->lo - width), b = std::min(r_to, win->hi + width);
    if (a < b) {
      const std::vector<double> extra = linspace(a, b, cfg.window_density);
      rs.insert(rs.end(), extra.begin(), extra.end());
    }
    rs.push_back(std::max(r_from, win->lo));
    rs.push_back(std::min(r_to, win->hi));
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end(), [](double x, double y) { return std::abs(x - y) <= 1e-15; }), rs.end());
  }
  SampledComponent c;
  c.kind = ComponentKind::RadialCurve;
  c.label = "curve" + std::to_string(i);
  c.params = CurveParams{w.phi, zeta, r_from, r_to};
  c.density = cfg.curve_density;
  c.regenerable = !win.has_value();
  std::vector<Complex> tgt;
  for (double r : rs) {
    Complex t(0.0, 0.0);
    if (win && r > win->lo && r < win->hi) {
      if (cfg.bridge == BridgeShape::Free) continue;
      t = ramp(cfg.bridge, r, win->lo, win->pin, win->hi) * win->value;
    }
    c.parameter.push_back(r);
    c.points.push_back(w.phi(r * zeta));
    tgt.push_back(t);
  }
  c.target = std::move(tgt);
  c.validate();
  return c;
}

SampledComponent pin_component(const CounterexampleWitness& w, int i, double R, Complex value) {
  const Complex zeta = i == 1 ? w.zeta1 : w.zeta2;
  SampledComponent c;
  c.kind = ComponentKind::RadialCurve;
  c.label = "pin" + std::to_string(i);
  c.params = CurveParams{w.phi, zeta, R, R};
  c.density = 1;
  c.regenerable = false;
  c.parameter = {R};
  c.points = {w.phi(R * zeta)};
  c.target = std::vector<Complex>{value};
  c.validate();
  return c;
}

ComponentDescriptor describe_curve(const SampledComponent& c, const std::optional<Window>& win) {
  ComponentDescriptor d = detail::descriptor(c);
  if (win) d.window = std::make_pair(win->lo, win->hi);
  return d;
}

}  // namespace

SweepResult counterexample_sweep(const UniversalSeries& s, const CounterexampleWitness& w, int samples) {
  SweepResult out;
  const int N = s.built_stages();
  const double r_hi = w.rho[static_cast<std::size_t>(std::max(N, 0))];
  std::vector<Complex> p1, p2;
  for (int j = 0; j < samples; ++j) {
    const double r = samples == 1 ? w.r_minus1 : w.r_minus1 + (r_hi - w.r_minus1) * j / (samples - 1);
    out.r.push_back(r);
    p1.push_back(w.phi(r * w.zeta1));
    p2.push_back(w.phi(r * w.zeta2));
  }
  const std::vector<Complex> f1 = s.evaluate(p1), f2 = s.evaluate(p2);
  for (std::size_t j = 0; j < out.r.size(); ++j) {
    out.value.push_back(std::min(std::abs(f1[j]), std::abs(f2[j])));
    out.max_value = std::max(out.max_value, out.value.back());
  }
  return out;
}

CounterexampleResult build_counterexample_series(const BuildConfig& cfg, const CounterexampleWitness& witness, int N) {
  cfg.eps.validate();
  if (N < 0) throw Error(Errc::invalid_argument, "stage count must be non-negative");
  if (witness.s1.size() < static_cast<std::size_t>(N) + 1) throw Error(Errc::invalid_argument, "witness computed for fewer stages");
  if (cfg.eps.size() < static_cast<std::size_t>(N) + 1) throw Error(Errc::invalid_argument, "tolerance schedule shorter than the stage count");
  cfg.enumeration.validate(N);

  CounterexampleResult res;
  res.witness = witness;
  const CounterexampleWitness& w = res.witness;
  UniversalSeries& s = res.series;
  s.kind = "counterexample";
  s.rho = w.rho;
  s.eps = cfg.eps;
  s.enumeration = cfg.enumeration;
  s.config = cfg;
  s.config.rho = w.rho;
  s.header = finite_enumeration_header(cfg.enumeration, N);
  s.stages.push_back(detail::zero_stage());
  const double end1 = curve_end(w, 1, cfg.curve_kappa), end2 = curve_end(w, 2, cfg.curve_kappa);

  for (int n = 1; n <= N; ++n) {
    const auto k = static_cast<std::size_t>(n);
    Stage st;
    st.n = n;
    st.alpha = cfg.enumeration.alpha[k - 1];
    st.beta = cfg.enumeration.beta[k - 1];
    st.r = w.rho[k];
    st.eps = cfg.eps[k];
    st.tol = st.eps;
    const ComplexPolynomial& phi_t = cfg.enumeration.targets[static_cast<std::size_t>(st.alpha)];
    const UnitCircleArc& arc = cfg.enumeration.arcs[static_cast<std::size_t>(st.beta)];

    SampledComponent disc = detail::disc_component(Complex(0.0, 0.0), w.rho[k - 1], cfg.disc_density);
    SampledComponent approx = sample_dilated_arc(arc, st.r, cfg.arc_density);
    {
      const std::vector<Complex> prev = s.evaluate(approx.points, n - 1);
      std::vector<Complex> tgt(approx.size());
      for (std::size_t i = 0; i < approx.size(); ++i) tgt[i] = phi_t(std::polar(1.0, approx.parameter[i])) - prev[i];
      approx.set_target(std::move(tgt));
    }
    st.case_info = classify_stage(n, approx, w, cfg.curve_kappa);

    // value that P_n must take at a pin so that the partial sum meets the target there
    auto pin_value = [&](Complex p) { return phi_t(p / std::abs(p)) - s.evaluate(p, n - 1); };

    std::vector<SampledComponent> comps{disc, approx};
    std::vector<std::optional<Window>> windows{std::nullopt, std::nullopt};
    std::vector<std::pair<int, Window>> pins;
    auto add_curve = [&](int i, double from, double to, const std::optional<Window>& win) {
      comps.push_back(curve_component(w, i, from, to, cfg, win));
      windows.push_back(win);
      if (win) {
        comps.push_back(pin_component(w, i, win->pin, win->value));
        windows.push_back(std::nullopt);
        pins.emplace_back(i, *win);
      }
    };
    auto make_window = [&](int i, double lo, double pin, double hi) {
      const Complex zeta = i == 1 ? w.zeta1 : w.zeta2;
      return Window{lo, pin, hi, pin_value(w.phi(pin * zeta))};
    };

    bool aborted = false;
    switch (st.case_info.kind) {
      case StageCase::I:
      case StageCase::Zero:
        add_curve(1, w.r_minus1, end1, std::nullopt);
        add_curve(2, w.r_minus1, end2, std::nullopt);
        break;
      case StageCase::II: {
        const int j = st.case_info.curve;
        const int i = 3 - j;
        const std::vector<double>& R = j == 1 ? w.R1 : w.R2;
        const std::vector<double>& sv = j == 1 ? w.s1 : w.s2;
        add_curve(i, w.r_minus1, i == 1 ? end1 : end2, std::nullopt);
        add_curve(j, w.r_minus1, j == 1 ? end1 : end2, make_window(j, sv[k - 1], R[k], sv[k]));
        break;
      }
      case StageCase::III: {
        const std::optional<double> eta = find_case3_eta(n, w, st.case_info.order);
        if (!eta) {
          st.failed = true;
          st.failure = "eta-not-found: Case III modulus chain fails at slack 1e-4";
          aborted = true;
          break;
        }
        st.eta = *eta;
        res.witness.eta[k] = *eta;
        const int a = st.case_info.order > 0 ? 1 : 2;
        const int b = 3 - a;
        const std::vector<double>& Ra = a == 1 ? w.R1 : w.R2;
        const std::vector<double>& Rb = a == 1 ? w.R2 : w.R1;
        const std::vector<double>& sa = a == 1 ? w.s1 : w.s2;
        add_curve(a, sa[k - 1], a == 1 ? end1 : end2, make_window(a, Ra[k] - *eta, Ra[k], Ra[k] + *eta));
        add_curve(b, w.r_minus1, b == 1 ? end1 : end2, make_window(b, Rb[k] - *eta, Rb[k], Rb[k] + *eta));
        break;
      }
    }
    if (aborted) {
      s.stages.push_back(std::move(st));
      s.failed = true;
      s.failed_stage = n;
      s.failure = "stage " + std::to_string(n) + ": " + s.stages.back().failure;
      break;
    }

    CompoundCompactum set = make_union(std::move(comps));
    for (std::size_t c = 0; c < set.components.size(); ++c) {
      st.compactum.push_back(describe_curve(set.components[c], c < windows.size() ? windows[c] : std::nullopt));
    }
    detail::record_fit(st, set, fit_until(set, st.tol, cfg.max_degree, cfg.fit));
    for (const auto& [i, win] : pins) {
      const Complex zeta = i == 1 ? w.zeta1 : w.zeta2;
      PinRecord pr;
      pr.curve = i;
      pr.radius = win.pin;
      pr.point = w.phi(win.pin * zeta);
      pr.value = win.value;
      pr.window_lo = win.lo;
      pr.window_hi = win.hi;
      pr.residual_at_pin = std::abs(st.poly(pr.point) - win.value);
      pr.residual_at_lo = std::abs(st.poly(w.phi(win.lo * zeta)));
      pr.residual_at_hi = std::abs(st.poly(w.phi(win.hi * zeta)));
      st.pins.push_back(pr);
    }
    s.stages.push_back(std::move(st));
    if (s.stages.back().failed) {
      s.failed = true;
      s.failed_stage = n;
      s.failure = "stage " + std::to_string(n) + ": " + s.stages.back().failure;
      break;
    }
  }

  res.budget = 0.0;
  for (int n = 1; n <= N; ++n) res.budget += cfg.eps[static_cast<std::size_t>(n)];
  for (int n = 1; n <= s.built_stages(); ++n) res.budget += s.stages[static_cast<std::size_t>(n)].fit.sup_error;
  res.sweep = counterexample_sweep(s, w, 200);
  res.sweep_ok = res.sweep.max_value <= res.budget;
  return res;
}

}  // namespace abel
