// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance [--criterion k]   (all criteria when omitted)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abel/csv.hpp"
#include "abel/lifting.hpp"
#include "abel/probe.hpp"
#include "abel/serialization.hpp"

using namespace abel;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) { return format_double(x); }

constexpr std::uint64_t kSeed = 20240901;

// ---- 1 ----

Outcome mobius_identity() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double ident = 0.0, invol = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Complex a = std::polar(0.99 * std::sqrt(u(rng)), kTwoPi * u(rng));
    const Complex z = std::polar(std::sqrt(u(rng)), kTwoPi * u(rng));
    ident = std::max(ident, modulus_identity_residual(a, z));
    const DiscAutomorphism phi(a);
    invol = std::max(invol, std::abs(phi(phi(z)) - z));
  }
  return {ident <= 1e-11 && invol <= 1e-11, "identity residual " + fmt(ident) + ", involution residual " + fmt(invol)};
}

// ---- 2 ----

Outcome circle_geometry() {
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double img = 0.0, three = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Complex a = std::polar(0.9 * std::sqrt(u(rng)), kTwoPi * u(rng));
    const double R = 0.05 + 0.9 * u(rng);
    const DiscAutomorphism phi(a);
    std::vector<Complex> pts;
    for (int j = 0; j < 720; ++j) pts.push_back(phi(std::polar(R, kTwoPi * j / 720)));
    const EuclideanCircle fit = fit_circle(pts.data(), pts.size());
    const EuclideanCircle c = image_circle(a, R);
    img = std::max({img, std::abs(fit.center - c.center), std::abs(fit.radius - c.radius)});
    const auto t = circle_through_three(pts[0], pts[240], pts[480]);
    if (!std::holds_alternative<EuclideanCircle>(t)) return {false, "three-point circle reported collinear"};
    const EuclideanCircle& e = std::get<EuclideanCircle>(t);
    three = std::max({three, std::abs(fit.center - e.center), std::abs(fit.radius - e.radius)});
  }
  return {img <= 1e-9 && three <= 1e-9, "image circle vs fit " + fmt(img) + ", three-point vs fit " + fmt(three)};
}

// ---- 3 ----

BuildConfig membership_defaults() {
  BuildConfig cfg;
  cfg.rho = RadiiSchedule::defaults(9);
  cfg.eps = EpsilonSchedule::defaults(9);
  cfg.enumeration.targets = {ComplexPolynomial::constant(2.0), ComplexPolynomial::constant({0.0, -3.0})};
  cfg.enumeration.arcs = {UnitCircleArc::make(0.0, kPi / 2), UnitCircleArc::make(kPi, 3 * kPi / 2)};
  auto [al, be] = schedule_pairs(2, 2, 8);
  cfg.enumeration.alpha = al;
  cfg.enumeration.beta = be;
  cfg.arc_density = 512;
  cfg.max_degree = 512;
  cfg.tol_factor = 0.5;
  return cfg;
}

struct Payload {
  std::string json;
  std::string csv;
};

Payload membership_payload(UniversalSeries* keep = nullptr) {
  UniversalSeries s = build_membership_series(membership_defaults(), 8);
  Payload p{dump(series_to_json(s)), stage_table(s).str()};
  if (keep) *keep = std::move(s);
  return p;
}

Outcome membership_build() {
  UniversalSeries s;
  membership_payload(&s);
  std::ostringstream os;
  bool ok = !s.failed && s.built_stages() == 8;
  for (int n = 1; n <= s.built_stages(); ++n) {
    const Stage& st = s.stages[static_cast<std::size_t>(n)];
    const bool stage_ok = !st.failed && st.fit.sup_error <= st.eps / 2;
    ok = ok && stage_ok;
    os << " n" << n << ":deg" << st.fit.degree << ",sup" << fmt(st.fit.sup_error) << (stage_ok ? "" : "(>eps/2)");
  }
  if (s.failed) {
    os << " build stopped: " << s.failure;
  } else {
    for (const TelescopeCheck& c : telescoping_check(s, 512)) {
      ok = ok && c.ok;
      if (!c.ok) os << " telescope n" << c.n << " " << fmt(c.error) << ">" << fmt(c.bound);
    }
  }
  return {ok, "stages built " + std::to_string(s.built_stages()) + "/8;" + os.str()};
}

// ---- 4 ----

Outcome left_invariance() {
  BuildConfig cfg;
  cfg.rho.r = {0.0, 0.4, 0.6};
  cfg.eps = EpsilonSchedule::defaults(3);
  const double l2 = std::log(2.0);
  cfg.enumeration.targets = {ComplexPolynomial::constant(l2), ComplexPolynomial::constant(-l2)};
  cfg.enumeration.arcs = {UnitCircleArc::make(0.0, 0.5)};
  cfg.enumeration.alpha = {0, 1};
  cfg.enumeration.beta = {0, 0};
  const int N = 2;
  auto s = std::make_shared<const UniversalSeries>(build_membership_series(cfg, N));
  if (s->failed) return {false, "membership build failed: " + s->failure};

  const FunctionExpr F = FunctionExpr::series(s);
  const FunctionExpr E = compose_left(LeftOp::exp(), F);
  const std::vector<Complex> grid = scan_grid(cfg.enumeration.arcs, cfg.rho, N, 512);
  const FunctionExpr R = compose_left(LeftOp::reciprocal(), E, grid);
  const double cert = R.certificate()->min_modulus;

  bool ok = cert > 1e-6;
  std::ostringstream os;
  os << "reciprocal certificate min|exp F| " << fmt(cert) << ";";
  for (int n = 1; n <= N; ++n) {
    const Stage& st = s->stages[static_cast<std::size_t>(n)];
    const UnitCircleArc& arc = cfg.enumeration.arcs[static_cast<std::size_t>(st.beta)];
    const Complex h0 = cfg.enumeration.targets[static_cast<std::size_t>(st.alpha)](0.0);
    const Complex g = std::exp(h0);
    const SampledComponent pts = sample_dilated_arc(arc, st.r, 512);
    double B = std::abs(h0);
    for (Complex v : F.evaluate(pts.points)) B = std::max(B, std::abs(v));
    const double delta = dilate_distance(F, arc, [h0](Complex) { return h0; }, st.r, 512);
    const double telescoped = s->eps.sum(n, N);
    const double e_exp = dilate_distance(E, arc, [g](Complex) { return g; }, st.r, 512);
    const double e_rec = dilate_distance(R, arc, [g](Complex) { return 1.0 / g; }, st.r, 512);
    const double bound = std::exp(B) * delta;
    const bool stage_ok = delta <= telescoped && e_exp <= bound && e_rec <= bound;
    ok = ok && stage_ok;
    os << " n" << n << " target " << fmt(g.real()) << ": exp err " << fmt(e_exp) << ", 1/exp err " << fmt(e_rec)
       << ", bound e^B*delta " << fmt(bound) << (stage_ok ? "" : " VIOLATED") << ";";
  }
  return {ok, os.str()};
}

// ---- 5 ----

struct CounterexampleRun {
  CounterexampleResult res;
  BuildConfig cfg;
};

CounterexampleRun run_counterexample() {
  CounterexampleRun run;
  BuildConfig& cfg = run.cfg;
  cfg.enumeration.targets = {ComplexPolynomial(), ComplexPolynomial::constant(10.0)};
  cfg.enumeration.arcs = {UnitCircleArc::make(kPi / 2 - 0.003, kPi / 2 + 0.003)};
  cfg.enumeration.alpha = {0, 0, 0, 0, 0, 1};
  cfg.enumeration.beta = {0, 0, 0, 0, 0, 0};
  cfg.eps.eps.assign(7, 0.08);
  cfg.max_degree = 512;
  RadiiSchedule rho;
  for (int k = 0; k < 8; ++k) rho.r.push_back(0.70 + 0.04 * k);
  cfg.rho = rho;
  const CounterexampleWitness w = compute_witness(DiscAutomorphism(0.5), 1.0, Complex(0.0, 1.0), rho, 6);
  run.res = build_counterexample_series(cfg, w, 6);
  return run;
}

Payload counterexample_payload(const CounterexampleResult& r) {
  Json j = series_to_json(r.series);
  j["witness"] = witness_to_json(r.witness);
  j["budget"] = r.budget;
  j["sweep_max"] = r.sweep.max_value;
  CsvTable sweep({"r", "min_modulus"});
  for (std::size_t i = 0; i < r.sweep.r.size(); ++i) sweep.row().cell(r.sweep.r[i]).cell(r.sweep.value[i]);
  return {dump(j), stage_table(r.series).str() + sweep.str()};
}

Outcome right_non_invariance() {
  const CounterexampleRun run = run_counterexample();
  const CounterexampleResult& r = run.res;
  const UniversalSeries& s = r.series;
  if (s.failed) return {false, "counterexample build failed: " + s.failure};
  std::ostringstream os;
  bool ok = r.sweep_ok && r.budget < 1.0;
  os << "sweep max " << fmt(r.sweep.max_value) << " <= budget " << fmt(r.budget) << " (" << r.sweep.r.size()
     << " radii);";
  for (int n = 1; n <= s.built_stages(); ++n) {
    const Stage& st = s.stages[static_cast<std::size_t>(n)];
    const bool small = st.disc_sup <= st.eps && st.small_sup <= st.eps;
    ok = ok && small;
    os << " n" << n << ":" << describe(st.case_info) << ",deg" << st.fit.degree;
  }
  auto F = std::make_shared<const UniversalSeries>(s);
  const FunctionExpr f = FunctionExpr::series(F);
  for (int n = 1; n <= s.built_stages(); ++n) {
    const Stage& st = s.stages[static_cast<std::size_t>(n)];
    if (st.alpha != 1) continue;
    const double err = dilate_distance(f, s.enumeration.arcs[static_cast<std::size_t>(st.beta)],
                                       [](Complex) { return Complex(10.0, 0.0); }, st.r, 512);
    const double bound = s.eps.sum(n, s.built_stages());
    ok = ok && err <= bound;
    os << "; F without composition at stage " << n << ": dilate error to 10 " << fmt(err) << " <= " << fmt(bound);
  }
  // F o Phi on tiny arcs about zeta1 and zeta2 stays far from budget + 1
  const FunctionExpr g = compose_right(f, r.witness.phi);
  const std::vector<UnitCircleArc> tiny{UnitCircleArc::make(0.0, 1e-4), UnitCircleArc::make(kPi / 2 - 5e-5, kPi / 2 + 5e-5)};
  const Complex far(r.budget + 1.0, 0.0);
  double worst_gap = 1e9;
  for (int j = 0; j < 200; ++j) {
    const double rad = r.sweep.r[static_cast<std::size_t>(j)];
    if (!(rad > 0.0)) continue;
    double best = 0.0;
    for (const UnitCircleArc& a : tiny) best = std::max(best, dilate_distance(g, a, [far](Complex) { return far; }, rad, 8));
    worst_gap = std::min(worst_gap, best);
  }
  os << "; F o Phi distance to budget+1 on the two directions >= " << fmt(worst_gap);
  return {ok, os.str()};
}

// ---- 6 ----

Outcome rotation_invariance() {
  BuildConfig cfg;
  cfg.rho.r = {0.0, 0.4, 0.6};
  cfg.eps = EpsilonSchedule::defaults(3);
  cfg.enumeration.targets = {ComplexPolynomial::constant(1.0), ComplexPolynomial({0.0, 0.5})};
  cfg.enumeration.arcs = {UnitCircleArc::make(0.75, 1.25)};
  cfg.enumeration.alpha = {0, 1};
  cfg.enumeration.beta = {0, 0};
  cfg.arc_density = 128;
  cfg.disc_density = 512;
  auto s = std::make_shared<const UniversalSeries>(build_membership_series(cfg, 2));
  if (s->failed) return {false, "membership build failed: " + s->failure};
  const ComplexPolynomial q({0.2, {0.0, 1.0}, 0.5});
  // absolute agreement is only meaningful for functions of moderate size on the scanned circles
  const std::vector<FunctionExpr> fs{FunctionExpr::polynomial(q), compose_left(LeftOp::exp(), FunctionExpr::polynomial(q)),
                                     FunctionExpr::series(s, 1)};
  const FunctionExpr full = FunctionExpr::series(s);
  const std::vector<UnitCircleArc> arcs{UnitCircleArc::make(0.5, 1.5), UnitCircleArc::make(2.0, 2.6)};
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_real_distribution<double> u(-0.5, 3.6);
  double worst = 0.0, full_rel = 0.0;
  auto compare = [&](const FunctionExpr& f, double theta, bool relative) {
    const Complex back = std::polar(1.0, -theta);
    const FunctionExpr rotated = compose_right(f, DiscAutomorphism::rotation(theta));
    const std::vector<ArcTarget> targets{polynomial_target(q), [](Complex z) { return std::conj(z); }};
    const std::vector<ArcTarget> moved_targets{[&](Complex z) { return q(z * back); }, [&](Complex z) { return std::conj(z * back); }};
    std::vector<UnitCircleArc> moved;
    for (const UnitCircleArc& a : arcs) moved.push_back(UnitCircleArc::make(a.alpha + theta, a.beta + theta));
    const DilateReport lhs = universality_scan(rotated, targets, arcs, cfg.rho, 2, 64);
    const DilateReport rhs = universality_scan(f, moved_targets, moved, cfg.rho, 2, 64);
    if (lhs.entries.size() != rhs.entries.size()) return false;
    for (std::size_t e = 0; e < lhs.entries.size(); ++e) {
      for (std::size_t k = 0; k < lhs.entries[e].errors.size(); ++k) {
        const double x = lhs.entries[e].errors[k], y = rhs.entries[e].errors[k];
        if (std::isnan(x) && std::isnan(y)) continue;
        const double d = std::abs(x - y);
        if (relative) full_rel = std::max(full_rel, d / std::max(1.0, std::abs(y)));
        else worst = std::max(worst, std::isnan(d) ? 1e300 : d);
      }
    }
    return true;
  };
  for (int i = 0; i < 100; ++i) {
    const double theta = u(rng);
    for (const FunctionExpr& f : fs) {
      if (!compare(f, theta, false)) return {false, "entry counts differ"};
    }
    if (!compare(full, theta, true)) return {false, "entry counts differ"};
  }
  return {worst <= 1e-11, "max per-entry difference over 100 rotations and 3 functions " + fmt(worst) +
                              "; full series (values up to ~1e17 off its arcs) relative difference " + fmt(full_rel)};
}

// ---- 7 ----

Outcome lifting() {
  std::ostringstream os;
  const LiftResult sq = lift_path(LiftFunction::square(), {1.0, 4.0}, 1.0, 1e-10);
  const LiftResult lg = lift_path(LiftFunction::exp(), {1.0, std::exp(1.0)}, 0.0, 1e-10);
  const double e_sq = sq.complete() ? std::abs(sq.endpoint() - 2.0) : 1e9;
  const double e_lg = lg.complete() ? std::abs(lg.endpoint() - 1.0) : 1e9;
  bool ok = e_sq <= 1e-8 && e_lg <= 1e-8;
  os << "sqrt endpoint error " << fmt(e_sq) << ", log endpoint error " << fmt(e_lg) << ";";
  const double eps = 0.05;
  struct Case {
    const char* name;
    LiftFunction g;
    UnitCircleArc arc;
    ArcTarget h;
  };
  const std::vector<Case> cases{
      {"exp, h=2", LiftFunction::exp(), UnitCircleArc::make(0.0, kPi / 2), [](Complex) { return Complex(2.0, 0.0); }},
      {"square, h=zeta", LiftFunction::square(), UnitCircleArc::make(0.1, kPi / 2), [](Complex z) { return z; }},
      {"square, h=0", LiftFunction::square(), UnitCircleArc::make(0.0, kPi / 2), [](Complex) { return Complex(0.0, 0.0); }},
  };
  for (const Case& c : cases) {
    try {
      const LiftableTarget lt = liftable_target(c.g, c.arc, c.h, eps, 4);
      ok = ok && lt.defect < eps;
      os << " " << c.name << ": defect " << fmt(lt.defect) << ";";
    } catch (const Error& e) {
      ok = false;
      os << " " << c.name << ": " << e.what() << ";";
    }
  }
  return {ok, os.str()};
}

// ---- 8 ----

Outcome origin_shift_separation() {
  std::mt19937_64 rng(kSeed + 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int false_pos = 0, missed = 0;
  double fp_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex w1 = std::polar(0.95 * std::sqrt(u(rng)), kTwoPi * u(rng));
    Complex w2 = std::polar(0.95 * std::sqrt(u(rng)), kTwoPi * u(rng));
    if (w2 == w1) w2 = -w1 + Complex(0.01, 0.0);
    const double r = 0.05 + 0.9 * u(rng);
    const OriginShiftDilation psi(w1);
    const auto c = circle_through_three(psi(r, 1.0), psi(r, std::polar(1.0, 2.0)), psi(r, std::polar(1.0, 4.0)));
    const EuclideanCircle& circ = std::get<EuclideanCircle>(c);
    if (is_origin_shift_circle(circ, w2, 1e-9)) ++false_pos;
    const auto own = is_origin_shift_circle(circ, w1, 1e-9);
    if (!own || std::abs(*own - r) > 1e-9) ++missed;

    const Complex a = std::polar(0.95 * std::sqrt(u(rng)), kTwoPi * u(rng));
    using LC = std::complex<long double>;
    const LC lw(w1.real(), w1.imag()), la(a.real(), a.imag());
    const LC direct = (lw - la) / (la - std::norm(la) * lw);
    const Complex ref(static_cast<double>(direct.real()), static_cast<double>(direct.imag()));
    fp_err = std::max(fp_err, std::abs(fixed_point_radius(w1, a) - ref) / std::max(1.0, std::abs(ref)));
  }
  return {false_pos == 0 && missed == 0 && fp_err <= 1e-12,
          "false positives " + std::to_string(false_pos) + "/1000, own-family misses " + std::to_string(missed) +
              ", fixed-point radius relative error " + fmt(fp_err)};
}

// ---- 9 ----

Outcome invariant_stage() {
  const ComplexPolynomial taylor({1.0, 1.0, 0.5, 1.0 / 6.0});
  InvariantStageOptions opts;
  opts.condition_samples = 50;
  opts.continuous_target = [](Complex z) { return std::exp(z); };
  const int m = 4;
  const InvariantStageResult r = find_invariant_stage({0.3, 0.1}, 0.4, 0.6, UnitCircleArc::make(0.2, 1.4), taylor, m, opts);
  const bool ok = r.condition_iii < 1.0 / m && r.fit.report.converged && r.chain.size() == 50 && r.chain_max < 3.0 / m;
  return {ok, "delta " + fmt(r.delta) + " after " + std::to_string(r.halvings) + " halvings, condition (iii) " +
                  fmt(r.condition_iii) + ", fit degree " + std::to_string(r.fit.report.degree) + " sup " +
                  fmt(r.fit.report.sup_error) + ", chain max " + fmt(r.chain_max) + " < 3/m"};
}

// ---- 10 ----

Outcome determinism() {
  const Payload m1 = membership_payload();
  const Payload m2 = membership_payload();
  const Payload c1 = counterexample_payload(run_counterexample().res);
  const Payload c2 = counterexample_payload(run_counterexample().res);
  const bool mem = m1.json == m2.json && m1.csv == m2.csv;
  const bool cex = c1.json == c2.json && c1.csv == c2.csv;
  return {mem && cex, std::string("membership payload ") + (mem ? "identical" : "differs") + " (" +
                          std::to_string(m1.json.size()) + " bytes), counterexample payload " +
                          (cex ? "identical" : "differs") + " (" + std::to_string(c1.json.size()) + " bytes)"};
}

struct Criterion {
  int id;
  const char* label;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "mobius_identity", mobius_identity},
      {2, "circle_geometry", circle_geometry},
      {3, "membership_build", membership_build},
      {4, "left_invariance", left_invariance},
      {5, "right_non_invariance", right_non_invariance},
      {6, "rotation_invariance", rotation_invariance},
      {7, "lifting", lifting},
      {8, "origin_shift_separation", origin_shift_separation},
      {9, "invariant_stage", invariant_stage},
      {10, "determinism", determinism},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  int failures = 0;
  for (const Criterion& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.label, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
