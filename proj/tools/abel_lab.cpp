// Experiment driver: geometry checks, series builds, probes and lifts.
// Exit codes: 0 ok, 1 config error, 2 invariant violation, 3 stage failure, 4 certificate failure.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "abel/csv.hpp"
#include "abel/serialization.hpp"

using namespace abel;

namespace {

enum Exit { kOk = 0, kConfig = 1, kInvariant = 2, kStage = 3, kCertificate = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> split_numbers(const std::string& s, char sep) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + tok + "'");
    }
  }
  return out;
}

Complex parse_complex(const std::string& s) {
  const auto v = split_numbers(s, ',');
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw ConfigError("complex value must be 're' or 're,im': '" + s + "'");
}

std::vector<Complex> parse_path(const std::string& s) {
  std::vector<Complex> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) out.push_back(parse_complex(tok));
  if (out.empty()) throw ConfigError("empty path");
  return out;
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Output {
  std::string prefix;
  std::vector<std::string> argv;

  void json(const Json& payload) const { write_text_file(prefix + ".json", dump(payload)); }
  void csv(const CsvTable& t, const std::string& suffix = "") const { write_text_file(prefix + suffix + ".csv", t.str()); }
  void meta(double seconds) const {
    write_text_file(prefix + ".meta.json", dump(Json{{"timestamp", timestamp()}, {"seconds", seconds}, {"argv", argv}}));
  }
};

// ---- geometry ----

struct GeometryArgs {
  std::string a = "0.5";
  int samples = 10000;
};

int cmd_geometry(const GeometryArgs& g, std::uint64_t seed, const Output& out) {
  const Complex a = parse_complex(g.a);
  if (!(std::abs(a) < 1.0)) throw ConfigError("automorphism needs |a| < 1");
  if (g.samples < 1) throw ConfigError("samples must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const DiscAutomorphism phi(a), rot(a, 0.7);

  double identity = 0.0, involution = 0.0, inverse = 0.0;
  for (int i = 0; i < g.samples; ++i) {
    const Complex z = std::polar(0.999 * std::sqrt(unit(rng)), kTwoPi * unit(rng));
    identity = std::max(identity, modulus_identity_residual(a, z));
    involution = std::max(involution, std::abs(phi(phi(z)) - z));
    inverse = std::max(inverse, std::abs(rot.inverse()(rot(z)) - z));
  }

  double circle = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double R = 0.045 * k;
    std::vector<Complex> img;
    for (int j = 0; j < 720; ++j) img.push_back(phi(std::polar(R, kTwoPi * j / 720)));
    const EuclideanCircle fit = fit_circle(img.data(), img.size());
    const EuclideanCircle c = image_circle(a, R);
    circle = std::max({circle, std::abs(fit.center - c.center), std::abs(fit.radius - c.radius)});
  }

  int monotone_violations = 0;
  for (int k = 0; k < 16; ++k) {
    const Complex zeta = std::polar(1.0, kTwoPi * k / 16);
    const double r0 = radial_monotone_threshold(phi, zeta);
    double prev = std::abs(phi(r0 * zeta));
    for (int j = 1; j < 200; ++j) {
      const double r = r0 + (0.999 - r0) * j / 199;
      const double m = std::abs(phi(r * zeta));
      if (m < prev - 1e-12) ++monotone_violations;
      prev = m;
    }
  }

  const bool ok = identity <= 1e-11 && involution <= 1e-11 && inverse <= 1e-11 && circle <= 1e-9 && monotone_violations == 0;
  out.json({{"config", {{"command", "geometry"}, {"a", complex_to_json(a)}, {"samples", g.samples}, {"seed", seed}}},
            {"identity_residual", identity},
            {"involution_residual", involution},
            {"inverse_residual", inverse},
            {"circle_fit_residual", circle},
            {"monotone_violations", monotone_violations},
            {"ok", ok}});
  std::cout << "identity " << format_double(identity) << "\ninvolution " << format_double(involution) << "\ninverse "
            << format_double(inverse) << "\ncircle " << format_double(circle) << "\nmonotone_violations " << monotone_violations
            << "\n";
  return ok ? kOk : kInvariant;
}

// ---- build ----

struct BuildArgs {
  std::string config;
  std::string targets;
  std::string arcs;
  int stages = 8;
  std::string a = "0.5";
  double zeta1 = 0.0;
  double zeta2 = kPi / 2;
  std::string w = "0.3";
  int max_degree = -1;
  int arc_density = -1;
  int disc_density = -1;
  std::string bridge;
};

BuildConfig resolve_config(const BuildArgs& b, int n_radii, bool counterexample) {
  BuildConfig cfg;
  if (!b.config.empty()) cfg = config_from_json(load_json_file(b.config));
  if (!b.targets.empty()) {
    cfg.enumeration.targets.clear();
    for (const Json& t : load_json_file(b.targets)) cfg.enumeration.targets.push_back(polynomial_from_json(t));
    cfg.enumeration.alpha.clear();
  }
  if (!b.arcs.empty()) {
    cfg.enumeration.arcs.clear();
    for (const Json& a : load_json_file(b.arcs)) cfg.enumeration.arcs.push_back(arc_from_json(a));
    cfg.enumeration.beta.clear();
  }
  if (cfg.enumeration.targets.empty()) {
    cfg.enumeration.targets = counterexample ? std::vector<ComplexPolynomial>{ComplexPolynomial::constant(10.0)}
                                             : std::vector<ComplexPolynomial>{ComplexPolynomial::constant(2.0),
                                                                              ComplexPolynomial::constant(Complex(0.0, -3.0))};
  }
  if (cfg.enumeration.arcs.empty()) {
    cfg.enumeration.arcs = counterexample ? std::vector<UnitCircleArc>{UnitCircleArc::make(kPi / 2 - 0.003, kPi / 2 + 0.003)}
                                          : std::vector<UnitCircleArc>{UnitCircleArc::make(0.0, kPi / 2),
                                                                       UnitCircleArc::make(kPi, 1.5 * kPi)};
  }
  const int nt = static_cast<int>(cfg.enumeration.targets.size()), na = static_cast<int>(cfg.enumeration.arcs.size());
  if (cfg.enumeration.alpha.size() < static_cast<std::size_t>(b.stages) ||
      cfg.enumeration.beta.size() < static_cast<std::size_t>(b.stages)) {
    // cyclic pairs, repeated; short runs take a prefix of the cycle
    auto [al, be] = schedule_pairs(nt, na, std::max(b.stages, nt * na));
    al.resize(static_cast<std::size_t>(b.stages));
    be.resize(static_cast<std::size_t>(b.stages));
    cfg.enumeration.alpha = al;
    cfg.enumeration.beta = be;
  }
  if (cfg.rho.r.empty()) cfg.rho = RadiiSchedule::defaults(n_radii);
  if (cfg.eps.eps.empty()) cfg.eps = EpsilonSchedule::defaults(b.stages + 1);
  if (b.max_degree > 0) cfg.max_degree = b.max_degree;
  if (b.arc_density > 0) cfg.arc_density = b.arc_density;
  if (b.disc_density > 0) cfg.disc_density = b.disc_density;
  if (!b.bridge.empty()) cfg.bridge = bridge_shape_from_string(b.bridge);
  cfg.rho.validate();
  cfg.eps.validate();
  cfg.enumeration.validate(b.stages);
  return cfg;
}

int cmd_build(const std::string& kind, const BuildArgs& b, std::uint64_t seed, const Output& out) {
  if (b.stages < 0) throw ConfigError("stages must be non-negative");
  const bool cex = kind == "counterexample";
  Json cfg_json;
  UniversalSeries series;
  Json extra = Json::object();
  int code = kOk;

  if (kind == "membership" || kind == "shifted") {
    const BuildConfig cfg = resolve_config(b, b.stages + 1, false);
    cfg_json = config_to_json(cfg);
    if (kind == "shifted") {
      const Complex w = parse_complex(b.w);
      if (!(std::abs(w) < 1.0)) throw ConfigError("shift origin needs |w| < 1");
      cfg_json["w"] = complex_to_json(w);
      series = build_shifted_membership_series(w, cfg, b.stages);
    } else {
      series = build_membership_series(cfg, b.stages);
    }
    Json tel = Json::array();
    for (const auto& c : telescoping_check(series, cfg.arc_density)) {
      tel.push_back({{"n", c.n}, {"error", c.error}, {"bound", c.bound}, {"ok", c.ok}});
      if (!c.ok && code == kOk) code = kInvariant;
    }
    extra["telescoping"] = tel;
  } else {
    const Complex a = parse_complex(b.a);
    if (!(std::abs(a) < 1.0)) throw ConfigError("automorphism needs |a| < 1");
    BuildConfig cfg = resolve_config(b, b.stages + 12, true);
    const DiscAutomorphism phi(a);
    const Complex z1 = std::polar(1.0, b.zeta1), z2 = std::polar(1.0, b.zeta2);
    const CounterexampleWitness w = compute_witness(phi, z1, z2, cfg.rho, b.stages);
    cfg_json = config_to_json(cfg);
    cfg_json["a"] = complex_to_json(a);
    cfg_json["zeta1"] = b.zeta1;
    cfg_json["zeta2"] = b.zeta2;
    const CounterexampleResult res = build_counterexample_series(cfg, w, b.stages);
    series = res.series;
    extra["witness"] = witness_to_json(res.witness);
    extra["budget"] = res.budget;
    extra["sweep_max"] = res.sweep.max_value;
    extra["sweep_ok"] = res.sweep_ok;
    if (!res.sweep_ok) code = kInvariant;
    CsvTable wt({"n", "r_n", "R1", "R2", "s1", "s2"});
    for (int n = 0; n <= b.stages; ++n) {
      const auto k = static_cast<std::size_t>(n);
      wt.row().cell(n).cell(res.witness.rho[k]).cell(res.witness.R1[k]).cell(res.witness.R2[k]).cell(res.witness.s1[k]).cell(res.witness.s2[k]);
    }
    out.csv(wt, ".witness");
  }
  cfg_json["command"] = "build " + kind;
  cfg_json["stages"] = b.stages;
  cfg_json["seed"] = seed;

  Json payload = series_to_json(series);
  payload["resolved_config"] = cfg_json;
  for (auto it = extra.begin(); it != extra.end(); ++it) payload[it.key()] = it.value();
  out.json(payload);
  out.csv(stage_table(series));
  std::cout << stage_table(series).str();
  if (cex) std::cout << "budget " << format_double(extra["budget"].get<double>()) << " sweep_max " << format_double(extra["sweep_max"].get<double>()) << "\n";
  if (series.failed) {
    std::cerr << "stage failure: " << series.failure << "\n";
    return kStage;
  }
  return code;
}

// ---- probe ----

struct ProbeArgs {
  std::string series;
  bool scan = false;
  bool sweep = false;
  bool exp = false;
  bool reciprocal = false;
  std::string poly;
  std::string pre;
  int density = 256;
};

int cmd_probe(const ProbeArgs& p, std::uint64_t seed, const Output& out) {
  if (p.series.empty()) throw ConfigError("--series is required");
  const Json sj = load_json_file(p.series);
  auto series = std::make_shared<const UniversalSeries>(series_from_json(sj));
  const int N = series->built_stages();
  if (static_cast<int>(series->rho.size()) < N + 1) throw ConfigError("series radii shorter than its stage count");

  const std::vector<UnitCircleArc>& arcs = series->enumeration.arcs;
  FunctionExpr f = FunctionExpr::series(series);
  bool composed = false;
  if (!p.pre.empty()) {
    const auto v = split_numbers(p.pre, ',');
    if (v.size() != 3) throw ConfigError("--pre-automorphism expects re,im,theta");
    const Complex a(v[0], v[1]);
    if (!(std::abs(a) < 1.0)) throw ConfigError("automorphism needs |a| < 1");
    f = compose_right(f, DiscAutomorphism(a, v[2]));
    composed = true;
  }
  if (!p.poly.empty()) {
    f = compose_left(LeftOp::polynomial(polynomial_from_json(Json::parse(p.poly))), f);
    composed = true;
  }
  if (p.exp) {
    f = compose_left(LeftOp::exp(), f);
    composed = true;
  }
  if (p.reciprocal) {
    f = compose_left(LeftOp::reciprocal(), f, scan_grid(arcs, series->rho, N, p.density));
    composed = true;
  }

  Json payload = {{"config",
                   {{"command", "probe"},
                    {"series", p.series},
                    {"scan", p.scan},
                    {"sweep", p.sweep},
                    {"exp", p.exp},
                    {"reciprocal", p.reciprocal},
                    {"poly", p.poly},
                    {"pre_automorphism", p.pre},
                    {"density", p.density},
                    {"seed", seed}}},
                  {"expression", f.describe()}};
  if (auto c = f.certificate()) payload["certificate"] = {{"min_modulus", c->min_modulus}, {"grid_size", c->grid_size}};
  int code = kOk;

  if (p.scan && N >= 0) {
    std::vector<ArcTarget> targets;
    for (const auto& t : series->enumeration.targets) {
      if (p.exp && !p.reciprocal && p.poly.empty() && p.pre.empty()) {
        targets.push_back([t](Complex z) { return std::exp(t(z)); });
      } else {
        targets.push_back(polynomial_target(t));
      }
    }
    const DilateReport rep = universality_scan(f, targets, arcs, series->rho, N, p.density);
    out.csv(scan_table(rep));
    payload["scan"] = dilate_report_to_json(rep);
    if (!composed) {
      Json tel = Json::array();
      for (int n = 1; n <= N; ++n) {
        const Stage& st = series->stages[static_cast<std::size_t>(n)];
        const double err = rep.entries[static_cast<std::size_t>(st.beta) * targets.size() + static_cast<std::size_t>(st.alpha)]
                               .errors[static_cast<std::size_t>(n)];
        const double bound = series->eps.sum(n, N);
        tel.push_back({{"n", n}, {"error", err}, {"bound", bound}, {"ok", err <= bound}});
        if (!(err <= bound)) code = kInvariant;
      }
      payload["telescoping"] = tel;
    }
    for (const auto& e : rep.entries) {
      std::cout << "target " << e.target_id << " arc " << e.arc_id << " best_n " << e.best_n << " best_error "
                << format_double(e.best_error) << "\n";
    }
  }
  if (p.sweep) {
    if (!sj.contains("witness")) throw ConfigError("--sweep needs a counterexample series");
    const Json& wj = sj["witness"];
    const CounterexampleWitness w = compute_witness(automorphism_from_json(wj.at("phi")), complex_from_json(wj.at("zeta1")),
                                                    complex_from_json(wj.at("zeta2")), RadiiSchedule{wj.at("rho").get<std::vector<double>>()}, N);
    const SweepResult sw = counterexample_sweep(*series, w, 200);
    const double budget = sj.at("budget").get<double>();
    CsvTable t({"r", "min_modulus"});
    for (std::size_t i = 0; i < sw.r.size(); ++i) t.row().cell(sw.r[i]).cell(sw.value[i]);
    out.csv(t, ".sweep");
    payload["sweep"] = {{"max", sw.max_value}, {"budget", budget}, {"ok", sw.max_value <= budget}};
    std::cout << "sweep_max " << format_double(sw.max_value) << " budget " << format_double(budget) << "\n";
    if (!(sw.max_value <= budget)) code = kInvariant;
  }
  out.json(payload);
  return code;
}

// ---- lift ----

struct LiftArgs {
  std::string g = "square";
  std::string path;
  std::string start = "1,0";
  double tol = 1e-10;
  std::string arc;
  std::string target;
  double eps = 0.1;
  int nodes = 4;
  int density = 256;
};

LiftFunction parse_g(const std::string& g) {
  if (g == "exp") return LiftFunction::exp();
  if (g == "square") return LiftFunction::square();
  if (g.rfind("poly:", 0) == 0) return LiftFunction::polynomial(polynomial_from_json(Json::parse(g.substr(5))));
  throw ConfigError("unknown --g '" + g + "' (exp, square, poly:[[re,im],...])");
}

int cmd_lift(const LiftArgs& l, std::uint64_t seed, const Output& out) {
  const LiftFunction g = parse_g(l.g);
  Json cfg = {{"command", "lift"}, {"g", l.g}, {"tol", l.tol}, {"seed", seed}};
  if (!l.arc.empty()) {
    const auto ab = split_numbers(l.arc, ',');
    if (ab.size() != 2) throw ConfigError("--arc expects alpha,beta");
    if (l.target.empty()) throw ConfigError("--target is required with --arc");
    const ComplexPolynomial h = polynomial_from_json(Json::parse(l.target));
    LiftableOptions opts;
    opts.density = l.density;
    opts.tol = l.tol;
    opts.seed = seed;
    const LiftableTarget r = liftable_target(g, UnitCircleArc::make(ab[0], ab[1]), polynomial_target(h), l.eps, l.nodes, opts);
    cfg.update({{"arc", ab}, {"target", l.target}, {"eps", l.eps}, {"nodes", l.nodes}, {"density", l.density}});
    Json payload = liftable_to_json(r);
    payload["config"] = cfg;
    out.json(payload);
    std::cout << "defect " << format_double(r.defect) << " nodes " << r.n_nodes << "\n";
    return kOk;
  }
  if (l.path.empty()) throw ConfigError("--path or --arc is required");
  const std::vector<Complex> path = parse_path(l.path);
  const Complex start = parse_complex(l.start);
  const LiftResult r = lift_path(g, path, start, l.tol);
  cfg.update({{"path", l.path}, {"start", complex_to_json(start)}});
  Json payload = lift_result_to_json(r);
  payload["config"] = cfg;
  out.json(payload);
  std::cout << "status " << to_string(r.status) << " endpoint " << format_double(r.endpoint().real()) << ","
            << format_double(r.endpoint().imag()) << " max_defect " << format_double(r.max_defect) << "\n";
  switch (r.status) {
    case LiftStatus::Complete: return kOk;
    case LiftStatus::CriticalPointHit: return kInvariant;
    case LiftStatus::Diverged: return kStage;
  }
  return kInvariant;
}

int code_for(Errc e) {
  switch (e) {
    case Errc::certificate_failure: return kCertificate;
    case Errc::stage_failure:
    case Errc::tolerance_unreachable:
    case Errc::eta_not_found: return kStage;
    case Errc::lift_failure:
    case Errc::node_search_failure:
    case Errc::criterion_violated:
    case Errc::interleaving_violated:
    case Errc::condition_iii_violated: return kInvariant;
    default: return kConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abel_lab: disc automorphism checks, universal series builds, probes and inverse lifts"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::string prefix;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--out", prefix, "output prefix (default: command name)");

  GeometryArgs geo;
  auto* g = app.add_subcommand("geometry", "identity, circle and threshold suites");
  g->add_option("--a", geo.a, "automorphism parameter re[,im]")->capture_default_str();
  g->add_option("--samples", geo.samples, "random points")->capture_default_str();

  BuildArgs ba;
  auto* b = app.add_subcommand("build", "build a staged series");
  b->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--config", ba.config, "BuildConfig JSON");
    c->add_option("--targets", ba.targets, "JSON list of coefficient lists");
    c->add_option("--arcs", ba.arcs, "JSON list of [alpha, beta]");
    c->add_option("--stages", ba.stages, "stage count")->capture_default_str();
    c->add_option("--max-degree", ba.max_degree, "degree cap");
    c->add_option("--arc-density", ba.arc_density, "samples per arc");
    c->add_option("--disc-density", ba.disc_density, "samples per disc constraint");
  };
  auto* bm = b->add_subcommand("membership", "radial dilates");
  add_common(bm);
  auto* bs = b->add_subcommand("shifted", "dilates about a shifted origin");
  add_common(bs);
  bs->add_option("--w", ba.w, "dilation centre re[,im]")->capture_default_str();
  auto* bc = b->add_subcommand("counterexample", "series defeated by a non-rotation automorphism");
  add_common(bc);
  bc->add_option("--a", ba.a, "automorphism parameter re[,im]")->capture_default_str();
  bc->add_option("--zeta1", ba.zeta1, "angle of the first direction")->capture_default_str();
  bc->add_option("--zeta2", ba.zeta2, "angle of the second direction")->capture_default_str();
  bc->add_option("--bridge", ba.bridge, "linear, smooth or free");

  ProbeArgs pa;
  auto* p = app.add_subcommand("probe", "scan a built series");
  p->add_option("--series", pa.series, "series JSON");
  p->add_flag("--scan", pa.scan, "dilate scan over the series schedule");
  p->add_flag("--sweep", pa.sweep, "witness sweep of a counterexample series");
  p->add_flag("--exp", pa.exp, "compose with exp on the left");
  p->add_flag("--reciprocal", pa.reciprocal, "compose with 1/t on the left");
  p->add_option("--poly", pa.poly, "compose with a polynomial on the left, JSON coefficients");
  p->add_option("--pre-automorphism", pa.pre, "compose with an automorphism on the right: re,im,theta");
  p->add_option("--density", pa.density, "samples per arc")->capture_default_str();

  LiftArgs la;
  auto* l = app.add_subcommand("lift", "continue a branch of g^{-1} along a path");
  l->add_option("--g", la.g, "exp, square or poly:[[re,im],...]")->capture_default_str();
  l->add_option("--path", la.path, "polyline x,y:x,y:...");
  l->add_option("--start", la.start, "lift start re,im")->capture_default_str();
  l->add_option("--tol", la.tol, "continuation tolerance")->capture_default_str();
  l->add_option("--arc", la.arc, "liftable target mode: alpha,beta");
  l->add_option("--target", la.target, "target polynomial on the arc, JSON coefficients");
  l->add_option("--eps", la.eps, "target defect")->capture_default_str();
  l->add_option("--nodes", la.nodes, "initial node count")->capture_default_str();
  l->add_option("--density", la.density, "arc samples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  Output out;
  out.argv.assign(argv, argv + argc);
  const auto t0 = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (g->parsed()) {
      out.prefix = prefix.empty() ? "geometry" : prefix;
      code = cmd_geometry(geo, seed, out);
    } else if (b->parsed()) {
      const std::string kind = bm->parsed() ? "membership" : bs->parsed() ? "shifted" : "counterexample";
      out.prefix = prefix.empty() ? "series" : prefix;
      code = cmd_build(kind, ba, seed, out);
    } else if (p->parsed()) {
      out.prefix = prefix.empty() ? "probe" : prefix;
      code = cmd_probe(pa, seed, out);
    } else {
      out.prefix = prefix.empty() ? "lift" : prefix;
      code = cmd_lift(la, seed, out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return code_for(e.code());
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }
  out.meta(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return code;
}
