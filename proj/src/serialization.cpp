#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "abel/serialization.hpp"

namespace abel {

namespace {

double num(const Json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

Json complex_list(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (const Complex& z : v) a.push_back(complex_to_json(z));
  return a;
}

std::vector<Complex> complex_list_from(const Json& j) {
  std::vector<Complex> v;
  for (const Json& e : j) v.push_back(complex_from_json(e));
  return v;
}

StageCase stage_case_from_string(const std::string& s) {
  if (s == "P0") return StageCase::Zero;
  if (s == "I") return StageCase::I;
  if (s == "II") return StageCase::II;
  if (s == "III") return StageCase::III;
  throw Error(Errc::invalid_argument, "unknown stage case '" + s + "'");
}

Json descriptor_to_json(const ComponentDescriptor& d) {
  Json j = {{"kind", to_string(d.kind)}, {"label", d.label},           {"params", params_to_json(d.params)},
            {"density", d.density},      {"count", d.count},           {"regenerable", d.regenerable},
            {"weight", d.weight}};
  if (d.window) j["window"] = {d.window->first, d.window->second};
  return j;
}

ComponentDescriptor descriptor_from_json(const Json& j) {
  ComponentDescriptor d;
  d.kind = component_kind_from_string(j.at("kind").get<std::string>());
  d.label = j.at("label").get<std::string>();
  d.params = params_from_json(d.kind, j.at("params"));
  d.density = j.at("density").get<int>();
  d.count = j.at("count").get<std::size_t>();
  d.regenerable = j.at("regenerable").get<bool>();
  d.weight = j.at("weight").get<double>();
  if (j.contains("window")) d.window = std::make_pair(j["window"][0].get<double>(), j["window"][1].get<double>());
  return d;
}

Json pin_to_json(const PinRecord& p) {
  return {{"curve", p.curve},
          {"radius", p.radius},
          {"point", complex_to_json(p.point)},
          {"value", complex_to_json(p.value)},
          {"residual_at_pin", p.residual_at_pin},
          {"residual_at_lo", p.residual_at_lo},
          {"residual_at_hi", p.residual_at_hi},
          {"window", {p.window_lo, p.window_hi}}};
}

PinRecord pin_from_json(const Json& j) {
  PinRecord p;
  p.curve = j.at("curve").get<int>();
  p.radius = j.at("radius").get<double>();
  p.point = complex_from_json(j.at("point"));
  p.value = complex_from_json(j.at("value"));
  p.residual_at_pin = num(j.at("residual_at_pin"));
  p.residual_at_lo = num(j.at("residual_at_lo"));
  p.residual_at_hi = num(j.at("residual_at_hi"));
  p.window_lo = j.at("window")[0].get<double>();
  p.window_hi = j.at("window")[1].get<double>();
  return p;
}

Json stage_to_json(const Stage& st) {
  Json j = {{"n", st.n},
            {"case", to_string(st.case_info.kind)},
            {"case_detail", describe(st.case_info)},
            {"case_curve", st.case_info.curve},
            {"case_order", st.case_info.order},
            {"case_distance", {st.case_info.distance1, st.case_info.distance2}},
            {"alpha", st.alpha},
            {"beta", st.beta},
            {"r", st.r},
            {"eps", st.eps},
            {"tol", st.tol},
            {"fit", fit_report_to_json(st.fit)},
            {"basis", arnoldi_to_json(st.poly)},
            {"failed", st.failed},
            {"failure", st.failure},
            {"disc_sup", st.disc_sup},
            {"small_sup", st.small_sup},
            {"approx_sup", st.approx_sup}};
  j["coeffs"] = j["basis"]["coeffs"];
  Json comps = Json::array();
  for (const auto& d : st.compactum) comps.push_back(descriptor_to_json(d));
  j["compactum"] = comps;
  j["eta"] = st.eta ? Json(*st.eta) : Json(nullptr);
  Json pins = Json::array();
  for (const auto& p : st.pins) pins.push_back(pin_to_json(p));
  j["pins"] = pins;
  return j;
}

Stage stage_from_json(const Json& j) {
  Stage st;
  st.n = j.at("n").get<int>();
  st.case_info.kind = stage_case_from_string(j.at("case").get<std::string>());
  st.case_info.curve = j.value("case_curve", 0);
  st.case_info.order = j.value("case_order", 0);
  if (j.contains("case_distance")) {
    st.case_info.distance1 = num(j["case_distance"][0]);
    st.case_info.distance2 = num(j["case_distance"][1]);
  }
  st.alpha = j.at("alpha").get<int>();
  st.beta = j.at("beta").get<int>();
  st.r = j.at("r").get<double>();
  st.eps = j.at("eps").get<double>();
  st.tol = j.at("tol").get<double>();
  st.fit = fit_report_from_json(j.at("fit"));
  st.poly = arnoldi_from_json(j.at("basis"));
  st.failed = j.at("failed").get<bool>();
  st.failure = j.at("failure").get<std::string>();
  st.disc_sup = num(j.at("disc_sup"));
  st.small_sup = num(j.at("small_sup"));
  st.approx_sup = num(j.at("approx_sup"));
  for (const Json& d : j.at("compactum")) st.compactum.push_back(descriptor_from_json(d));
  if (!j.at("eta").is_null()) st.eta = j["eta"].get<double>();
  for (const Json& p : j.at("pins")) st.pins.push_back(pin_from_json(p));
  return st;
}

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) {
    if (std::isfinite(x)) a.push_back(x);
    else a.push_back(nullptr);
  }
  return a;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(Errc::invalid_argument, "complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json polynomial_to_json(const ComplexPolynomial& p) { return complex_list(p.coeffs()); }

ComplexPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::invalid_argument, "polynomial must be a non-empty coefficient list");
  return ComplexPolynomial(complex_list_from(j));
}

Json arnoldi_to_json(const ArnoldiPolynomial& p) {
  const auto& H = p.hessenberg();
  Json h = Json::array();
  for (Eigen::Index c = 0; c < H.cols(); ++c)
    for (Eigen::Index r = 0; r < H.rows(); ++r) h.push_back(complex_to_json(H(r, c)));
  Json c = Json::array();
  for (Eigen::Index k = 0; k < p.coeffs().size(); ++k) c.push_back(complex_to_json(p.coeffs()(k)));
  return {{"norm0", p.norm0()}, {"rows", H.rows()}, {"cols", H.cols()}, {"hessenberg", h}, {"coeffs", c}};
}

ArnoldiPolynomial arnoldi_from_json(const Json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const Json& h = j.at("hessenberg");
  if (static_cast<Eigen::Index>(h.size()) != rows * cols) throw Error(Errc::invalid_argument, "hessenberg size mismatch");
  Eigen::MatrixXcd H(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) H(r, c) = complex_from_json(h[static_cast<std::size_t>(c * rows + r)]);
  const Json& cj = j.at("coeffs");
  Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(cj.size()));
  for (std::size_t k = 0; k < cj.size(); ++k) coeffs(static_cast<Eigen::Index>(k)) = complex_from_json(cj[k]);
  return ArnoldiPolynomial(j.at("norm0").get<double>(), std::move(H), std::move(coeffs));
}

Json arc_to_json(const UnitCircleArc& a) { return Json::array({a.alpha, a.beta}); }

UnitCircleArc arc_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::invalid_argument, "arc must be [alpha, beta]");
  return UnitCircleArc::make(j[0].get<double>(), j[1].get<double>());
}

Json automorphism_to_json(const DiscAutomorphism& phi) { return {{"a", complex_to_json(phi.a())}, {"theta", phi.theta()}}; }

DiscAutomorphism automorphism_from_json(const Json& j) {
  return DiscAutomorphism(complex_from_json(j.at("a")), j.at("theta").get<double>());
}

Json params_to_json(const ComponentParams& p) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ArcParams>) {
          return {{"arc", arc_to_json(v.arc)}, {"r", v.r}, {"w", complex_to_json(v.w)}};
        } else if constexpr (std::is_same_v<T, DiscParams>) {
          return {{"r", v.r}, {"w", complex_to_json(v.w)}};
        } else if constexpr (std::is_same_v<T, CurveParams>) {
          return {{"phi", automorphism_to_json(v.phi)}, {"zeta", complex_to_json(v.zeta)}, {"r_from", v.r_from}, {"r_to", v.r_to}};
        } else {
          return {{"w_center", complex_to_json(v.w_center)}, {"delta", v.delta},         {"r_k", v.r_k},
                  {"arc", arc_to_json(v.arc)},               {"param_density", v.param_density}};
        }
      },
      p);
}

ComponentParams params_from_json(ComponentKind kind, const Json& j) {
  switch (kind) {
    case ComponentKind::DilatedArc:
      return ArcParams{arc_from_json(j.at("arc")), j.at("r").get<double>(), complex_from_json(j.at("w"))};
    case ComponentKind::DiscBoundary: return DiscParams{j.at("r").get<double>(), complex_from_json(j.at("w"))};
    case ComponentKind::RadialCurve:
      return CurveParams{automorphism_from_json(j.at("phi")), complex_from_json(j.at("zeta")), j.at("r_from").get<double>(),
                         j.at("r_to").get<double>()};
    case ComponentKind::ParamUnion:
      return UnionParams{complex_from_json(j.at("w_center")), j.at("delta").get<double>(), j.at("r_k").get<double>(),
                         arc_from_json(j.at("arc")), j.at("param_density").get<int>()};
  }
  throw Error(Errc::invalid_argument, "unknown component kind");
}

Json component_to_json(const SampledComponent& c) {
  Json j = {{"kind", to_string(c.kind)}, {"label", c.label},           {"params", params_to_json(c.params)},
            {"density", c.density},      {"regenerable", c.regenerable}, {"weight", c.weight},
            {"points", complex_list(c.points)}, {"parameter", c.parameter}};
  j["target"] = c.target ? complex_list(*c.target) : Json(nullptr);
  return j;
}

SampledComponent component_from_json(const Json& j) {
  SampledComponent c;
  c.kind = component_kind_from_string(j.at("kind").get<std::string>());
  c.label = j.at("label").get<std::string>();
  c.params = params_from_json(c.kind, j.at("params"));
  c.density = j.at("density").get<int>();
  c.regenerable = j.at("regenerable").get<bool>();
  c.weight = j.at("weight").get<double>();
  c.points = complex_list_from(j.at("points"));
  c.parameter = j.at("parameter").get<std::vector<double>>();
  if (!j.at("target").is_null()) c.set_target(complex_list_from(j["target"]));
  c.validate();
  return c;
}

Json compactum_to_json(const CompoundCompactum& set) {
  Json comps = Json::array();
  for (const auto& c : set.components) comps.push_back(component_to_json(c));
  return {{"components", comps}, {"separation", std::isfinite(set.separation) ? Json(set.separation) : Json(nullptr)}};
}

CompoundCompactum compactum_from_json(const Json& j) {
  std::vector<SampledComponent> comps;
  for (const Json& c : j.at("components")) comps.push_back(component_from_json(c));
  return make_union(std::move(comps));
}

Json fit_report_to_json(const FitReport& r) {
  Json ladder = Json::array();
  for (const auto& [d, e] : r.ladder) ladder.push_back(Json::array({d, e}));
  return {{"degree", r.degree},
          {"sup_error", r.sup_error},
          {"rms_error", r.rms_error},
          {"basis_condition", r.basis_condition},
          {"escalations", r.escalations},
          {"converged", r.converged},
          {"tol", r.tol},
          {"samples", r.samples},
          {"component_sup", doubles(r.component_sup)},
          {"component_weights", doubles(r.component_weights)},
          {"ladder", ladder},
          {"monomial_sup_error", std::isfinite(r.monomial_sup_error) ? Json(r.monomial_sup_error) : Json(nullptr)}};
}

FitReport fit_report_from_json(const Json& j) {
  FitReport r;
  r.degree = j.at("degree").get<int>();
  r.sup_error = num(j.at("sup_error"));
  r.rms_error = num(j.at("rms_error"));
  r.basis_condition = num(j.at("basis_condition"));
  r.escalations = j.at("escalations").get<int>();
  r.converged = j.at("converged").get<bool>();
  r.tol = num(j.at("tol"));
  r.samples = j.at("samples").get<std::size_t>();
  for (const Json& x : j.at("component_sup")) r.component_sup.push_back(num(x));
  for (const Json& x : j.at("component_weights")) r.component_weights.push_back(num(x));
  for (const Json& x : j.at("ladder")) r.ladder.emplace_back(x[0].get<int>(), num(x[1]));
  r.monomial_sup_error = num(j.at("monomial_sup_error"));
  return r;
}

Json config_to_json(const BuildConfig& cfg) {
  Json targets = Json::array();
  for (const auto& p : cfg.enumeration.targets) targets.push_back(polynomial_to_json(p));
  Json arcs = Json::array();
  for (const auto& a : cfg.enumeration.arcs) arcs.push_back(arc_to_json(a));
  return {{"rho", cfg.rho.r},
          {"eps", cfg.eps.eps},
          {"targets", targets},
          {"arcs", arcs},
          {"alpha", cfg.enumeration.alpha},
          {"beta", cfg.enumeration.beta},
          {"arc_density", cfg.arc_density},
          {"disc_density", cfg.disc_density},
          {"curve_density", cfg.curve_density},
          {"window_density", cfg.window_density},
          {"max_degree", cfg.max_degree},
          {"tol_factor", cfg.tol_factor},
          {"curve_kappa", cfg.curve_kappa},
          {"bridge", to_string(cfg.bridge)},
          {"fit",
           {{"reweight_rounds", cfg.fit.reweight_rounds},
            {"min_weight_ratio", cfg.fit.min_weight_ratio},
            {"report_monomial", cfg.fit.report_monomial}}}};
}

BuildConfig config_from_json(const Json& j) {
  BuildConfig cfg;
  cfg.rho.r = j.at("rho").get<std::vector<double>>();
  cfg.eps.eps = j.at("eps").get<std::vector<double>>();
  for (const Json& t : j.at("targets")) cfg.enumeration.targets.push_back(polynomial_from_json(t));
  for (const Json& a : j.at("arcs")) cfg.enumeration.arcs.push_back(arc_from_json(a));
  cfg.enumeration.alpha = j.value("alpha", std::vector<int>{});
  cfg.enumeration.beta = j.value("beta", std::vector<int>{});
  cfg.arc_density = j.value("arc_density", cfg.arc_density);
  cfg.disc_density = j.value("disc_density", cfg.disc_density);
  cfg.curve_density = j.value("curve_density", cfg.curve_density);
  cfg.window_density = j.value("window_density", cfg.window_density);
  cfg.max_degree = j.value("max_degree", cfg.max_degree);
  cfg.tol_factor = j.value("tol_factor", cfg.tol_factor);
  cfg.curve_kappa = j.value("curve_kappa", cfg.curve_kappa);
  if (j.contains("bridge")) cfg.bridge = bridge_shape_from_string(j["bridge"].get<std::string>());
  if (j.contains("fit")) {
    const Json& f = j["fit"];
    cfg.fit.reweight_rounds = f.value("reweight_rounds", cfg.fit.reweight_rounds);
    cfg.fit.min_weight_ratio = f.value("min_weight_ratio", cfg.fit.min_weight_ratio);
    cfg.fit.report_monomial = f.value("report_monomial", cfg.fit.report_monomial);
  }
  return cfg;
}

Json series_to_json(const UniversalSeries& s) {
  const Json cfg = config_to_json(s.config);
  Json stages = Json::array();
  for (const auto& st : s.stages) stages.push_back(stage_to_json(st));
  return {{"kind", s.kind},
          {"header", s.header},
          {"w", complex_to_json(s.w)},
          {"rho", s.rho.r},
          {"eps", s.eps.eps},
          {"targets", cfg["targets"]},
          {"arcs", cfg["arcs"]},
          {"alpha", s.enumeration.alpha},
          {"beta", s.enumeration.beta},
          {"config", cfg},
          {"failed", s.failed},
          {"failed_stage", s.failed_stage},
          {"failure", s.failure},
          {"stages", stages}};
}

UniversalSeries series_from_json(const Json& j) {
  UniversalSeries s;
  s.kind = j.at("kind").get<std::string>();
  s.header = j.value("header", std::string());
  s.w = complex_from_json(j.at("w"));
  s.rho.r = j.at("rho").get<std::vector<double>>();
  s.eps.eps = j.at("eps").get<std::vector<double>>();
  s.config = config_from_json(j.at("config"));
  s.enumeration = s.config.enumeration;
  s.enumeration.alpha = j.at("alpha").get<std::vector<int>>();
  s.enumeration.beta = j.at("beta").get<std::vector<int>>();
  s.failed = j.at("failed").get<bool>();
  s.failed_stage = j.at("failed_stage").get<int>();
  s.failure = j.at("failure").get<std::string>();
  for (const Json& st : j.at("stages")) s.stages.push_back(stage_from_json(st));
  if (s.stages.empty()) throw Error(Errc::invalid_argument, "series has no stage 0");
  return s;
}

Json witness_to_json(const CounterexampleWitness& w) {
  return {{"phi", automorphism_to_json(w.phi)},
          {"zeta1", complex_to_json(w.zeta1)},
          {"zeta2", complex_to_json(w.zeta2)},
          {"r_minus1", w.r_minus1},
          {"level_floor", w.level_floor},
          {"dropped", w.dropped},
          {"rho", w.rho.r},
          {"R1", w.R1},
          {"R2", w.R2},
          {"s1", w.s1},
          {"s2", w.s2},
          {"eta", doubles(w.eta)}};
}

Json dilate_report_to_json(const DilateReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"target_id", e.target_id},
                       {"arc_id", e.arc_id},
                       {"best_n", e.best_n},
                       {"best_error", e.best_error},
                       {"errors", doubles(e.errors)}});
  }
  return {{"density", r.density}, {"note", r.note}, {"entries", entries}};
}

Json lift_result_to_json(const LiftResult& r) {
  Json j = {{"status", to_string(r.status)},
            {"fail_index", r.fail_index},
            {"message", r.message},
            {"max_defect", r.max_defect},
            {"halvings", r.halvings},
            {"samples", r.h0.size()},
            {"t", r.t},
            {"h0", complex_list(r.h0)},
            {"path", complex_list(r.path)}};
  j["endpoint"] = r.h0.empty() ? Json(nullptr) : complex_to_json(r.h0.back());
  return j;
}

Json liftable_to_json(const LiftableTarget& r) {
  return {{"n_nodes", r.n_nodes},
          {"defect", r.defect},
          {"node_index", r.node_index},
          {"node_w", complex_list(r.node_w)},
          {"t", r.t},
          {"h0", complex_list(r.h0)},
          {"target", complex_list(r.target)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(Errc::invalid_argument, "bad JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
  out << text;
}

}  // namespace abel
