#include "abel/compacta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace abel {

const char* to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::DilatedArc: return "DilatedArc";
    case ComponentKind::DiscBoundary: return "DiscBoundary";
    case ComponentKind::RadialCurve: return "RadialCurve";
    case ComponentKind::ParamUnion: return "ParamUnion";
  }
  return "?";
}

ComponentKind component_kind_from_string(const std::string& s) {
  if (s == "DilatedArc") return ComponentKind::DilatedArc;
  if (s == "DiscBoundary") return ComponentKind::DiscBoundary;
  if (s == "RadialCurve") return ComponentKind::RadialCurve;
  if (s == "ParamUnion") return ComponentKind::ParamUnion;
  throw Error(Errc::invalid_argument, "unknown component kind '" + s + "'");
}

void SampledComponent::set_target(std::vector<Complex> values) {
  if (values.size() != points.size()) throw Error(Errc::invalid_argument, "target length differs from point count");
  target = std::move(values);
}

void SampledComponent::set_target(const Evaluator& f) {
  std::vector<Complex> values(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) values[i] = f(points[i]);
  target = std::move(values);
}

void SampledComponent::validate() const {
  if (points.empty()) throw Error(Errc::invalid_argument, "component '" + label + "' has no points");
  if (!(weight > 0.0)) throw Error(Errc::invalid_argument, "component weight must be positive");
  for (const Complex& p : points) {
    if (!is_finite(p) || std::abs(p) >= 1.0) throw Error(Errc::domain, "component '" + label + "' has a point outside the open disc");
  }
  if (target && target->size() != points.size()) throw Error(Errc::invalid_argument, "target length differs from point count");
}

double SampledComponent::max_modulus() const {
  double m = 0.0;
  for (const Complex& p : points) m = std::max(m, std::abs(p));
  return m;
}

double CompoundCompactum::separation_between(std::size_t i, std::size_t j) const {
  return min_distance(components.at(i).points, components.at(j).points);
}

std::size_t CompoundCompactum::total_samples() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.size();
  return n;
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  if (n == 1) {
    t[0] = a;
    return t;
  }
  const double h = (b - a) / (n - 1);
  for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = a + j * h;
  t.back() = b;
  return t;
}

void require_radius(double r) {
  if (!(r > 0.0) || !(r < 1.0)) throw Error(Errc::invalid_argument, "radius must lie in (0,1)");
}

}  // namespace

SampledComponent sample_shifted_arc(const UnitCircleArc& arc, double r, Complex w, int density) {
  require_radius(r);
  if (density < 2) throw Error(Errc::invalid_argument, "arc density must be at least 2");
  OriginShiftDilation psi(w);
  SampledComponent c;
  c.kind = ComponentKind::DilatedArc;
  c.label = "arc";
  c.params = ArcParams{arc, r, w};
  c.density = density;
  c.parameter = linspace(arc.alpha, arc.beta, density);
  c.points.reserve(c.parameter.size());
  for (double t : c.parameter) c.points.push_back(psi(r, std::polar(1.0, t)));
  c.validate();
  return c;
}

SampledComponent sample_dilated_arc(const UnitCircleArc& arc, double r, int density) {
  return sample_shifted_arc(arc, r, Complex(0.0, 0.0), density);
}

SampledComponent sample_shifted_disc_boundary(Complex w, double r, int density) {
  require_radius(r);
  if (density < 1) throw Error(Errc::invalid_argument, "disc density must be positive");
  OriginShiftDilation psi(w);
  SampledComponent c;
  c.kind = ComponentKind::DiscBoundary;
  c.label = "disc";
  c.params = DiscParams{r, w};
  c.density = density;
  c.parameter.resize(static_cast<std::size_t>(density));
  c.points.resize(static_cast<std::size_t>(density));
  for (int j = 0; j < density; ++j) {
    const double t = kTwoPi * j / density;
    c.parameter[static_cast<std::size_t>(j)] = t;
    c.points[static_cast<std::size_t>(j)] = psi(r, std::polar(1.0, t));
  }
  c.target = std::vector<Complex>(c.points.size(), Complex(0.0, 0.0));
  c.validate();
  return c;
}

SampledComponent sample_disc_constraint(double r, int density) {
  return sample_shifted_disc_boundary(Complex(0.0, 0.0), r, density);
}

SampledComponent sample_radial_curve(const DiscAutomorphism& phi, Complex zeta, double r_from, double r_to, int density) {
  if (!(r_from >= 0.0) || !(r_from < r_to) || !(r_to < 1.0)) throw Error(Errc::invalid_argument, "radial curve needs 0 <= r_from < r_to < 1");
  if (density < 2) throw Error(Errc::invalid_argument, "curve density must be at least 2");
  SampledComponent c;
  c.kind = ComponentKind::RadialCurve;
  c.label = "curve";
  c.params = CurveParams{phi, zeta, r_from, r_to};
  c.density = density;
  c.parameter = linspace(r_from, r_to, density);
  c.points.reserve(c.parameter.size());
  for (double r : c.parameter) c.points.push_back(phi(r * zeta));
  c.validate();
  return c;
}

std::vector<Complex> parameter_disc_grid(Complex w_center, double delta, int param_density) {
  std::vector<Complex> taus;
  if (delta == 0.0 || param_density <= 1) {
    taus.push_back(w_center);
    return taus;
  }
  taus.push_back(w_center);
  for (int i = 1; i < param_density; ++i) {
    const double rad = delta * i / (param_density - 1);
    for (int j = 0; j < param_density; ++j) taus.push_back(w_center + std::polar(rad, kTwoPi * j / param_density));
  }
  return taus;
}

CompoundCompactum build_F_compactum(Complex w_center, double delta, double r_k, const UnitCircleArc& arc,
                                    int param_density, int arc_density) {
  if (!(delta >= 0.0) || std::abs(w_center) + delta >= 1.0) throw Error(Errc::escapes_disc, "parameter disc must satisfy |w| + delta < 1");
  require_radius(r_k);
  if (arc_density < 2 || param_density < 1) throw Error(Errc::invalid_argument, "densities too small");
  SampledComponent c;
  c.kind = ComponentKind::ParamUnion;
  c.label = "F";
  c.params = UnionParams{w_center, delta, r_k, arc, param_density};
  c.density = arc_density;
  const std::vector<double> ts = linspace(arc.alpha, arc.beta, arc_density);
  for (Complex tau : parameter_disc_grid(w_center, delta, param_density)) {
    for (double t : ts) {
      const Complex z = r_k * std::polar(1.0, t);
      const Complex p = (z + tau) / (1.0 + std::conj(tau) * z);
      if (std::abs(p) >= 1.0 - 1e-9) throw Error(Errc::escapes_disc, "F-compactum sample reaches the unit circle");
      c.points.push_back(p);
    }
  }
  c.validate();
  return make_union({std::move(c)});
}

SampledComponent regenerate(ComponentKind kind, const ComponentParams& params, int density) {
  switch (kind) {
    case ComponentKind::DilatedArc: {
      const auto& p = std::get<ArcParams>(params);
      return sample_shifted_arc(p.arc, p.r, p.w, density);
    }
    case ComponentKind::DiscBoundary: {
      const auto& p = std::get<DiscParams>(params);
      return sample_shifted_disc_boundary(p.w, p.r, density);
    }
    case ComponentKind::RadialCurve: {
      const auto& p = std::get<CurveParams>(params);
      return sample_radial_curve(p.phi, p.zeta, p.r_from, p.r_to, density);
    }
    case ComponentKind::ParamUnion: {
      const auto& p = std::get<UnionParams>(params);
      return build_F_compactum(p.w_center, p.delta, p.r_k, p.arc, p.param_density, density).components.front();
    }
  }
  throw Error(Errc::invalid_argument, "unknown component kind");
}

double min_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& p : a) {
    for (const Complex& q : b) best = std::min(best, std::norm(p - q));
  }
  return std::sqrt(best);
}

CompoundCompactum make_union(std::vector<SampledComponent> components) {
  if (components.empty()) throw Error(Errc::invalid_argument, "union needs at least one component");
  CompoundCompactum u;
  u.components = std::move(components);
  for (const auto& c : u.components) c.validate();
  u.separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.components.size(); ++i) {
    for (std::size_t j = i + 1; j < u.components.size(); ++j) u.separation = std::min(u.separation, u.separation_between(i, j));
  }
  return u;
}

double sup_distance(const SampledComponent& set, const Evaluator& f) {
  if (!set.target) throw Error(Errc::invalid_argument, "sup distance needs a target");
  double s = 0.0;
  for (std::size_t i = 0; i < set.points.size(); ++i) s = std::max(s, std::abs(f(set.points[i]) - (*set.target)[i]));
  return s;
}

}  // namespace abel
