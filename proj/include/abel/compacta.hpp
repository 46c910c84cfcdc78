#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abel/disc_geometry.hpp"

namespace abel {

enum class ComponentKind { DilatedArc, DiscBoundary, RadialCurve, ParamUnion };

const char* to_string(ComponentKind kind);
ComponentKind component_kind_from_string(const std::string& s);

// w + r (e^{it} - w), t in the arc
struct ArcParams {
  UnitCircleArc arc;
  double r = 0.0;
  Complex w{0.0, 0.0};
};

// w + r (e^{it} - w), t in [0, 2pi)
struct DiscParams {
  double r = 0.0;
  Complex w{0.0, 0.0};
};

// phi(r zeta), r in [r_from, r_to]
struct CurveParams {
  DiscAutomorphism phi;
  Complex zeta{1.0, 0.0};
  double r_from = 0.0;
  double r_to = 0.0;
};

// union over tau in the closed disc D(w_center, delta) of (z + tau)/(1 + conj(tau) z), z in r_k * arc
struct UnionParams {
  Complex w_center{0.0, 0.0};
  double delta = 0.0;
  double r_k = 0.0;
  UnitCircleArc arc;
  int param_density = 1;
};

using ComponentParams = std::variant<ArcParams, DiscParams, CurveParams, UnionParams>;

using Evaluator = std::function<Complex(Complex)>;

struct SampledComponent {
  ComponentKind kind = ComponentKind::DilatedArc;
  std::string label;
  ComponentParams params;
  int density = 0;
  std::vector<Complex> points;
  // curve parameter per point: t for arcs and circles, r for radial curves, empty for unions
  std::vector<double> parameter;
  std::optional<std::vector<Complex>> target;
  double weight = 1.0;
  // false once points were filtered or extended, so params alone no longer reproduce them
  bool regenerable = true;

  void set_target(std::vector<Complex> values);
  void set_target(const Evaluator& f);
  void validate() const;
  double max_modulus() const;
  std::size_t size() const { return points.size(); }
};

struct CompoundCompactum {
  std::vector<SampledComponent> components;
  // +inf when there is a single component
  double separation = 0.0;

  bool single_component() const { return components.size() < 2; }
  bool overlap_warning() const { return separation < 1e-6; }
  double separation_between(std::size_t i, std::size_t j) const;
  std::size_t total_samples() const;
};

SampledComponent sample_dilated_arc(const UnitCircleArc& arc, double r, int density);
SampledComponent sample_shifted_arc(const UnitCircleArc& arc, double r, Complex w, int density);
SampledComponent sample_disc_constraint(double r, int density);
SampledComponent sample_shifted_disc_boundary(Complex w, double r, int density);
SampledComponent sample_radial_curve(const DiscAutomorphism& phi, Complex zeta, double r_from, double r_to, int density);

// Recomputes points from params; throws when the component is not regenerable.
SampledComponent regenerate(ComponentKind kind, const ComponentParams& params, int density);

CompoundCompactum make_union(std::vector<SampledComponent> components);

double min_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

double sup_distance(const SampledComponent& set, const Evaluator& f);

CompoundCompactum build_F_compactum(Complex w_center, double delta, double r_k, const UnitCircleArc& arc,
                                    int param_density, int arc_density);

// Parameter grid of build_F_compactum: polar rings of the closed disc, centre ring collapsed.
std::vector<Complex> parameter_disc_grid(Complex w_center, double delta, int param_density);

}  // namespace abel
