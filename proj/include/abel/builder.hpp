#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abel/compacta.hpp"
#include "abel/mergelyan.hpp"

namespace abel {

struct RadiiSchedule {
  std::vector<double> r;

  // r[n] = 1 - 2^{-(n+1)}
  static RadiiSchedule defaults(int count);
  void validate() const;
  std::size_t size() const { return r.size(); }
  double operator[](std::size_t n) const { return r.at(n); }
};

struct EpsilonSchedule {
  // eps[n] is the stage-n tolerance; eps[0] is carried for indexing only
  std::vector<double> eps;

  // eps[n] = 2^{-(n+2)}
  static EpsilonSchedule defaults(int count);
  void validate() const;
  std::size_t size() const { return eps.size(); }
  double operator[](std::size_t n) const { return eps.at(n); }
  // eps[from] + ... + eps[to]
  double sum(int from, int to) const;
};

struct TargetEnumeration {
  std::vector<ComplexPolynomial> targets;
  std::vector<UnitCircleArc> arcs;
  // stage n >= 1 uses targets[alpha[n-1]] on arcs[beta[n-1]]
  std::vector<int> alpha;
  std::vector<int> beta;

  void validate(int n_stages) const;
};

std::pair<std::vector<int>, std::vector<int>> schedule_pairs(int n_targets, int n_arcs, int n_stages);

// How a witness-curve window is filled between its zero region and the pinned value.
//   Linear: target ramps linearly in the curve parameter.
//   Smooth: target follows a C-infinity bump in the curve parameter.
//   Free:   window interior is left unsampled; the bridging function is read off the fit.
enum class BridgeShape { Linear, Smooth, Free };

const char* to_string(BridgeShape s);
BridgeShape bridge_shape_from_string(const std::string& s);

struct BuildConfig {
  RadiiSchedule rho;
  EpsilonSchedule eps;
  TargetEnumeration enumeration;
  int arc_density = 512;
  int disc_density = 2048;
  int curve_density = 1024;
  int window_density = 128;
  int max_degree = 512;
  double tol_factor = 0.5;
  double curve_kappa = 1e-3;
  BridgeShape bridge = BridgeShape::Free;
  FitOptions fit;
};

enum class StageCase { Zero, I, II, III };

const char* to_string(StageCase c);

struct StageCaseInfo {
  StageCase kind = StageCase::I;
  // Case II: witness curve (1 or 2) meeting the arc
  int curve = 0;
  // Case III: +1 when R_n^1 < R_n^2, -1 for the mirrored order
  int order = 0;
  double distance1 = 0.0;
  double distance2 = 0.0;
};

std::string describe(const StageCaseInfo& c);

struct ComponentDescriptor {
  ComponentKind kind = ComponentKind::DilatedArc;
  std::string label;
  ComponentParams params;
  int density = 0;
  std::size_t count = 0;
  bool regenerable = true;
  double weight = 1.0;
  // removed parameter window of a witness curve
  std::optional<std::pair<double, double>> window;
};

struct PinRecord {
  int curve = 0;
  double radius = 0.0;
  Complex point;
  Complex value;  // fitted target at the pin
  double residual_at_pin = 0.0;
  // |P_n + psi_n| at the window ends, where psi_n is zero
  double residual_at_lo = 0.0;
  double residual_at_hi = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

struct Stage {
  int n = 0;
  StageCaseInfo case_info;
  int alpha = -1;
  int beta = -1;
  double r = 0.0;
  double eps = 0.0;
  double tol = 0.0;
  ArnoldiPolynomial poly = ArnoldiPolynomial::zero();
  FitReport fit;
  bool failed = false;
  std::string failure;
  std::vector<ComponentDescriptor> compactum;
  // sup over the disc constraint, over every zero-target component, and over the approximation arc
  double disc_sup = 0.0;
  double small_sup = 0.0;
  double approx_sup = 0.0;
  std::optional<double> eta;
  std::vector<PinRecord> pins;
};

struct UniversalSeries {
  std::string kind = "membership";
  Complex w{0.0, 0.0};
  RadiiSchedule rho;
  EpsilonSchedule eps;
  TargetEnumeration enumeration;
  BuildConfig config;
  // stages[0] is P_0 = 0
  std::vector<Stage> stages;
  bool failed = false;
  int failed_stage = -1;
  std::string failure;
  std::string header;

  int built_stages() const { return static_cast<int>(stages.size()) - 1; }
  // sum of P_k for k <= upto (all stages when upto < 0)
  Complex evaluate(Complex z, int upto = -1) const;
  std::vector<Complex> evaluate(const std::vector<Complex>& z, int upto = -1) const;
};

std::string finite_enumeration_header(const TargetEnumeration& e, int n_stages);

UniversalSeries build_membership_series(const BuildConfig& cfg, int N);
UniversalSeries build_membership_series(const BuildConfig& cfg, int N, double tol_factor);
UniversalSeries build_shifted_membership_series(Complex w, const BuildConfig& cfg, int N);

struct TelescopeCheck {
  int n = 0;
  int alpha = 0;
  int beta = 0;
  double error = 0.0;
  double bound = 0.0;
  bool ok = false;
};

// sup over r_n K_beta(n) of |F_N(w + r_n(zeta - w)) - phi(zeta)| against eps[n] + sum_{k>n} eps[k]
std::vector<TelescopeCheck> telescoping_check(const UniversalSeries& s, int density);

// ---- counterexample construction ----

struct CounterexampleWitness {
  DiscAutomorphism phi;
  Complex zeta1{1.0, 0.0};
  Complex zeta2{0.0, 1.0};
  double r_minus1 = 0.0;
  double level_floor = 0.0;
  int dropped = 0;
  // radii after dropping the leading entries that sit at or below level_floor
  RadiiSchedule rho;
  std::vector<double> R1, R2;  // n = 0..N
  std::vector<double> s1, s2;  // n = 0..N
  std::vector<double> eta;     // n = 0..N, NaN outside Case III stages
};

CounterexampleWitness compute_witness(const DiscAutomorphism& phi, Complex zeta1, Complex zeta2,
                                      const RadiiSchedule& rho, int N);

StageCaseInfo classify_stage(int n, const SampledComponent& arc_set, const CounterexampleWitness& w,
                             double kappa = 1e-3, int curve_density = 4096);

// Case III margin: halves eta from (R_n^hi - R_n^lo)/4 until the modulus chain holds with the given slack.
std::optional<double> find_case3_eta(int n, const CounterexampleWitness& w, int order, double slack = 1e-4);

struct SweepResult {
  std::vector<double> r;
  std::vector<double> value;  // min(|F(phi(r zeta1))|, |F(phi(r zeta2))|)
  double max_value = 0.0;
};

SweepResult counterexample_sweep(const UniversalSeries& s, const CounterexampleWitness& w, int samples = 200);

struct CounterexampleResult {
  UniversalSeries series;
  CounterexampleWitness witness;
  double budget = 0.0;
  SweepResult sweep;
  bool sweep_ok = false;
};

CounterexampleResult build_counterexample_series(const BuildConfig& cfg, const CounterexampleWitness& witness, int N);

// ---- single-stage fit for the invariance under all automorphisms ----

struct InvariantStageOptions {
  int param_density = 9;
  int arc_density = 96;
  int disc_density = 512;
  // disc constraint radius; <= 0 selects half the smallest modulus of the F-compactum
  double disc_radius = -1.0;
  int condition_samples = 50;
  int condition_grid = 256;
  int max_degree = 512;
  FitOptions fit;
  // continuous target approximated by the enumerated polynomial; empty means the polynomial itself
  Evaluator continuous_target;
};

struct ChainSample {
  Complex tau;
  double lhs = 0.0;
  double fit_term = 0.0;
  double condition_term = 0.0;
  double substitution_term = 0.0;
};

struct InvariantStageResult {
  Fit fit;
  double delta = 0.0;
  int halvings = 0;
  double condition_iii = 0.0;
  double disc_radius = 0.0;
  double max_modulus = 0.0;
  double fit_tol = 0.0;
  std::vector<ChainSample> chain;
  double chain_max = 0.0;
};

// sup over |z| = 1 of |phi(Phi_w^{-1}(Phi_tau(r_k z))) - phi(r_k z)| over the sampled parameters tau
double condition_iii_error(const ComplexPolynomial& target, Complex w_center, double delta, double r_k,
                           int samples, int grid);

// Samples tau used by the condition and chain probes: rings of the closed parameter disc.
std::vector<Complex> probe_parameters(Complex w_center, double delta, int samples);

InvariantStageResult build_invariant_stage(Complex w_center, double delta, double r_k, const UnitCircleArc& arc,
                                           const ComplexPolynomial& target, int m, double tol,
                                           const InvariantStageOptions& opts = {});

// Halves delta from delta0 until condition (iii) holds below 1/m, then fits.
InvariantStageResult find_invariant_stage(Complex w_center, double delta0, double r_k, const UnitCircleArc& arc,
                                          const ComplexPolynomial& target, int m,
                                          const InvariantStageOptions& opts = {}, int max_halvings = 40);

}  // namespace abel
