#include "abel/builder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "builder_internal.hpp"

namespace abel {

RadiiSchedule RadiiSchedule::defaults(int count) {
  RadiiSchedule s;
  for (int n = 0; n < count; ++n) s.r.push_back(1.0 - std::ldexp(1.0, -(n + 1)));
  return s;
}

void RadiiSchedule::validate() const {
  for (std::size_t n = 0; n < r.size(); ++n) {
    if (!std::isfinite(r[n]) || r[n] < 0.0 || r[n] >= 1.0) throw Error(Errc::invalid_argument, "radii must lie in [0,1)");
    if (n > 0 && !(r[n] > r[n - 1])) throw Error(Errc::invalid_argument, "radii must be strictly increasing");
  }
}

EpsilonSchedule EpsilonSchedule::defaults(int count) {
  EpsilonSchedule s;
  for (int n = 0; n < count; ++n) s.eps.push_back(std::ldexp(1.0, -(n + 2)));
  return s;
}

void EpsilonSchedule::validate() const {
  double total = 0.0;
  for (std::size_t n = 0; n < eps.size(); ++n) {
    if (!std::isfinite(eps[n]) || !(eps[n] > 0.0)) throw Error(Errc::invalid_argument, "tolerances must be positive");
    if (n > 0 && eps[n] > eps[n - 1]) throw Error(Errc::invalid_argument, "tolerances must be non-increasing");
    if (n >= 1) total += eps[n];
  }
  if (total > 0.5 + 1e-15) throw Error(Errc::invalid_argument, "stage tolerances must sum to at most 1/2");
}

double EpsilonSchedule::sum(int from, int to) const {
  double s = 0.0;
  for (int k = std::max(from, 0); k <= to; ++k) s += eps.at(static_cast<std::size_t>(k));
  return s;
}

void TargetEnumeration::validate(int n_stages) const {
  if (n_stages <= 0) return;
  if (targets.empty() || arcs.empty()) throw Error(Errc::invalid_argument, "enumeration needs targets and arcs");
  if (alpha.size() < static_cast<std::size_t>(n_stages) || beta.size() < static_cast<std::size_t>(n_stages)) {
    throw Error(Errc::invalid_argument, "schedule shorter than the stage count");
  }
  for (int n = 0; n < n_stages; ++n) {
    if (alpha[static_cast<std::size_t>(n)] < 0 || alpha[static_cast<std::size_t>(n)] >= static_cast<int>(targets.size()) ||
        beta[static_cast<std::size_t>(n)] < 0 || beta[static_cast<std::size_t>(n)] >= static_cast<int>(arcs.size())) {
      throw Error(Errc::invalid_argument, "schedule index out of range");
    }
  }
}

std::pair<std::vector<int>, std::vector<int>> schedule_pairs(int n_targets, int n_arcs, int n_stages) {
  if (n_targets < 1 || n_arcs < 1 || n_stages < 0) throw Error(Errc::invalid_argument, "schedule needs targets and arcs");
  if (n_stages < n_targets * n_arcs) throw Error(Errc::invalid_argument, "too few stages to visit every pair");
  std::vector<int> alpha, beta;
  const int cycle = n_targets * n_arcs;
  for (int n = 0; n < n_stages; ++n) {
    const int k = n % cycle;
    alpha.push_back(k / n_arcs);
    beta.push_back(k % n_arcs);
  }
  return {alpha, beta};
}

const char* to_string(BridgeShape s) {
  switch (s) {
    case BridgeShape::Linear: return "linear";
    case BridgeShape::Smooth: return "smooth";
    case BridgeShape::Free: return "free";
  }
  return "?";
}

BridgeShape bridge_shape_from_string(const std::string& s) {
  if (s == "linear") return BridgeShape::Linear;
  if (s == "smooth") return BridgeShape::Smooth;
  if (s == "free") return BridgeShape::Free;
  throw Error(Errc::invalid_argument, "unknown bridge shape '" + s + "'");
}

const char* to_string(StageCase c) {
  switch (c) {
    case StageCase::Zero: return "P0";
    case StageCase::I: return "I";
    case StageCase::II: return "II";
    case StageCase::III: return "III";
  }
  return "?";
}

std::string describe(const StageCaseInfo& c) {
  std::ostringstream os;
  os << to_string(c.kind);
  if (c.kind == StageCase::II) os << "(curve " << c.curve << ")";
  if (c.kind == StageCase::III) os << (c.order > 0 ? "(R1<R2)" : "(R2<R1)");
  return os.str();
}

Complex UniversalSeries::evaluate(Complex z, int upto) const {
  const int last = upto < 0 ? built_stages() : std::min(upto, built_stages());
  Complex s(0.0, 0.0);
  for (int k = 1; k <= last; ++k) s += stages[static_cast<std::size_t>(k)].poly(z);
  return s;
}

std::vector<Complex> UniversalSeries::evaluate(const std::vector<Complex>& z, int upto) const {
  const int last = upto < 0 ? built_stages() : std::min(upto, built_stages());
  std::vector<Complex> total(z.size(), Complex(0.0, 0.0)), part(z.size());
  for (int k = 1; k <= last; ++k) {
    stages[static_cast<std::size_t>(k)].poly.evaluate(z, part);
    for (std::size_t i = 0; i < z.size(); ++i) total[i] += part[i];
  }
  return total;
}

std::string finite_enumeration_header(const TargetEnumeration& e, int n_stages) {
  std::ostringstream os;
  os << "finite enumeration: " << e.targets.size() << " target polynomial(s), " << e.arcs.size()
     << " arc(s), cyclic schedule over " << n_stages << " stage(s); evidence at desk scale, not a certificate";
  return os.str();
}

namespace detail {

SampledComponent disc_component(Complex w, double r, int density) {
  if (r > 0.0) return sample_shifted_disc_boundary(w, r, density);
  SampledComponent c;
  c.kind = ComponentKind::DiscBoundary;
  c.label = "disc";
  c.params = DiscParams{0.0, w};
  c.density = 1;
  c.points = {w};
  c.parameter = {0.0};
  c.target = std::vector<Complex>{Complex(0.0, 0.0)};
  c.validate();
  return c;
}

ComponentDescriptor descriptor(const SampledComponent& c) {
  ComponentDescriptor d;
  d.kind = c.kind;
  d.label = c.label;
  d.params = c.params;
  d.density = c.density;
  d.count = c.size();
  d.regenerable = c.regenerable;
  d.weight = c.weight;
  return d;
}

void record_fit(Stage& st, const CompoundCompactum& set, Fit&& fit) {
  st.fit = std::move(fit.report);
  st.poly = std::move(fit.poly);
  st.disc_sup = 0.0;
  st.small_sup = 0.0;
  st.approx_sup = 0.0;
  for (std::size_t c = 0; c < set.components.size(); ++c) {
    const auto& comp = set.components[c];
    const double e = st.fit.component_sup.at(c);
    if (comp.label == "disc") st.disc_sup = std::max(st.disc_sup, e);
    if (comp.label == "arc") {
      st.approx_sup = std::max(st.approx_sup, e);
    } else if (comp.label.rfind("pin", 0) != 0) {
      st.small_sup = std::max(st.small_sup, e);
    }
  }
  if (!st.fit.converged) {
    st.failed = true;
    std::ostringstream os;
    os << "tolerance-unreachable: sup error " << st.fit.sup_error << " > " << st.tol << " at degree " << st.fit.degree;
    st.failure = os.str();
  } else if (st.disc_sup > st.eps) {
    st.failed = true;
    st.failure = "disc constraint above eps";
  }
}

Stage zero_stage() {
  Stage s;
  s.n = 0;
  s.case_info.kind = StageCase::Zero;
  s.poly = ArnoldiPolynomial::zero();
  return s;
}

}  // namespace detail

namespace {

void check_lengths(const BuildConfig& cfg, int N, std::size_t rho_len) {
  if (N < 0) throw Error(Errc::invalid_argument, "stage count must be non-negative");
  if (rho_len < static_cast<std::size_t>(N) + 1) throw Error(Errc::invalid_argument, "radii schedule shorter than the stage count");
  if (cfg.eps.size() < static_cast<std::size_t>(N) + 1) throw Error(Errc::invalid_argument, "tolerance schedule shorter than the stage count");
  if (!(cfg.tol_factor > 0.0) || cfg.tol_factor > 1.0) throw Error(Errc::invalid_argument, "tol_factor must lie in (0,1]");
  cfg.enumeration.validate(N);
}

UniversalSeries membership_impl(Complex w, const BuildConfig& cfg, int N, double tol_factor, const char* kind) {
  cfg.rho.validate();
  cfg.eps.validate();
  BuildConfig resolved = cfg;
  resolved.tol_factor = tol_factor;
  check_lengths(resolved, N, cfg.rho.size());

  UniversalSeries s;
  s.kind = kind;
  s.w = w;
  s.rho = cfg.rho;
  s.eps = cfg.eps;
  s.enumeration = cfg.enumeration;
  s.config = resolved;
  s.header = finite_enumeration_header(cfg.enumeration, N);
  s.stages.push_back(detail::zero_stage());

  for (int n = 1; n <= N; ++n) {
    Stage st;
    st.n = n;
    st.case_info.kind = StageCase::I;
    st.alpha = cfg.enumeration.alpha[static_cast<std::size_t>(n - 1)];
    st.beta = cfg.enumeration.beta[static_cast<std::size_t>(n - 1)];
    st.r = cfg.rho[static_cast<std::size_t>(n)];
    st.eps = cfg.eps[static_cast<std::size_t>(n)];
    st.tol = tol_factor * st.eps;
    const ComplexPolynomial& phi = cfg.enumeration.targets[static_cast<std::size_t>(st.alpha)];
    const UnitCircleArc& arc = cfg.enumeration.arcs[static_cast<std::size_t>(st.beta)];

    SampledComponent disc = detail::disc_component(w, cfg.rho[static_cast<std::size_t>(n - 1)], cfg.disc_density);
    SampledComponent approx = sample_shifted_arc(arc, st.r, w, cfg.arc_density);
    const std::vector<Complex> prev = s.evaluate(approx.points, n - 1);
    std::vector<Complex> tgt(approx.size());
    for (std::size_t i = 0; i < approx.size(); ++i) tgt[i] = phi(std::polar(1.0, approx.parameter[i])) - prev[i];
    approx.set_target(std::move(tgt));

    CompoundCompactum set = make_union({disc, approx});
    for (const auto& c : set.components) st.compactum.push_back(detail::descriptor(c));
    detail::record_fit(st, set, fit_until(set, st.tol, cfg.max_degree, cfg.fit));
    s.stages.push_back(std::move(st));
    if (s.stages.back().failed) {
      s.failed = true;
      s.failed_stage = n;
      s.failure = "stage " + std::to_string(n) + ": " + s.stages.back().failure;
      break;
    }
  }
  return s;
}

}  // namespace

UniversalSeries build_membership_series(const BuildConfig& cfg, int N) {
  return membership_impl(Complex(0.0, 0.0), cfg, N, cfg.tol_factor, "membership");
}

UniversalSeries build_membership_series(const BuildConfig& cfg, int N, double tol_factor) {
  return membership_impl(Complex(0.0, 0.0), cfg, N, tol_factor, "membership");
}

UniversalSeries build_shifted_membership_series(Complex w, const BuildConfig& cfg, int N) {
  if (std::abs(w) >= 1.0) throw Error(Errc::invalid_argument, "shift origin needs |w| < 1");
  return membership_impl(w, cfg, N, cfg.tol_factor, "shifted");
}

std::vector<TelescopeCheck> telescoping_check(const UniversalSeries& s, int density) {
  std::vector<TelescopeCheck> out;
  const int N = s.built_stages();
  for (int n = 1; n <= N; ++n) {
    const Stage& st = s.stages[static_cast<std::size_t>(n)];
    if (st.failed) break;
    TelescopeCheck c;
    c.n = n;
    c.alpha = st.alpha;
    c.beta = st.beta;
    const UnitCircleArc& arc = s.enumeration.arcs[static_cast<std::size_t>(st.beta)];
    const ComplexPolynomial& phi = s.enumeration.targets[static_cast<std::size_t>(st.alpha)];
    const SampledComponent grid = sample_shifted_arc(arc, st.r, s.w, density);
    const std::vector<Complex> f = s.evaluate(grid.points);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      c.error = std::max(c.error, std::abs(f[i] - phi(std::polar(1.0, grid.parameter[i]))));
    }
    c.bound = s.eps.sum(n, N);
    c.ok = c.error <= c.bound;
    out.push_back(c);
  }
  return out;
}

}  // namespace abel
