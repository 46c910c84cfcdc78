#include <algorithm>
#include <cmath>
#include <limits>

#include "abel/probe.hpp"

namespace abel {

ArcTarget polynomial_target(const ComplexPolynomial& p) {
  return [p](Complex zeta) { return p(zeta); };
}

double dilate_distance(const FunctionExpr& f, const UnitCircleArc& arc, const ArcTarget& target, double r, int density) {
  if (!(r > 0.0 && r < 1.0)) throw Error(Errc::domain, "dilation radius must lie in (0,1)");
  const SampledComponent grid = sample_dilated_arc(arc, r, density);
  const std::vector<Complex> vals = f.evaluate(grid.points);
  double worst = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const Complex zeta = std::polar(1.0, grid.parameter[i]);
    worst = std::max(worst, std::abs(vals[i] - target(zeta)));
  }
  return worst;
}

std::vector<Complex> scan_grid(const std::vector<UnitCircleArc>& arcs, const RadiiSchedule& rho, int N, int density) {
  std::vector<Complex> pts;
  for (const UnitCircleArc& arc : arcs) {
    for (int n = 0; n <= N && n < static_cast<int>(rho.size()); ++n) {
      if (!(rho[n] > 0.0)) continue;
      const SampledComponent g = sample_dilated_arc(arc, rho[n], density);
      pts.insert(pts.end(), g.points.begin(), g.points.end());
    }
  }
  return pts;
}

DilateReport universality_scan(const FunctionExpr& f, const std::vector<ArcTarget>& targets,
                               const std::vector<UnitCircleArc>& arcs, const RadiiSchedule& rho, int N, int density) {
  if (N < 0) throw Error(Errc::invalid_argument, "scan depth must be non-negative");
  if (static_cast<int>(rho.size()) < N + 1) throw Error(Errc::invalid_argument, "radii schedule shorter than scan depth");
  DilateReport rep;
  rep.density = density;
  rep.note = "grid evidence over finitely many targets and radii, not a certificate";
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      DilateEntry e;
      e.target_id = static_cast<int>(t);
      e.arc_id = static_cast<int>(a);
      e.best_error = std::numeric_limits<double>::infinity();
      for (int n = 0; n <= N; ++n) {
        // a zero radius collapses the arc to the origin and carries no dilate
        const double err = rho[n] > 0.0 ? dilate_distance(f, arcs[a], targets[t], rho[n], density)
                                        : std::numeric_limits<double>::quiet_NaN();
        e.n.push_back(n);
        e.r.push_back(rho[n]);
        e.errors.push_back(err);
        if (err < e.best_error) {
          e.best_error = err;
          e.best_n = n;
        }
      }
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

double radial_value_coverage(const FunctionExpr& f, Complex zeta, const RadiiSchedule& rho, int N,
                             const std::vector<Complex>& targets, double eps) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw Error(Errc::domain, "zeta must be unimodular");
  if (targets.empty()) return 0.0;
  std::vector<Complex> pts;
  for (int n = 0; n <= N && n < static_cast<int>(rho.size()); ++n) pts.push_back(rho[n] * zeta);
  const std::vector<Complex> vals = f.evaluate(pts);
  std::size_t hit = 0;
  for (const Complex& t : targets) {
    for (const Complex& v : vals) {
      if (std::abs(v - t) < eps) {
        ++hit;
        break;
      }
    }
  }
  return static_cast<double>(hit) / static_cast<double>(targets.size());
}

}  // namespace abel
