#include <doctest.h>

#include "abel/builder.hpp"

using namespace abel;

namespace {

const ComplexPolynomial kExpTaylor({1.0, 1.0, 0.5, 1.0 / 6.0});

}  // namespace

TEST_CASE("degenerate parameter disc reduces to a plain stage") {
  CHECK(condition_iii_error(kExpTaylor, 0.0, 0.0, 0.6, 10, 64) == 0.0);
  const auto arc = UnitCircleArc::make(0.2, 1.4);
  InvariantStageOptions opts;
  opts.arc_density = 256;
  const InvariantStageResult r = build_invariant_stage(0.0, 0.0, 0.6, arc, kExpTaylor, 4, 0.25, opts);
  CHECK(r.condition_iii == 0.0);
  CHECK(r.max_modulus == doctest::Approx(0.6).epsilon(1e-14));

  // the same fit posed directly as a disc constraint plus one dilated arc
  SampledComponent plain = sample_dilated_arc(arc, 0.6, 256);
  plain.set_target([](Complex z) { return kExpTaylor(z); });
  const Fit direct = fit_until(make_union({sample_disc_constraint(r.disc_radius, opts.disc_density), plain}), 0.25);
  CHECK(r.fit.report.degree == direct.report.degree);
  CHECK(r.fit.report.sup_error == doctest::Approx(direct.report.sup_error).epsilon(1e-12));
  CHECK(r.fit.report.converged);
}

TEST_CASE("halving search finds an admissible parameter disc") {
  const auto arc = UnitCircleArc::make(0.2, 1.4);
  InvariantStageOptions opts;
  opts.continuous_target = [](Complex z) { return std::exp(z); };
  const InvariantStageResult r = find_invariant_stage({0.3, 0.1}, 0.4, 0.6, arc, kExpTaylor, 4, opts);
  CHECK(r.condition_iii < 0.25);
  CHECK(r.delta == doctest::Approx(0.4 * std::ldexp(1.0, -r.halvings)));
  CHECK(r.fit.report.converged);
  CHECK(r.fit.report.sup_error <= 0.25);
  CHECK(r.chain_max < 0.75);
  for (const ChainSample& c : r.chain) CHECK(c.lhs <= c.fit_term + c.condition_term + c.substitution_term + 1e-12);
}

TEST_CASE("condition violation is reported") {
  const auto arc = UnitCircleArc::make(0.2, 1.4);
  CHECK_THROWS_AS(build_invariant_stage({0.3, 0.1}, 0.4, 0.6, arc, kExpTaylor, 4, 0.25), Error);
  CHECK(probe_parameters({0.1, 0.0}, 0.2, 30).size() == 30);
  for (Complex t : probe_parameters({0.1, 0.0}, 0.2, 30)) CHECK(std::abs(t - Complex(0.1, 0.0)) <= 0.2 + 1e-15);
}
