#include <doctest.h>

#include "abel/builder.hpp"

using namespace abel;

namespace {

const Complex kI(0.0, 1.0);

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("witness radii for a = 0.5, zeta = 1, i") {
  const CounterexampleWitness w = compute_witness(DiscAutomorphism(0.5), 1.0, kI, RadiiSchedule::defaults(7), 4);
  CHECK(w.r_minus1 == doctest::Approx(0.5).epsilon(1e-9));
  // the default radius 0.5 lies below |Phi(0.5 i)| and is dropped
  CHECK(w.dropped == 1);
  CHECK(w.rho[0] == 0.75);
  CHECK(w.R1[0] == doctest::Approx(1.25 / 1.375).epsilon(1e-10));
  // 0.75(1 - R^2)/(1 + 0.25 R^2) = 1 - 0.75^2
  CHECK(w.R2[0] == doctest::Approx(std::sqrt(0.3125 / 0.859375)).epsilon(1e-10));
  for (std::size_t n = 0; n + 1 < w.R1.size() && n < w.s1.size(); ++n) {
    CHECK(w.R1[n] < w.s1[n]);
    CHECK(w.s1[n] < w.R1[n + 1]);
    CHECK(w.R2[n] < w.s2[n]);
    CHECK(w.s2[n] < w.R2[n + 1]);
    CHECK(std::abs(std::abs(w.phi(w.R1[n])) - w.rho[n]) < 1e-10);
    CHECK(std::abs(std::abs(w.phi(w.R2[n] * kI)) - w.rho[n]) < 1e-10);
  }
}

TEST_CASE("witness criterion") {
  const DiscAutomorphism phi(0.5);
  CHECK(radial_monotone_threshold(phi, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(radial_monotone_threshold(phi, -1.0) == 0.0);
  CHECK_NOTHROW(compute_witness(phi, 1.0, -1.0, RadiiSchedule::defaults(9), 3));
  CHECK(code_of([&] { compute_witness(phi, kI, -kI, RadiiSchedule::defaults(9), 3); }) == Errc::criterion_violated);
  CHECK(code_of([&] { compute_witness(DiscAutomorphism(0.0), 1.0, kI, RadiiSchedule::defaults(9), 3); }) == Errc::a_zero);
}

TEST_CASE("stage classification") {
  const CounterexampleWitness w = compute_witness(DiscAutomorphism(0.5), 1.0, kI, RadiiSchedule::defaults(7), 4);
  const SampledComponent near_zero = sample_dilated_arc(UnitCircleArc::make(0.0, 0.1), 0.75, 64);
  CHECK(classify_stage(0, near_zero, w).kind == StageCase::I);
  // Phi(R1 * 1) = -0.75 sits on the arc around angle pi
  const SampledComponent near_pi = sample_dilated_arc(UnitCircleArc::make(kPi - 0.3, kPi + 0.3), 0.75, 601);
  const StageCaseInfo c = classify_stage(0, near_pi, w);
  CHECK(c.kind == StageCase::II);
  CHECK(c.curve == 1);
  CHECK(describe(c) == "II(curve 1)");
  CHECK(classify_stage(0, near_pi, CounterexampleWitness{}).kind == StageCase::I);
}

TEST_CASE("two-stage counterexample build keeps the witness curves small") {
  BuildConfig cfg;
  cfg.enumeration.targets = {ComplexPolynomial(), ComplexPolynomial::constant(10.0)};
  cfg.enumeration.arcs = {UnitCircleArc::make(kPi / 2 - 0.003, kPi / 2 + 0.003)};
  cfg.enumeration.alpha = {0, 1};
  cfg.enumeration.beta = {0, 0};
  cfg.eps.eps = {0.08, 0.08, 0.08};
  RadiiSchedule rho;
  for (int k = 0; k < 8; ++k) rho.r.push_back(0.70 + 0.04 * k);
  const CounterexampleWitness w = compute_witness(DiscAutomorphism(0.5), 1.0, kI, rho, 2);
  const CounterexampleResult res = build_counterexample_series(cfg, w, 2);
  REQUIRE_FALSE(res.series.failed);
  for (int n = 1; n <= 2; ++n) {
    const Stage& st = res.series.stages[static_cast<std::size_t>(n)];
    CHECK(st.case_info.kind == StageCase::I);
    CHECK(st.disc_sup <= st.eps);
    CHECK(st.small_sup <= st.eps);
  }
  CHECK(res.sweep.r.size() == 200);
  CHECK(res.sweep_ok);
  CHECK(res.budget < 1.0);
}
