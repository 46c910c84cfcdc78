#include <doctest.h>

#include "abel/lifting.hpp"

using namespace abel;

namespace {

std::vector<Complex> segment(Complex a, Complex b) { return {a, b}; }

}  // namespace

TEST_CASE("outer functions") {
  const LiftFunction sq = LiftFunction::square();
  CHECK(sq.value({0.0, 2.0}) == Complex(-4.0, 0.0));
  CHECK(sq.derivative(3.0) == Complex(6.0, 0.0));
  REQUIRE(sq.critical_values().size() == 1);
  CHECK(std::abs(sq.critical_values()[0]) < 1e-15);
  CHECK(sq.preimages(4.0).size() == 2);
  CHECK(LiftFunction::exp().critical_values().empty());
  CHECK(std::abs(LiftFunction::exp().preimages({0.0, 1.0}).front() - Complex(0.0, kPi / 2)) < 1e-15);
  CHECK_THROWS(LiftFunction::polynomial(ComplexPolynomial::constant(3.0)));
}

TEST_CASE("square root along the positive reals") {
  const LiftResult r = lift_path(LiftFunction::square(), segment(1.0, 4.0), 1.0, 1e-10);
  REQUIRE(r.complete());
  CHECK(std::abs(r.endpoint() - 2.0) < 1e-9);
  CHECK(r.max_defect <= 1e-10);
  CHECK(r.fail_index == -1);
  for (std::size_t i = 1; i < r.t.size(); ++i) CHECK(r.t[i] >= r.t[i - 1]);
}

TEST_CASE("principal logarithm along the positive reals") {
  const LiftResult r = lift_path(LiftFunction::exp(), segment(1.0, std::exp(1.0)), 0.0, 1e-10);
  REQUIRE(r.complete());
  CHECK(std::abs(r.endpoint() - 1.0) < 1e-9);
}

TEST_CASE("path through the critical value stops") {
  const LiftResult r = lift_path(LiftFunction::square(), segment(1.0, -1.0), 1.0, 1e-10);
  CHECK(r.status == LiftStatus::CriticalPointHit);
  CHECK(r.fail_index >= 0);
  CHECK_FALSE(r.message.empty());
  CHECK(std::string(to_string(r.status)) == "CriticalPointHit");
}

TEST_CASE("continuation around a loop changes the square-root branch") {
  std::vector<Complex> loop;
  for (int j = 0; j <= 64; ++j) loop.push_back(std::polar(1.0, kTwoPi * j / 64));
  const LiftResult r = lift_path(LiftFunction::square(), loop, 1.0, 1e-10);
  REQUIRE(r.complete());
  CHECK(std::abs(r.endpoint() + 1.0) < 1e-8);
}

TEST_CASE("start must be a preimage") {
  CHECK_THROWS(lift_path(LiftFunction::square(), segment(1.0, 4.0), 3.0, 1e-10));
}

TEST_CASE("liftable target under exp with a constant target") {
  const auto arc = UnitCircleArc::make(0.0, kPi / 2);
  const LiftableTarget lt = liftable_target(LiftFunction::exp(), arc, [](Complex) { return Complex(2.0, 0.0); }, 0.05, 4);
  CHECK(lt.defect < 0.05);
  for (Complex v : lt.h0) CHECK(std::abs(v - std::log(2.0)) <= 0.05);
  for (Complex w : lt.node_w) CHECK(std::abs(w - 2.0) <= 0.05 / 4);
}

TEST_CASE("liftable target under the square picks one branch of sqrt") {
  const auto arc = UnitCircleArc::make(0.1, kPi / 2);
  const double eps = 0.05;
  const LiftableTarget lt = liftable_target(LiftFunction::square(), arc, [](Complex z) { return z; }, eps, 4);
  CHECK(lt.defect < eps);
  const double sign = lt.h0.front().real() > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < lt.t.size(); ++i) {
    CHECK(std::abs(lt.h0[i] * lt.h0[i] - std::polar(1.0, lt.t[i])) < eps);
    CHECK(std::abs(lt.h0[i] - sign * std::polar(1.0, lt.t[i] / 2)) < eps);
  }
}

TEST_CASE("liftable target moves nodes off the critical value") {
  const auto arc = UnitCircleArc::make(0.0, 1.0);
  const double eps = 0.04;
  const LiftableTarget lt = liftable_target(LiftFunction::square(), arc, [](Complex) { return Complex(0.0, 0.0); }, eps, 3);
  CHECK(lt.defect < eps);
  for (Complex w : lt.node_w) {
    CHECK(std::abs(w) > 0.0);
    CHECK(std::abs(w) <= eps / 4);
  }
  for (Complex v : lt.h0) CHECK(std::abs(v * v) < eps);
}

TEST_CASE("liftable target is reproducible for a fixed seed") {
  const auto arc = UnitCircleArc::make(0.0, 1.0);
  LiftableOptions opts;
  opts.seed = 99;
  auto h = [](Complex) { return Complex(0.0, 0.0); };
  const LiftableTarget a = liftable_target(LiftFunction::square(), arc, h, 0.04, 3, opts);
  const LiftableTarget b = liftable_target(LiftFunction::square(), arc, h, 0.04, 3, opts);
  CHECK(a.node_w == b.node_w);
  CHECK(a.h0 == b.h0);
}
