#include <doctest.h>

#include <memory>
#include <random>

#include "abel/probe.hpp"

using namespace abel;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::invalid_argument;
}

const FunctionExpr kIdentity = FunctionExpr::polynomial(ComplexPolynomial::identity());

ArcTarget constant(Complex c) {
  return [c](Complex) { return c; };
}

}  // namespace

TEST_CASE("left composition") {
  const FunctionExpr e = compose_left(LeftOp::exp(), FunctionExpr::polynomial(ComplexPolynomial()));
  for (Complex z : {Complex(0.0, 0.0), Complex(0.5, -0.3), Complex(-0.9, 0.1)}) CHECK(std::abs(e(z) - 1.0) < 1e-15);
  CHECK(e.kind() == FunctionExpr::Kind::Exp);

  const FunctionExpr sq = compose_left(LeftOp::polynomial(ComplexPolynomial({0.0, 0.0, 1.0})), kIdentity);
  for (Complex z : {Complex(0.2, 0.7), Complex(-0.4, -0.1)}) CHECK(std::abs(sq(z) - z * z) < 1e-15);

  const std::vector<Complex> pts{{0.1, 0.2}, {0.3, -0.4}};
  const std::vector<Complex> batch = sq.evaluate(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(batch[i] == sq(pts[i]));
}

TEST_CASE("reciprocal certificate") {
  const FunctionExpr shifted = FunctionExpr::polynomial(ComplexPolynomial({2.0, 1.0}));
  const std::vector<Complex> grid = scan_grid({UnitCircleArc::make(0.0, 1.0)}, RadiiSchedule::defaults(4), 3, 32);
  const FunctionExpr rec = compose_left(LeftOp::reciprocal(), shifted, grid);
  REQUIRE(rec.certificate().has_value());
  CHECK(rec.certificate()->min_modulus > 1.0);
  CHECK(rec.certificate()->grid_size == grid.size());
  CHECK(std::abs(rec({0.5, 0.0}) - 0.4) < 1e-15);

  CHECK(code_of([&] { compose_left(LeftOp::reciprocal(), kIdentity, {Complex(0.0, 0.0), Complex(0.5, 0.0)}); }) ==
        Errc::certificate_failure);
  CHECK(code_of([&] { compose_left(LeftOp::reciprocal(), shifted); }) == Errc::certificate_failure);
}

TEST_CASE("right composition") {
  const FunctionExpr f = compose_right(kIdentity, DiscAutomorphism(0.5));
  CHECK(std::abs(f(0.0) - 0.5) < 1e-15);
  CHECK(f.kind() == FunctionExpr::Kind::PreCompose);
  CHECK_FALSE(f.describe().empty());
}

TEST_CASE("dilate distance") {
  const auto arc = UnitCircleArc::make(0.3, 2.0);
  CHECK(dilate_distance(kIdentity, arc, [](Complex z) { return z; }, 0.9, 128) == doctest::Approx(0.1).epsilon(1e-13));
  const FunctionExpr two = FunctionExpr::polynomial(ComplexPolynomial::constant(2.0));
  CHECK(dilate_distance(two, arc, constant(2.0), 0.37, 64) == 0.0);
  CHECK(code_of([&] { dilate_distance(two, arc, constant(2.0), 1.0, 64); }) == Errc::domain);
}

TEST_CASE("rotations commute with dilation") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FunctionExpr f = FunctionExpr::polynomial(ComplexPolynomial({{0.1, 0.2}, {1.0, -0.5}, {0.0, 2.0}, 0.7}));
  const auto arc = UnitCircleArc::make(0.5, 1.5);
  const ComplexPolynomial q({1.0, {0.0, 1.0}, 0.3});
  for (int i = 0; i < 20; ++i) {
    const double theta = 4.0 * u(rng);
    const double r = 0.2 + 0.75 * u(rng);
    const FunctionExpr rotated = compose_right(f, DiscAutomorphism::rotation(theta));
    const double lhs = dilate_distance(rotated, arc, polynomial_target(q), r, 200);
    const auto moved = UnitCircleArc::make(arc.alpha + theta, arc.beta + theta);
    const double rhs = dilate_distance(f, moved, [&](Complex z) { return q(z * std::polar(1.0, -theta)); }, r, 200);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("universality scan bounds") {
  const DilateReport rep =
      universality_scan(kIdentity, {constant(5.0)}, {UnitCircleArc::make(0.0, 1.0), UnitCircleArc::make(2.0, 3.0)},
                        RadiiSchedule::defaults(6), 5, 64);
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.entries[1].arc_id == 1);
  CHECK_FALSE(rep.note.empty());
  for (const DilateEntry& e : rep.entries) {
    CHECK(e.errors.size() == 6);
    CHECK(e.best_error >= 4.0);
    for (double x : e.errors) CHECK(x >= 4.0);
  }
}

TEST_CASE("radial value coverage") {
  const FunctionExpr c = FunctionExpr::polynomial(ComplexPolynomial::constant({0.2, 0.1}));
  const std::vector<Complex> grid{{0.2, 0.1}, {0.25, 0.1}, {1.0, 1.0}, {-0.5, 0.0}};
  CHECK(radial_value_coverage(c, 1.0, RadiiSchedule::defaults(5), 4, grid, 0.1) == doctest::Approx(0.5));
  CHECK(radial_value_coverage(kIdentity, 1.0, RadiiSchedule::defaults(5), 4, {1.5, {0.0, 2.0}, -3.0}, 0.1) == 0.0);
  CHECK_THROWS(radial_value_coverage(kIdentity, 2.0, RadiiSchedule::defaults(5), 4, grid, 0.1));
}

TEST_CASE("series leaves evaluate the partial sums") {
  BuildConfig cfg;
  cfg.rho.r = {0.0, 0.5, 0.7};
  cfg.eps = EpsilonSchedule::defaults(3);
  cfg.enumeration.targets = {ComplexPolynomial::constant(1.0)};
  cfg.enumeration.arcs = {UnitCircleArc::make(0.0, 1.0)};
  cfg.enumeration.alpha = {0, 0};
  cfg.enumeration.beta = {0, 0};
  cfg.arc_density = 128;
  cfg.disc_density = 512;
  auto s = std::make_shared<const UniversalSeries>(build_membership_series(cfg, 2));
  const FunctionExpr full = FunctionExpr::series(s);
  const FunctionExpr first = FunctionExpr::series(s, 1);
  const Complex z(0.1, 0.6);
  CHECK(full(z) == s->evaluate(z));
  CHECK(first(z) == s->evaluate(z, 1));
  CHECK(dilate_distance(full, cfg.enumeration.arcs[0], constant(1.0), 0.7, 128) <= s->eps.sum(2, 2));
}
