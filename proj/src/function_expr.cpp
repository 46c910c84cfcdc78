#include <cmath>
#include <sstream>

#include "abel/probe.hpp"

namespace abel {

struct FunctionExpr::Node {
  Kind kind = Kind::Polynomial;
  ComplexPolynomial poly;
  std::shared_ptr<const UniversalSeries> series;
  int upto = -1;
  DiscAutomorphism phi;
  std::optional<ReciprocalCertificate> cert;
  std::shared_ptr<const Node> child;
};

namespace {

constexpr double kReciprocalFloor = 1e-6;

Complex reciprocal_checked(Complex v) {
  if (!(std::abs(v) > kReciprocalFloor)) throw Error(Errc::certificate_failure, "reciprocal argument below 1e-6");
  return 1.0 / v;
}

Complex apply_unary(const FunctionExpr::Node& n, Complex v) {
  switch (n.kind) {
    case FunctionExpr::Kind::Exp: return std::exp(v);
    case FunctionExpr::Kind::Reciprocal: return reciprocal_checked(v);
    case FunctionExpr::Kind::PolynomialOut: return n.poly(v);
    default: return v;
  }
}

Complex eval(const FunctionExpr::Node& n, Complex z) {
  switch (n.kind) {
    case FunctionExpr::Kind::Polynomial: return n.poly(z);
    case FunctionExpr::Kind::Series: return n.series->evaluate(z, n.upto);
    case FunctionExpr::Kind::PreCompose: return eval(*n.child, n.phi(z));
    default: return apply_unary(n, eval(*n.child, z));
  }
}

std::vector<Complex> eval_batch(const FunctionExpr::Node& n, const std::vector<Complex>& z) {
  switch (n.kind) {
    case FunctionExpr::Kind::Polynomial: {
      std::vector<Complex> out(z.size());
      n.poly.evaluate(z, out);
      return out;
    }
    case FunctionExpr::Kind::Series: return n.series->evaluate(z, n.upto);
    case FunctionExpr::Kind::PreCompose: {
      std::vector<Complex> w(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) w[i] = n.phi(z[i]);
      return eval_batch(*n.child, w);
    }
    default: {
      std::vector<Complex> v = eval_batch(*n.child, z);
      for (Complex& x : v) x = apply_unary(n, x);
      return v;
    }
  }
}

void describe_node(const FunctionExpr::Node& n, std::ostream& os) {
  switch (n.kind) {
    case FunctionExpr::Kind::Polynomial: os << "poly[deg " << n.poly.degree() << "]"; return;
    case FunctionExpr::Kind::Series: os << n.series->kind << "[" << (n.upto < 0 ? n.series->built_stages() : n.upto) << " stages]"; return;
    case FunctionExpr::Kind::Exp: os << "exp("; break;
    case FunctionExpr::Kind::Reciprocal: os << "1/("; break;
    case FunctionExpr::Kind::PolynomialOut: os << "P[deg " << n.poly.degree() << "]("; break;
    case FunctionExpr::Kind::PreCompose:
      describe_node(*n.child, os);
      os << " o phi[a=" << n.phi.a() << ",theta=" << n.phi.theta() << "]";
      return;
  }
  describe_node(*n.child, os);
  os << ")";
}

}  // namespace

FunctionExpr FunctionExpr::polynomial(ComplexPolynomial p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Polynomial;
  n->poly = std::move(p);
  return FunctionExpr(n);
}

FunctionExpr FunctionExpr::series(std::shared_ptr<const UniversalSeries> s, int upto) {
  if (!s) throw Error(Errc::invalid_argument, "null series");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Series;
  n->series = std::move(s);
  n->upto = upto;
  return FunctionExpr(n);
}

FunctionExpr::Kind FunctionExpr::kind() const { return node_->kind; }

std::string FunctionExpr::describe() const {
  std::ostringstream os;
  describe_node(*node_, os);
  return os.str();
}

std::optional<ReciprocalCertificate> FunctionExpr::certificate() const { return node_->cert; }

Complex FunctionExpr::operator()(Complex z) const { return eval(*node_, z); }

std::vector<Complex> FunctionExpr::evaluate(const std::vector<Complex>& z) const { return eval_batch(*node_, z); }

FunctionExpr compose_left(const LeftOp& g, const FunctionExpr& f, const std::vector<Complex>& probe_grid) {
  auto n = std::make_shared<FunctionExpr::Node>();
  n->child = f.node_;
  switch (g.kind) {
    case LeftOp::Kind::Exp: n->kind = FunctionExpr::Kind::Exp; break;
    case LeftOp::Kind::Polynomial:
      n->kind = FunctionExpr::Kind::PolynomialOut;
      n->poly = g.p;
      break;
    case LeftOp::Kind::Reciprocal: {
      n->kind = FunctionExpr::Kind::Reciprocal;
      if (probe_grid.empty()) throw Error(Errc::certificate_failure, "reciprocal needs a probe grid");
      const std::vector<Complex> v = f.evaluate(probe_grid);
      ReciprocalCertificate c;
      c.grid_size = probe_grid.size();
      c.min_modulus = std::abs(v.front());
      for (const Complex& x : v) c.min_modulus = std::min(c.min_modulus, std::abs(x));
      if (!(c.min_modulus > kReciprocalFloor)) throw Error(Errc::certificate_failure, "argument dips below 1e-6 on the probe grid");
      n->cert = c;
      break;
    }
  }
  return FunctionExpr(n);
}

FunctionExpr compose_right(const FunctionExpr& f, const DiscAutomorphism& phi) {
  auto n = std::make_shared<FunctionExpr::Node>();
  n->kind = FunctionExpr::Kind::PreCompose;
  n->phi = phi;
  n->child = f.node_;
  return FunctionExpr(n);
}

}  // namespace abel
