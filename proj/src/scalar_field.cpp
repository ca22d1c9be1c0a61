#include "fgeom/scalar_field.hpp"

#include <utility>

namespace fgeom {
namespace {

using detail::FieldNode;
using NodePtr = std::shared_ptr<const FieldNode>;

struct ConstantNode final : FieldNode {
  double v;
  explicit ConstantNode(double v) : v(v) {}
  Jet eval(const Point& p, int order) const override {
    Jet j(p.dim(), order);
    j.value = v;
    return j;
  }
};

struct CoordinateNode final : FieldNode {
  int i;
  explicit CoordinateNode(int i) : i(i) {}
  Jet eval(const Point& p, int order) const override {
    Jet j(p.dim(), order);
    j.value = p.coords[i];
    if (order >= 1) j.grad[i] = 1.0;
    return j;
  }
};

struct AddNode final : FieldNode {
  NodePtr a, b;
  AddNode(NodePtr a, NodePtr b) : a(std::move(a)), b(std::move(b)) {}
  Jet eval(const Point& p, int order) const override {
    return a->eval(p, order) + b->eval(p, order);
  }
};

struct SubNode final : FieldNode {
  NodePtr a, b;
  SubNode(NodePtr a, NodePtr b) : a(std::move(a)), b(std::move(b)) {}
  Jet eval(const Point& p, int order) const override {
    return a->eval(p, order) - b->eval(p, order);
  }
};

struct MulNode final : FieldNode {
  NodePtr a, b;
  MulNode(NodePtr a, NodePtr b) : a(std::move(a)), b(std::move(b)) {}
  Jet eval(const Point& p, int order) const override {
    return a->eval(p, order) * b->eval(p, order);
  }
};

struct AffineNode final : FieldNode {  // c0 + c1 * f
  double c0, c1;
  NodePtr f;
  AffineNode(double c0, double c1, NodePtr f) : c0(c0), c1(c1), f(std::move(f)) {}
  Jet eval(const Point& p, int order) const override {
    Jet j = f->eval(p, order) * c1;
    j.value += c0;
    return j;
  }
};

struct SqrtNode final : FieldNode {
  NodePtr f;
  double floor;
  SqrtNode(NodePtr f, double floor) : f(std::move(f)), floor(floor) {}
  Jet eval(const Point& p, int order) const override {
    Jet u = f->eval(p, order);
    if (!(u.value > floor))
      throw std::runtime_error("sqrt field: point outside the coordinate patch");
    return sqrt_jet(u);
  }
};

struct DerivNode final : FieldNode {
  NodePtr f;
  int i;
  DerivNode(NodePtr f, int i) : f(std::move(f)), i(i) {}
  Jet eval(const Point& p, int order) const override {
    if (order + 1 > Jet::kMaxOrder)
      throw std::runtime_error(
          "derivative field: request exceeds the supported derivative order (3)");
    return derivative_jet(f->eval(p, order + 1), i);
  }
};

NodePtr node_of(const ScalarField& f) { return f.node(); }

}  // namespace

ScalarField constant(const Chart& chart, double v) {
  return ScalarField(chart, std::make_shared<ConstantNode>(v));
}

ScalarField coordinate(const Chart& chart, int i) {
  if (i < 0 || i >= chart.dim()) throw std::invalid_argument("coordinate: index out of range");
  return ScalarField(chart, std::make_shared<CoordinateNode>(i));
}

ScalarField derivative(const ScalarField& f, int i) {
  if (i < 0 || i >= f.chart().dim())
    throw std::invalid_argument("derivative: index out of range");
  return ScalarField(f.chart(), std::make_shared<DerivNode>(node_of(f), i));
}

ScalarField sqrt(const ScalarField& f, double domain_floor) {
  return ScalarField(f.chart(), std::make_shared<SqrtNode>(node_of(f), domain_floor));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart(), b.chart(), "ScalarField operator+");
  return ScalarField(a.chart(), std::make_shared<AddNode>(node_of(a), node_of(b)));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart(), b.chart(), "ScalarField operator-");
  return ScalarField(a.chart(), std::make_shared<SubNode>(node_of(a), node_of(b)));
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart(), b.chart(), "ScalarField operator*");
  return ScalarField(a.chart(), std::make_shared<MulNode>(node_of(a), node_of(b)));
}

ScalarField operator-(const ScalarField& a) {
  return ScalarField(a.chart(), std::make_shared<AffineNode>(0.0, -1.0, node_of(a)));
}

ScalarField operator*(double c, const ScalarField& a) {
  return ScalarField(a.chart(), std::make_shared<AffineNode>(0.0, c, node_of(a)));
}

ScalarField operator*(const ScalarField& a, double c) { return c * a; }

ScalarField operator+(const ScalarField& a, double c) {
  return ScalarField(a.chart(), std::make_shared<AffineNode>(c, 1.0, node_of(a)));
}

ScalarField operator+(double c, const ScalarField& a) { return a + c; }

ScalarField operator-(const ScalarField& a, double c) { return a + (-c); }

ScalarField operator-(double c, const ScalarField& a) {
  return ScalarField(a.chart(), std::make_shared<AffineNode>(c, -1.0, node_of(a)));
}

}  // namespace fgeom
