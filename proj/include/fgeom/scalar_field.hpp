#pragma once

#include <memory>

#include "fgeom/chart.hpp"
#include "fgeom/jet.hpp"

namespace fgeom {

namespace detail {
/// Evaluation node of a scalar-field expression. Nodes are immutable and
/// shared; evaluation is pure.
struct FieldNode {
  virtual ~FieldNode() = default;
  virtual Jet eval(const Point& p, int order) const = 0;
};
}  // namespace detail

/// A smooth real-valued function on a chart with exact derivatives up to
/// third order at any point. Built from constants and coordinates via
/// +, -, *, scalar multiples, sqrt and the index-shift derivative; other
/// modules add composite nodes (Christoffel coefficients, pullbacks)
/// behind the same interface.
class ScalarField {
 public:
  ScalarField(Chart chart, std::shared_ptr<const detail::FieldNode> node)
      : chart_(std::move(chart)), node_(std::move(node)) {}

  const Chart& chart() const { return chart_; }

  Jet eval(const Point& p, int order) const {
    require_same_chart(chart_, p.chart, "ScalarField::eval");
    return node_->eval(p, order);
  }

  double value(const Point& p) const { return eval(p, 0).value; }
  Eigen::VectorXd gradient(const Point& p) const { return eval(p, 1).grad; }
  Eigen::MatrixXd hessian(const Point& p) const { return eval(p, 2).hess; }

  const std::shared_ptr<const detail::FieldNode>& node() const { return node_; }

 private:
  Chart chart_;
  std::shared_ptr<const detail::FieldNode> node_;
};

/// The field with value v everywhere; all derivatives vanish.
ScalarField constant(const Chart& chart, double v);

/// The i-th coordinate function.
ScalarField coordinate(const Chart& chart, int i);

/// The field d_i(f). Requesting derivatives of order k needs f at order
/// k+1, so its Hessian is the last exactly-known level.
ScalarField derivative(const ScalarField& f, int i);

/// sqrt(f). Evaluation throws when f <= domain_floor (out of the patch on
/// which the root is defined).
ScalarField sqrt(const ScalarField& f, double domain_floor = 0.0);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator*(double c, const ScalarField& a);
ScalarField operator*(const ScalarField& a, double c);
ScalarField operator+(const ScalarField& a, double c);
ScalarField operator+(double c, const ScalarField& a);
ScalarField operator-(const ScalarField& a, double c);
ScalarField operator-(double c, const ScalarField& a);

}  // namespace fgeom
