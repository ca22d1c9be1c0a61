#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fgeom/chart.hpp"
#include "fgeom/scalar_field.hpp"

namespace fgeom {

/// Contravariant vector field: dim component ScalarFields.
class VectorField {
 public:
  VectorField(Chart chart, std::vector<ScalarField> comps);
  const Chart& chart() const { return chart_; }
  const ScalarField& operator[](int i) const { return comps_[i]; }
  Eigen::VectorXd value_at(const Point& p) const;

 private:
  Chart chart_;
  std::vector<ScalarField> comps_;
};

/// Covariant 1-form: dim component ScalarFields.
class OneForm {
 public:
  OneForm(Chart chart, std::vector<ScalarField> comps);
  const Chart& chart() const { return chart_; }
  const ScalarField& operator[](int i) const { return comps_[i]; }
  Eigen::VectorXd value_at(const Point& p) const;

 private:
  Chart chart_;
  std::vector<ScalarField> comps_;
};

/// Antisymmetric (0,2) field, stored densely row-major.
class TwoForm {
 public:
  TwoForm(Chart chart, std::vector<ScalarField> comps);
  const Chart& chart() const { return chart_; }
  const ScalarField& component(int i, int j) const { return comps_[i * chart_.dim() + j]; }
  Eigen::MatrixXd value_at(const Point& p) const;

 private:
  Chart chart_;
  std::vector<ScalarField> comps_;
};

/// (1,1) tensor field, components f^i_j row-major (row = output index).
class EndomorphismField {
 public:
  EndomorphismField(Chart chart, std::vector<ScalarField> comps);
  const Chart& chart() const { return chart_; }
  const ScalarField& component(int i, int j) const { return comps_[i * chart_.dim() + j]; }
  Eigen::MatrixXd matrix_at(const Point& p) const;
  /// The image of the j-th coordinate field as a VectorField.
  VectorField column(int j) const;

 private:
  Chart chart_;
  std::vector<ScalarField> comps_;
};

/// Per-point jet tables of a metric: all entries at `order`, plus the
/// entrywise jets of the inverse at min(order, 2).
struct MetricJets {
  int order = -1;
  std::vector<Jet> entries;  // row-major d*d
  std::vector<Jet> inverse;  // row-major d*d, order min(order, 2)
  const Jet& entry(int i, int j, int d) const { return entries[i * d + j]; }
  const Jet& inv(int i, int j, int d) const { return inverse[i * d + j]; }
};

/// Symmetric positive-definite (0,2) field. Whole-point jet tables are
/// memoized so that the many per-entry evaluations a curvature pass makes
/// at one point share a single sweep over the component fields.
class MetricField {
 public:
  MetricField(Chart chart, std::vector<ScalarField> comps);
  const Chart& chart() const { return chart_; }
  const ScalarField& component(int i, int j) const { return comps_[i * chart_.dim() + j]; }
  Eigen::MatrixXd matrix_at(const Point& p) const;
  Eigen::MatrixXd inverse_at(const Point& p) const;
  std::shared_ptr<const MetricJets> jets_at(const Point& p, int order) const;

 private:
  Chart chart_;
  std::vector<ScalarField> comps_;
  struct Cache {
    std::mutex mu;
    Eigen::VectorXd coords;
    std::shared_ptr<const MetricJets> jets;
  };
  std::shared_ptr<Cache> cache_;
};

/// [X,Y]^k = sum_i (X^i d_i Y^k - Y^i d_i X^k).
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Exterior derivative with the 1/2 normalization:
///   d eta(X,Y) = (X eta(Y) - Y eta(X) - eta([X,Y])) / 2,
/// i.e. components (d_i eta_j - d_j eta_i) / 2. This is the factor under
/// which the standard flat structure satisfies d eta^a = Phi; see README.
TwoForm exterior_d(const OneForm& eta);

/// Nijenhuis torsion [f,f](X,Y) = f^2[X,Y] + [fX,fY] - f[fX,Y] - f[X,fY],
/// evaluated at p.
Eigen::VectorXd nijenhuis(const EndomorphismField& f, const VectorField& X,
                          const VectorField& Y, const Point& p);

/// Pointwise and field-level contractions.
ScalarField metric_pair(const MetricField& g, const VectorField& X, const VectorField& Y);
double metric_pair_at(const MetricField& g, const VectorField& X, const VectorField& Y,
                      const Point& p);
VectorField endo_apply(const EndomorphismField& f, const VectorField& X);
ScalarField oneform_apply(const OneForm& eta, const VectorField& X);
double two_form_apply(const TwoForm& w, const VectorField& X, const VectorField& Y,
                      const Point& p);
Eigen::MatrixXd metric_inverse_at(const MetricField& g, const Point& p);

/// Coordinate field d/dx_i.
VectorField coordinate_field(const Chart& chart, int i);

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const ScalarField& s, const VectorField& X);
VectorField operator*(double c, const VectorField& X);

}  // namespace fgeom
