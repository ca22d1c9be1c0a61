#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "fgeom/fstructure.hpp"

namespace fgeom {

enum class Provenance { riemannian, semi_symmetric_metric, semi_symmetric_non_metric };

/// All connection coefficients at one point: values and, when order >= 1,
/// first derivatives. Index convention: gamma(k,i,j) is the coefficient of
/// d_k in nabla_{d_i} d_j, so the first lower index is the direction.
struct GammaTable {
  int dim = 0;
  int order = 0;
  std::vector<Jet> jets;  // ((k*d)+i)*d+j
  const Jet& at(int k, int i, int j) const { return jets[(k * dim + i) * dim + j]; }
};

namespace detail {
struct ConnCore;
}

/// A linear connection represented by coefficient fields Gamma^k_ij over a
/// chart. The coefficients stay exactly differentiable ScalarFields, so
/// curvature can consume their first derivatives without numeric
/// differentiation; coeffs_at computes a whole table at a point in one
/// sweep (backed by the same evaluation path as the per-entry fields).
class AffineConnection {
 public:
  AffineConnection(std::shared_ptr<const detail::ConnCore> core, Provenance prov);

  const Chart& chart() const;
  Provenance provenance() const { return prov_; }

  /// Gamma^k_ij as a ScalarField.
  const ScalarField& gamma(int k, int i, int j) const;

  std::shared_ptr<const GammaTable> coeffs_at(const Point& p, int order) const;

 private:
  std::shared_ptr<const detail::ConnCore> core_;
  Provenance prov_;
  std::vector<ScalarField> gamma_fields_;
};

/// Gamma^k_ij = g^{kl} (d_i g_jl + d_j g_il - d_l g_ij) / 2.
AffineConnection levi_civita(const MetricField& g);

/// nabla*_X Y = nabla_X Y + sum_a eta^a(Y) X - sum_a g(X,Y) xi_a, i.e.
/// Gamma*^k_ij = Gamma^k_ij + sum_a eta^a_j delta^k_i - g_ij sum_a xi_a^k.
AffineConnection semi_symmetric_metric(const MetricFStructure& S, const AffineConnection& lc);

/// nabla~_X Y = nabla_X Y + sum_a eta^a(Y) X.
AffineConnection semi_symmetric_non_metric(const MetricFStructure& S,
                                           const AffineConnection& lc);

/// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_ij X^i Y^j, as a VectorField.
VectorField covariant_derivative(const AffineConnection& conn, const VectorField& X,
                                 const VectorField& Y);

/// T(X,Y) = nabla_X Y - nabla_Y X - [X,Y] at p.
Eigen::VectorXd torsion(const AffineConnection& conn, const VectorField& X,
                        const VectorField& Y, const Point& p);

/// max over coordinate triples and points of
///   |X g(Y,Z) - g(nabla_X Y, Z) - g(Y, nabla_X Z)|.
double metric_compat_residual(const AffineConnection& conn, const MetricField& g,
                              const std::vector<Point>& points);

}  // namespace fgeom
