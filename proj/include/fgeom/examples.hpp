#pragma once

#include <optional>
#include <string>

#include "fgeom/fstructure.hpp"
#include "fgeom/rng.hpp"

namespace fgeom {

/// A smooth map between charts, components given by ScalarFields over the
/// domain chart, with an exact Jacobian.
class Embedding {
 public:
  Embedding(Chart domain, Chart ambient, std::vector<ScalarField> components);

  const Chart& domain() const { return domain_; }
  const Chart& ambient() const { return ambient_; }
  const ScalarField& component(int I) const { return comps_[I]; }

  Point map(const Point& p) const;
  /// N x d matrix of exact partials d_a e^I.
  Eigen::MatrixXd jacobian(const Point& p) const;
  double min_singular_value(const Point& p) const;

 private:
  Chart domain_, ambient_;
  std::vector<ScalarField> comps_;
};

/// Restrict an ambient bundle (f, xi_a, eta^a, g) to the domain chart of an
/// embedding:
///   g_pulled(u,v)   = (Ju)^T G (Jv)
///   eta_pulled(v)   = eta(Jv)
///   xi_pulled       solves J xi_pulled = xi in G-weighted least squares;
///                   the residual must vanish (xi must be tangent)
///   f_pulled        = (J^T G J)^{-1} J^T G F J, the G-orthogonal
///                   projection of F J back onto the tangent space.
/// The projection weight is the ambient metric: for the hypersurface
/// structures handled here f maps some tangent vectors off the tangent
/// space, and only the metric-orthogonal projection reproduces the induced
/// structure (the Euclidean one leaves an O(1) defect in f xi = 0).
/// Everything stays exactly differentiable through second derivatives of
/// the pulled metric.
MetricFStructure pullback_structure(const Embedding& e, const EndomorphismField& f,
                                    const std::vector<VectorField>& xi,
                                    const std::vector<OneForm>& eta, const MetricField& g,
                                    double tangency_tol = 1e-8);

/// A concrete structure with its expected constants.
struct NamedExample {
  std::string tag;  // "flat" | "sphere"
  int m = 0, t = 0;  // flat parameters
  int n = 0, s = 0;  // sphere parameters
  MetricFStructure S;
  double expected_c = 0;     // constant f-sectional curvature
  bool kl_constant = false;  // whether K_L is constant on this example
  double expected_kl = 0;    // its value when constant
  double expected_tau = 0;
  double expected_tau_star = 0;
  double expected_tau_tilde = 0;
  std::optional<Embedding> embedding;  // sphere only

  struct AmbientBundle {
    EndomorphismField f;
    std::vector<VectorField> xi;
    std::vector<OneForm> eta;
    MetricField g;
  };
  std::shared_ptr<const AmbientBundle> ambient;  // sphere only

  Point sample_point(CounterRng& rng) const;
};

/// R^{2m+t} with coordinates (x_1..x_m, y_1..y_m, z_1..z_t) and the
/// standard structure
///   xi_a = 2 d/dz_a,  eta^a = (dz_a - sum_i y_i dx_i) / 2,
///   g = sum_a eta^a (x) eta^a + (sum_i dx_i^2 + dy_i^2) / 4,
///   f: (X_i, Y_i, Z_a) -> (Y_i, -X_i, sum_i Y_i y_i),
/// of constant f-sectional curvature -3t.
NamedExample flat_example(int m, int t);

/// S^{2n+1}(2) x R^{s-1} inside R^{2n+2+(s-1)}: the flat structure with an
/// extra structure field
///   xi_s = sum_i (-y_i d/dx_i + x_i d/dy_i) - sum_i sum_a y_i^2 d/dz_a,
/// deformed by xi~ = s xi, eta~ = eta/s, f~ = f,
/// g~ = g/s + (1-s)/s^2 sum eta (x) eta, then restricted to the graph
/// chart x_{n+1} = sqrt(4 - sum'(x_i^2 + y_i^2) - y_{n+1}^2). Constant
/// f-sectional curvature s.
NamedExample sphere_example(int n, int s);

}  // namespace fgeom
