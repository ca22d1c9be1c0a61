#pragma once

#include <string>
#include <vector>

#include "fgeom/fields.hpp"

namespace fgeom {

/// The bundle (f, xi_1..xi_s, eta^1..eta^s, g) on a chart of dimension
/// 2n + s. Construction checks shapes only; the pointwise structure
/// equations are checked by validate_axioms and friends.
struct MetricFStructure {
  Chart chart;
  int s;
  EndomorphismField f;
  std::vector<VectorField> xi;
  std::vector<OneForm> eta;
  MetricField g;

  MetricFStructure(Chart chart, int s, EndomorphismField f, std::vector<VectorField> xi,
                   std::vector<OneForm> eta, MetricField g);

  int n() const { return (chart.dim() - s) / 2; }
};

struct IdentityCheck {
  std::string name;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<IdentityCheck> checks;
  double max_residual = 0.0;
  bool pass = true;

  void add(std::string name, double residual, double tol);
};

/// Max residual, per identity, of the structure equations
///   f^2 = -I + sum eta^a (x) xi_a,   eta^a(xi_b) = delta_ab,
///   f xi_a = 0,  eta^a o f = 0,
///   g(fX,fY) = g(X,Y) - sum eta^a(X) eta^a(Y),
///   eta^a(X) = g(X, xi_a),  g(X,fY) = -g(fX,Y)
/// over coordinate arguments at each point.
ValidationReport validate_axioms(const MetricFStructure& S, const std::vector<Point>& points,
                                 double tol);

/// Phi(X,Y) = g(X,fY), as an antisymmetric TwoForm.
TwoForm fundamental_form(const MetricFStructure& S);

/// Residual of [f,f] + 2 sum d eta^a (x) xi_a on coordinate pairs.
ValidationReport check_normality(const MetricFStructure& S, const std::vector<Point>& points,
                                 double tol);

/// Residual of d eta^a - Phi for every a, plus a frame-rank surrogate for
/// the nondegeneracy condition (the f-basis construction must succeed with
/// an orthonormal Gram matrix).
ValidationReport check_s_manifold(const MetricFStructure& S, const std::vector<Point>& points,
                                  double tol);

/// Ordered g-orthonormal tangent basis {E_1..E_n, fE_1..fE_n, xi_1..xi_s}
/// at p. Gram-Schmidt is seeded from the coordinate directions projected
/// onto the kernel of all eta^a; degeneracy throws.
std::vector<Eigen::VectorXd> f_basis(const MetricFStructure& S, const Point& p,
                                     double tol = 1e-9);

/// v minus its structure components: v - sum eta^a(v) xi_a at p.
Eigen::VectorXd l_project(const MetricFStructure& S, const Point& p,
                          const Eigen::VectorXd& v);

namespace check_names {
inline constexpr const char* kAxF2 = "axioms:f^2=-I+eta.xi";
inline constexpr const char* kAxEtaXi = "axioms:eta(xi)=delta";
inline constexpr const char* kAxFXi = "axioms:f.xi=0";
inline constexpr const char* kAxEtaF = "axioms:eta.f=0";
inline constexpr const char* kAxMetric = "axioms:g(fX,fY)=g(X,Y)-eta.eta";
inline constexpr const char* kAxEtaG = "axioms:eta(X)=g(X,xi)";
inline constexpr const char* kAxSkew = "axioms:g(X,fY)=-g(fX,Y)";
inline constexpr const char* kNormality = "normality:[f,f]+2.deta.xi=0";
inline constexpr const char* kSManifoldDEta = "s_manifold:deta=Phi";
inline constexpr const char* kSManifoldRank = "s_manifold:frame_rank";
}  // namespace check_names

}  // namespace fgeom
