#pragma once

#include <unsupported/Eigen/CXX11/Tensor>

#include "fgeom/connection.hpp"

namespace fgeom {

/// The full (0,4) curvature value array at a single point on coordinate
/// arguments, lowered with g. No symmetry beyond antisymmetry in the first
/// pair is assumed; the semi-symmetric non-metric connection genuinely
/// breaks pair symmetry.
struct CurvatureAt {
  Point point;
  Eigen::Tensor<double, 4> values;  // (i,j,k,l) = R(d_i, d_j, d_k, d_l)
  Eigen::MatrixXd g;                // metric matrix at the point

  double operator()(int i, int j, int k, int l) const { return values(i, j, k, l); }
  /// R(X,Y,Z,W) by contraction with tangent vectors at the point.
  double value(const Eigen::VectorXd& X, const Eigen::VectorXd& Y, const Eigen::VectorXd& Z,
               const Eigen::VectorXd& W) const;
  double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    return a.dot(g * b);
  }
};

/// Classification of a 2-plane at a point relative to a structure.
enum class SectionKind { L_section, f_section, mixed, structure };

struct PlaneSection {
  Point point;
  Eigen::VectorXd X, Y;
  SectionKind kind = SectionKind::mixed;
};

PlaneSection classify_section(const MetricFStructure& S, const Point& p,
                              const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                              double tol = 1e-9);

/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z on the
/// coordinate frame, assembled from the coefficient jets and lowered with
/// g: R(X,Y,Z,W) = g(R(X,Y)Z, W).
CurvatureAt riemann_tensor(const AffineConnection& conn, const MetricField& g, const Point& p);

/// K(X,Y) = R(X,Y,Y,X) / (g(X,X) g(Y,Y) - g(X,Y)^2), in exactly this
/// argument order; for the non-metric connection the value is direction
/// sensitive and is reported as written.
double sectional(const CurvatureAt& R, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

/// Sectional curvature of the plane (X, fX) for unit X in the kernel of
/// all eta^a.
double f_sectional(const CurvatureAt& R, const MetricFStructure& S, const Eigen::VectorXd& X);

/// Sectional curvature of a plane inside the distribution orthogonal to
/// the structure vector fields.
double l_sectional(const CurvatureAt& R, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

/// tau = (1/2) sum_{i != j} R(e_i, e_j, e_j, e_i) over an orthonormal
/// frame, summed over ordered pairs in this raw argument order.
double scalar_curvature(const CurvatureAt& R, const std::vector<Eigen::VectorXd>& frame);

/// The closed-form curvature tensor of a space of constant f-sectional
/// curvature c:
///   R(X,Y,Z,W) = h(Y)h(Z) g(fX,fW) - h(Y)h(W) g(fX,fZ)
///              + h(X)h(W) g(fY,fZ) - h(X)h(Z) g(fY,fW)
///              + (c+3s)/4 [g(fX,fW) g(fY,fZ) - g(fX,fZ) g(fY,fW)]
///              + (c-s)/4 [Phi(X,W)Phi(Y,Z) - Phi(X,Z)Phi(Y,W)
///                         - 2 Phi(X,Y)Phi(Z,W)],
/// with h = sum_a eta^a and Phi(X,Y) = g(X,fY).
double space_form_tensor(double c, const MetricFStructure& S, const Eigen::VectorXd& X,
                         const Eigen::VectorXd& Y, const Eigen::VectorXd& Z,
                         const Eigen::VectorXd& W, const Point& p);

/// The same tensor on all coordinate quadruples.
Eigen::Tensor<double, 4> space_form_tensor_at(double c, const MetricFStructure& S,
                                              const Point& p);

/// K_L(X,Y) = (c+3s)/4 + 3(c-s)/4 g(X,fY)^2 for orthonormal X, Y in the
/// f-invariant distribution.
double kl_closed_form(double c, int s, const MetricFStructure& S, const Eigen::VectorXd& X,
                      const Eigen::VectorXd& Y, const Point& p);

}  // namespace fgeom
