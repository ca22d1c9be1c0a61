#include "fgeom/curvature.hpp"

#include <cmath>

namespace fgeom {

double CurvatureAt::value(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                          const Eigen::VectorXd& Z, const Eigen::VectorXd& W) const {
  const int d = static_cast<int>(g.rows());
  double acc = 0;
  for (int i = 0; i < d; ++i) {
    if (X[i] == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      if (Y[j] == 0.0) continue;
      for (int k = 0; k < d; ++k) {
        if (Z[k] == 0.0) continue;
        double zc = X[i] * Y[j] * Z[k];
        for (int l = 0; l < d; ++l) acc += zc * W[l] * values(i, j, k, l);
      }
    }
  }
  return acc;
}

PlaneSection classify_section(const MetricFStructure& S, const Point& p,
                              const Eigen::VectorXd& X, const Eigen::VectorXd& Y, double tol) {
  PlaneSection sec{p, X, Y, SectionKind::mixed};
  double eta_x = 0, eta_y = 0;
  for (int a = 0; a < S.s; ++a) {
    eta_x = std::max(eta_x, std::abs(S.eta[a].value_at(p).dot(X)));
    eta_y = std::max(eta_y, std::abs(S.eta[a].value_at(p).dot(Y)));
  }
  const Eigen::MatrixXd F = S.f.matrix_at(p);
  const Eigen::VectorXd lx = l_project(S, p, X);
  const Eigen::VectorXd ly = l_project(S, p, Y);
  if (eta_x < tol && eta_y < tol) {
    // in the f-invariant distribution; an f-section has Y parallel to fX
    const Eigen::VectorXd fx = F * X;
    const Eigen::MatrixXd G = S.g.matrix_at(p);
    const double c = Y.dot(G * fx);
    const double ny = std::sqrt(Y.dot(G * Y));
    const double nfx = std::sqrt(fx.dot(G * fx));
    sec.kind = (std::abs(std::abs(c) - ny * nfx) < tol) ? SectionKind::f_section
                                                        : SectionKind::L_section;
  } else if (lx.cwiseAbs().maxCoeff() < tol && ly.cwiseAbs().maxCoeff() < tol) {
    sec.kind = SectionKind::structure;
  }
  return sec;
}

CurvatureAt riemann_tensor(const AffineConnection& conn, const MetricField& g,
                           const Point& p) {
  require_same_chart(conn.chart(), g.chart(), "riemann_tensor");
  require_same_chart(conn.chart(), p.chart, "riemann_tensor");
  const int d = p.dim();
  const auto table = conn.coeffs_at(p, 1);
  const Eigen::MatrixXd G = g.matrix_at(p);

  // up(l;i,j,k) = d_i Gamma^l_jk - d_j Gamma^l_ik
  //             + sum_m (Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik)
  Eigen::Tensor<double, 4> up(d, d, d, d);
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double v = table->at(l, j, k).grad[i] - table->at(l, i, k).grad[j];
          for (int m = 0; m < d; ++m)
            v += table->at(l, i, m).value * table->at(m, j, k).value -
                 table->at(l, j, m).value * table->at(m, i, k).value;
          up(l, i, j, k) = v;
        }

  CurvatureAt R;
  R.point = p;
  R.g = G;
  R.values.resize(d, d, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int w = 0; w < d; ++w) {
          double v = 0;
          for (int l = 0; l < d; ++l) v += up(l, i, j, k) * G(l, w);
          R.values(i, j, k, w) = v;
        }
  return R;
}

double sectional(const CurvatureAt& R, const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const double gxx = R.inner(X, X);
  const double gyy = R.inner(Y, Y);
  const double gxy = R.inner(X, Y);
  const double denom = gxx * gyy - gxy * gxy;
  if (denom <= 1e-12 * std::max(1.0, gxx * gyy))
    throw std::runtime_error("sectional: degenerate plane");
  return R.value(X, Y, Y, X) / denom;
}

double f_sectional(const CurvatureAt& R, const MetricFStructure& S, const Eigen::VectorXd& X) {
  const Eigen::MatrixXd F = S.f.matrix_at(R.point);
  return sectional(R, X, F * X);
}

double l_sectional(const CurvatureAt& R, const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  return sectional(R, X, Y);
}

double scalar_curvature(const CurvatureAt& R, const std::vector<Eigen::VectorXd>& frame) {
  double acc = 0;
  const int d = static_cast<int>(frame.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      acc += R.value(frame[i], frame[j], frame[j], frame[i]);
    }
  return 0.5 * acc;
}

namespace {

struct SpaceFormData {
  Eigen::MatrixXd A;    // A(i,j) = g(f d_i, f d_j)
  Eigen::MatrixXd Phi;  // Phi(i,j) = g(d_i, f d_j)
  Eigen::VectorXd h;    // h(i) = sum_a eta^a(d_i)
  double c, s;
};

SpaceFormData space_form_data(double c, const MetricFStructure& S, const Point& p) {
  const Eigen::MatrixXd F = S.f.matrix_at(p);
  const Eigen::MatrixXd G = S.g.matrix_at(p);
  SpaceFormData d;
  d.A = F.transpose() * G * F;
  d.Phi = G * F;
  d.h = Eigen::VectorXd::Zero(S.chart.dim());
  for (int a = 0; a < S.s; ++a) d.h += S.eta[a].value_at(p);
  d.c = c;
  d.s = static_cast<double>(S.s);
  return d;
}

double space_form_entry(const SpaceFormData& D, const Eigen::VectorXd& X,
                        const Eigen::VectorXd& Y, const Eigen::VectorXd& Z,
                        const Eigen::VectorXd& W) {
  const double aXW = X.dot(D.A * W), aXZ = X.dot(D.A * Z);
  const double aYZ = Y.dot(D.A * Z), aYW = Y.dot(D.A * W);
  const double pXW = X.dot(D.Phi * W), pXZ = X.dot(D.Phi * Z);
  const double pYZ = Y.dot(D.Phi * Z), pYW = Y.dot(D.Phi * W);
  const double pXY = X.dot(D.Phi * Y), pZW = Z.dot(D.Phi * W);
  const double hX = D.h.dot(X), hY = D.h.dot(Y), hZ = D.h.dot(Z), hW = D.h.dot(W);
  double v = aXW * hY * hZ - aXZ * hY * hW + aYZ * hX * hW - aYW * hX * hZ;
  v += (D.c + 3.0 * D.s) / 4.0 * (aXW * aYZ - aXZ * aYW);
  v += (D.c - D.s) / 4.0 * (pXW * pYZ - pXZ * pYW - 2.0 * pXY * pZW);
  return v;
}

}  // namespace

double space_form_tensor(double c, const MetricFStructure& S, const Eigen::VectorXd& X,
                         const Eigen::VectorXd& Y, const Eigen::VectorXd& Z,
                         const Eigen::VectorXd& W, const Point& p) {
  return space_form_entry(space_form_data(c, S, p), X, Y, Z, W);
}

Eigen::Tensor<double, 4> space_form_tensor_at(double c, const MetricFStructure& S,
                                              const Point& p) {
  const int d = S.chart.dim();
  const SpaceFormData D = space_form_data(c, S, p);
  Eigen::Tensor<double, 4> out(d, d, d, d);
  std::vector<Eigen::VectorXd> e(d, Eigen::VectorXd::Zero(d));
  for (int i = 0; i < d; ++i) e[i][i] = 1.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out(i, j, k, l) = space_form_entry(D, e[i], e[j], e[k], e[l]);
  return out;
}

double kl_closed_form(double c, int s, const MetricFStructure& S, const Eigen::VectorXd& X,
                      const Eigen::VectorXd& Y, const Point& p) {
  const Eigen::MatrixXd F = S.f.matrix_at(p);
  const Eigen::MatrixXd G = S.g.matrix_at(p);
  const double gxfy = X.dot(G * (F * Y));
  return (c + 3.0 * s) / 4.0 + 3.0 * (c - s) / 4.0 * gxfy * gxfy;
}

}  // namespace fgeom
