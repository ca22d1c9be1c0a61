#pragma once

#include <cmath>
#include <vector>

#include "fgeom/scalar_field.hpp"

namespace fgeom {

/// Central finite differences used as an independent cross-check on the
/// forward-propagated derivatives. Step 1e-5 suits the unit-scale
/// coordinates the sample points use. The Hessian check differences the
/// exact gradient rather than double-differencing values: second
/// differences of values lose ~eps/h^2 ~ 2e-6 to round-off, past the 1e-6
/// gate, while a single central difference of the gradient stays ~1e-10.
inline constexpr double kFdStep = 1e-5;

inline Eigen::VectorXd fd_gradient(const ScalarField& f, const Point& p, double h = kFdStep) {
  const int d = p.dim();
  Eigen::VectorXd g(d);
  for (int i = 0; i < d; ++i) {
    Point a = p, b = p;
    a.coords[i] += h;
    b.coords[i] -= h;
    g[i] = (f.value(a) - f.value(b)) / (2.0 * h);
  }
  return g;
}

inline Eigen::MatrixXd fd_hessian(const ScalarField& f, const Point& p, double h = kFdStep) {
  const int d = p.dim();
  Eigen::MatrixXd H(d, d);
  for (int i = 0; i < d; ++i) {
    Point a = p, b = p;
    a.coords[i] += h;
    b.coords[i] -= h;
    H.col(i) = (f.gradient(a) - f.gradient(b)) / (2.0 * h);
  }
  return H;
}

/// Second differences of values only; coarser, used where a route fully
/// independent of the derivative rules is wanted.
inline Eigen::MatrixXd fd_hessian_values_only(const ScalarField& f, const Point& p,
                                              double h = 1e-4) {
  const int d = p.dim();
  Eigen::MatrixXd H(d, d);
  const double f0 = f.value(p);
  for (int i = 0; i < d; ++i) {
    Point a = p, b = p;
    a.coords[i] += h;
    b.coords[i] -= h;
    H(i, i) = (f.value(a) - 2.0 * f0 + f.value(b)) / (h * h);
    for (int j = i + 1; j < d; ++j) {
      Point pp = p, pm = p, mp = p, mm = p;
      pp.coords[i] += h; pp.coords[j] += h;
      pm.coords[i] += h; pm.coords[j] -= h;
      mp.coords[i] -= h; mp.coords[j] += h;
      mm.coords[i] -= h; mm.coords[j] -= h;
      H(i, j) = (f.value(pp) - f.value(pm) - f.value(mp) + f.value(mm)) / (4.0 * h * h);
      H(j, i) = H(i, j);
    }
  }
  return H;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max({1.0, std::abs(got), std::abs(want)});
}

struct FdReport {
  double grad_rel = 0.0;
  double hess_rel = 0.0;
  double hess_asym = 0.0;  // max |H_ij - H_ji|
};

/// Checks a batch of fields at one point with a shared probe set: exact
/// order-1 jets are evaluated at p +- h e_i once per probe and reused for
/// every field (values feed the gradient check, gradients the Hessian
/// check).
inline FdReport fd_check_fields(const std::vector<ScalarField>& fields, const Point& p,
                                double h = kFdStep) {
  const int d = p.dim();
  const std::size_t nf = fields.size();
  std::vector<Jet> center;
  center.reserve(nf);
  for (const auto& f : fields) center.push_back(f.eval(p, 2));

  FdReport rep;
  for (std::size_t k = 0; k < nf; ++k) {
    const Eigen::MatrixXd& H = center[k].hess;
    rep.hess_asym = std::max(rep.hess_asym, (H - H.transpose()).cwiseAbs().maxCoeff());
  }

  std::vector<Jet> ja, jb;
  ja.reserve(nf);
  jb.reserve(nf);
  for (int i = 0; i < d; ++i) {
    Point a = p, b = p;
    a.coords[i] += h;
    b.coords[i] -= h;
    // keep each probe point's evaluations together so shared per-point
    // caches behind the fields are hit rather than rebuilt per field
    ja.clear();
    jb.clear();
    for (std::size_t k = 0; k < nf; ++k) ja.push_back(fields[k].eval(a, 1));
    for (std::size_t k = 0; k < nf; ++k) jb.push_back(fields[k].eval(b, 1));
    for (std::size_t k = 0; k < nf; ++k) {
      const double fd_g = (ja[k].value - jb[k].value) / (2.0 * h);
      rep.grad_rel = std::max(rep.grad_rel, rel_err(center[k].grad[i], fd_g));
      for (int j = 0; j < d; ++j) {
        const double fd_h = (ja[k].grad[j] - jb[k].grad[j]) / (2.0 * h);
        rep.hess_rel = std::max(rep.hess_rel, rel_err(center[k].hess(i, j), fd_h));
      }
    }
  }
  return rep;
}

}  // namespace fgeom
