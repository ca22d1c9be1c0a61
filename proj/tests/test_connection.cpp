#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fgeom/connection.hpp"
#include "fgeom/examples.hpp"
#include "poly_oracle.hpp"

using namespace fgeom;

namespace {

std::vector<Point> sample(const NamedExample& ex, int n, std::uint64_t seed = 42) {
  CounterRng rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(ex.sample_point(rng));
  return pts;
}

MetricField euclidean_metric(const Chart& chart) {
  std::vector<ScalarField> comps;
  for (int i = 0; i < chart.dim(); ++i)
    for (int j = 0; j < chart.dim(); ++j)
      comps.push_back(constant(chart, i == j ? 1.0 : 0.0));
  return MetricField(chart, std::move(comps));
}

VectorField const_field(const Chart& chart, const Eigen::VectorXd& v) {
  std::vector<ScalarField> comps;
  for (int i = 0; i < chart.dim(); ++i) comps.push_back(constant(chart, v[i]));
  return VectorField(chart, std::move(comps));
}

}  // namespace

TEST_CASE("Euclidean metric: all coefficients vanish, covariant derivative is flat") {
  Chart r3(3);
  const MetricField g = euclidean_metric(r3);
  const AffineConnection lc = levi_civita(g);
  CHECK(lc.provenance() == Provenance::riemannian);
  const Point p = make_point(r3, Eigen::Vector3d(0.4, -0.2, 0.9));
  const auto table = lc.coeffs_at(p, 1);
  for (const Jet& j : table->jets) {
    CHECK(j.value == doctest::Approx(0.0));
    CHECK(j.grad.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  }
  CounterRng rng(1);
  const VectorField X = const_field(r3, rng.symmetric_vector(3));
  const VectorField Y = const_field(r3, rng.symmetric_vector(3));
  CHECK(covariant_derivative(lc, X, Y).value_at(p).norm() == doctest::Approx(0.0));
  CHECK(torsion(lc, X, Y, p).norm() == doctest::Approx(0.0));
}

TEST_CASE("flat(1,1) Christoffel coefficients match the hand-derived table") {
  // For g = eta (x) eta + (dx^2 + dy^2)/4 with eta = (dz - y dx)/2:
  //   Gamma^x_xy = y/2, Gamma^z_xy = (y^2-1)/2, Gamma^y_xx = -y,
  //   Gamma^y_xz = 1/2, Gamma^x_yz = -1/2, Gamma^z_yz = -y/2,
  //   Gamma^k_yy = Gamma^k_zz = 0.
  const NamedExample ex = flat_example(1, 1);
  const AffineConnection lc = levi_civita(ex.S.g);
  const double y = 2.0;
  const Point p = make_point(ex.S.chart, Eigen::Vector3d(0.3, y, -0.8));
  const auto t = lc.coeffs_at(p, 0);
  const int X = 0, Y = 1, Z = 2;
  CHECK(t->at(X, X, Y).value == doctest::Approx(y / 2).epsilon(1e-13));
  CHECK(t->at(Z, X, Y).value == doctest::Approx((y * y - 1) / 2).epsilon(1e-13));
  CHECK(t->at(Y, X, X).value == doctest::Approx(-y).epsilon(1e-13));
  CHECK(t->at(Y, X, Z).value == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(t->at(X, Y, Z).value == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(t->at(Z, Y, Z).value == doctest::Approx(-y / 2).epsilon(1e-13));
  for (int k = 0; k < 3; ++k) {
    CHECK(t->at(k, Y, Y).value == doctest::Approx(0.0));
    CHECK(t->at(k, Z, Z).value == doctest::Approx(0.0));
    // symmetry of the Riemannian coefficients
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(t->at(k, i, j).value ==
              doctest::Approx(t->at(k, j, i).value).epsilon(1e-12));
  }
}

TEST_CASE("coefficients match a finite-difference assembly of the same formula") {
  const NamedExample ex = flat_example(1, 1);
  const MetricField& g = ex.S.g;
  const AffineConnection lc = levi_civita(g);
  CounterRng rng(2);
  const Point p = ex.sample_point(rng);
  const int d = 3;
  const double h = 1e-5;

  // independent route: central differences of the metric matrix
  std::vector<Eigen::MatrixXd> dg(d);
  for (int i = 0; i < d; ++i) {
    Point a = p, b = p;
    a.coords[i] += h;
    b.coords[i] -= h;
    dg[i] = (g.matrix_at(a) - g.matrix_at(b)) / (2 * h);
  }
  const Eigen::MatrixXd ginv = g.inverse_at(p);
  const auto table = lc.coeffs_at(p, 0);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double want = 0;
        for (int l = 0; l < d; ++l)
          want += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        CHECK(table->at(k, i, j).value == doctest::Approx(want).epsilon(1e-6));
      }
}

TEST_CASE("Levi-Civita is metric and torsion free at sampled points") {
  const NamedExample ex = flat_example(2, 2);
  const AffineConnection lc = levi_civita(ex.S.g);
  const auto pts = sample(ex, 20);
  CHECK(metric_compat_residual(lc, ex.S.g, pts) < 1e-9);
  CounterRng rng(3);
  for (int k = 0; k < 5; ++k) {
    const Point& p = pts[k];
    const VectorField X = const_field(ex.S.chart, rng.symmetric_vector(6));
    const VectorField Y = const_field(ex.S.chart, rng.symmetric_vector(6));
    CHECK(torsion(lc, X, Y, p).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("semi-symmetric metric connection: compat, torsion formula, L-restriction") {
  const NamedExample ex = flat_example(2, 2);
  const MetricFStructure& S = ex.S;
  const AffineConnection lc = levi_civita(S.g);
  const AffineConnection ssm = semi_symmetric_metric(S, lc);
  CHECK(ssm.provenance() == Provenance::semi_symmetric_metric);
  const auto pts = sample(ex, 10);
  CHECK(metric_compat_residual(ssm, S.g, pts) < 1e-9);

  CounterRng rng(4);
  const int d = S.chart.dim();
  for (const Point& p : pts) {
    const Eigen::VectorXd xv = rng.symmetric_vector(d), yv = rng.symmetric_vector(d);
    const VectorField X = const_field(S.chart, xv), Y = const_field(S.chart, yv);
    Eigen::VectorXd expect = Eigen::VectorXd::Zero(d);
    for (int a = 0; a < S.s; ++a) {
      const Eigen::VectorXd eta = S.eta[a].value_at(p);
      expect += eta.dot(yv) * xv - eta.dot(xv) * yv;
    }
    CHECK((torsion(ssm, X, Y, p) - expect).cwiseAbs().maxCoeff() < 1e-9);

    // unit X in L: T*(X, xi_1) = X
    Eigen::VectorXd u = l_project(S, p, xv);
    const Eigen::MatrixXd G = S.g.matrix_at(p);
    u /= std::sqrt(u.dot(G * u));
    const VectorField U = const_field(S.chart, u);
    const VectorField Xi1 = const_field(S.chart, S.xi[0].value_at(p));
    CHECK((torsion(ssm, U, Xi1, p) - u).cwiseAbs().maxCoeff() < 1e-9);

    // for X, Y in L the correction reduces to -sum_a g(X,Y) xi_a
    Eigen::VectorXd ul = l_project(S, p, xv), vl = l_project(S, p, yv);
    const VectorField XL = const_field(S.chart, ul), YL = const_field(S.chart, vl);
    const Eigen::VectorXd diff = covariant_derivative(ssm, XL, YL).value_at(p) -
                                 covariant_derivative(lc, XL, YL).value_at(p);
    Eigen::VectorXd want = Eigen::VectorXd::Zero(d);
    for (int a = 0; a < S.s; ++a) want -= ul.dot(G * vl) * S.xi[a].value_at(p);
    CHECK((diff - want).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("semi-symmetric non-metric connection: torsion, non-metricity, L-restriction") {
  const NamedExample ex = flat_example(1, 2);
  const MetricFStructure& S = ex.S;
  const AffineConnection lc = levi_civita(S.g);
  const AffineConnection ssm = semi_symmetric_metric(S, lc);
  const AffineConnection ssnm = semi_symmetric_non_metric(S, lc);
  const auto pts = sample(ex, 10);
  const int d = S.chart.dim();

  // non-metric: the compatibility residual is genuinely large
  CHECK(metric_compat_residual(ssnm, S.g, pts) > 0.1);

  CounterRng rng(5);
  for (const Point& p : pts) {
    const Eigen::VectorXd xv = rng.symmetric_vector(d), yv = rng.symmetric_vector(d);
    const VectorField X = const_field(S.chart, xv), Y = const_field(S.chart, yv);
    // T~ = T* pointwise
    CHECK((torsion(ssnm, X, Y, p) - torsion(ssm, X, Y, p)).cwiseAbs().maxCoeff() < 1e-10);
    // antisymmetry
    CHECK((torsion(ssnm, X, Y, p) + torsion(ssnm, Y, X, p)).cwiseAbs().maxCoeff() < 1e-12);

    // (nabla~_X g)(Y,Z) = -sum_a (eta^a(Y) g(X,Z) + eta^a(Z) g(X,Y)) on coordinates
    const auto mj = S.g.jets_at(p, 1);
    const auto table = ssnm.coeffs_at(p, 0);
    const Eigen::MatrixXd G = S.g.matrix_at(p);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double lhs = mj->entry(j, k, d).grad[i];
          for (int m = 0; m < d; ++m)
            lhs -= table->at(m, i, j).value * G(m, k) + table->at(m, i, k).value * G(j, m);
          double rhs = 0;
          for (int a = 0; a < S.s; ++a) {
            const Eigen::VectorXd eta = S.eta[a].value_at(p);
            rhs -= eta[j] * G(i, k) + eta[k] * G(i, j);
          }
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }

    // Y in L: the correction vanishes
    const Eigen::VectorXd vl = l_project(S, p, yv);
    const VectorField YL = const_field(S.chart, vl);
    CHECK((covariant_derivative(ssnm, X, YL).value_at(p) -
           covariant_derivative(lc, X, YL).value_at(p))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("coefficient difference formulas hold exactly") {
  const NamedExample ex = flat_example(2, 2);
  const MetricFStructure& S = ex.S;
  const AffineConnection lc = levi_civita(S.g);
  const AffineConnection ssm = semi_symmetric_metric(S, lc);
  const AffineConnection ssnm = semi_symmetric_non_metric(S, lc);
  CounterRng rng(6);
  const int d = S.chart.dim();
  for (int trial = 0; trial < 5; ++trial) {
    const Point p = ex.sample_point(rng);
    const auto t0 = lc.coeffs_at(p, 0);
    const auto ts = ssm.coeffs_at(p, 0);
    const auto tn = ssnm.coeffs_at(p, 0);
    const Eigen::MatrixXd G = S.g.matrix_at(p);
    Eigen::VectorXd eta_sum = Eigen::VectorXd::Zero(d), xi_sum = Eigen::VectorXd::Zero(d);
    for (int a = 0; a < S.s; ++a) {
      eta_sum += S.eta[a].value_at(p);
      xi_sum += S.xi[a].value_at(p);
    }
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const double base = t0->at(k, i, j).value;
          const double corr_nm = (k == i ? eta_sum[j] : 0.0);
          CHECK(tn->at(k, i, j).value == doctest::Approx(base + corr_nm).epsilon(1e-13));
          CHECK(ts->at(k, i, j).value ==
                doctest::Approx(base + corr_nm - G(i, j) * xi_sum[k]).epsilon(1e-13));
        }
  }
}

TEST_CASE("covariant derivative: tensorial in X, Leibniz in Y") {
  const NamedExample ex = flat_example(1, 1);
  const MetricFStructure& S = ex.S;
  const AffineConnection lc = levi_civita(S.g);
  CounterRng rng(7);
  const int d = S.chart.dim();
  std::vector<ScalarField> xc, yc;
  for (int i = 0; i < d; ++i) {
    xc.push_back(testutil::random_poly(rng, d, 2, 3).to_field(S.chart));
    yc.push_back(testutil::random_poly(rng, d, 2, 3).to_field(S.chart));
  }
  const VectorField X(S.chart, std::move(xc)), Y(S.chart, std::move(yc));
  const ScalarField phi = testutil::random_poly(rng, d, 2, 3).to_field(S.chart);

  const VectorField dxy = covariant_derivative(lc, X, Y);
  const VectorField d_phix_y = covariant_derivative(lc, phi * X, Y);
  const VectorField d_x_phiy = covariant_derivative(lc, X, phi * Y);
  for (int k = 0; k < 6; ++k) {
    const Point p = ex.sample_point(rng);
    CHECK((d_phix_y.value_at(p) - phi.value(p) * dxy.value_at(p)).cwiseAbs().maxCoeff() <
          1e-10);
    const double xphi = phi.gradient(p).dot(X.value_at(p));
    const Eigen::VectorXd leibniz = xphi * Y.value_at(p) + phi.value(p) * dxy.value_at(p);
    CHECK((d_x_phiy.value_at(p) - leibniz).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("gamma fields expose exact derivatives (flat case)") {
  const NamedExample ex = flat_example(1, 1);
  const AffineConnection lc = levi_civita(ex.S.g);
  // Gamma^z_xy = (y^2 - 1)/2: gradient (0, y, 0), Hessian y-diagonal 1
  const ScalarField gzxy = lc.gamma(2, 0, 1);
  const Point p = make_point(ex.S.chart, Eigen::Vector3d(0.2, 1.7, 0.4));
  CHECK(gzxy.value(p) == doctest::Approx((1.7 * 1.7 - 1) / 2).epsilon(1e-13));
  const Eigen::VectorXd g = gzxy.gradient(p);
  CHECK(g[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(0.0).epsilon(1e-12));
  const Eigen::MatrixXd H = gzxy.hessian(p);
  CHECK(H(1, 1) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(std::abs(H(0, 0)) < 1e-11);
}

TEST_CASE("derived connections require a Riemannian base") {
  const NamedExample ex = flat_example(1, 1);
  const AffineConnection lc = levi_civita(ex.S.g);
  const AffineConnection ssm = semi_symmetric_metric(ex.S, lc);
  CHECK_THROWS_AS(semi_symmetric_metric(ex.S, ssm), std::invalid_argument);
}
