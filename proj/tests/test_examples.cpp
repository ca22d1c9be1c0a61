#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fgeom/curvature.hpp"
#include "fgeom/examples.hpp"

using namespace fgeom;

namespace {

std::vector<Point> sample(const NamedExample& ex, int n, std::uint64_t seed = 42) {
  CounterRng rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(ex.sample_point(rng));
  return pts;
}

}  // namespace

TEST_CASE("flat example basics") {
  const NamedExample ex = flat_example(1, 1);
  CHECK(ex.S.chart.dim() == 3);
  CHECK(ex.S.n() == 1);
  CHECK(ex.expected_c == doctest::Approx(-3.0));
  CHECK(validate_axioms(ex.S, sample(ex, 20), 1e-9).pass);
  CHECK_THROWS_AS(flat_example(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(flat_example(1, 0), std::invalid_argument);
}

TEST_CASE("flat example: g(xi_a, xi_b) = delta and f(dy_1) = dx_1 + y_1 sum dz_a") {
  const NamedExample ex = flat_example(2, 3);
  const MetricFStructure& S = ex.S;
  CounterRng rng(1);
  for (int k = 0; k < 5; ++k) {
    const Point p = ex.sample_point(rng);
    const Eigen::MatrixXd G = S.g.matrix_at(p);
    for (int a = 0; a < S.s; ++a)
      for (int b = 0; b < S.s; ++b)
        CHECK(S.xi[a].value_at(p).dot(G * S.xi[b].value_at(p)) ==
              doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
    // column of f at dy_1 (index m + 0 = 2)
    const Eigen::MatrixXd F = S.f.matrix_at(p);
    const double y1 = p.coords[2];
    CHECK(F(0, 2) == doctest::Approx(1.0));  // dx_1 part
    CHECK(F(1, 2) == doctest::Approx(0.0));
    CHECK(F(2, 2) == doctest::Approx(0.0));  // no dy part
    CHECK(F(3, 2) == doctest::Approx(0.0));
    for (int a = 0; a < 3; ++a)
      CHECK(F(4 + a, 2) == doctest::Approx(y1).epsilon(1e-13));  // y_1 dz_a
  }
}

TEST_CASE("identity embedding leaves all fields unchanged") {
  const NamedExample ex = flat_example(1, 2);
  const MetricFStructure& A = ex.S;
  Chart dom(A.chart.dim());
  std::vector<ScalarField> comps;
  for (int i = 0; i < dom.dim(); ++i) comps.push_back(coordinate(dom, i));
  const Embedding id(dom, A.chart, std::move(comps));
  const MetricFStructure P = pullback_structure(id, A.f, A.xi, A.eta, A.g);

  CounterRng rng(7);
  for (int k = 0; k < 5; ++k) {
    const Point p = ex.sample_point(rng);
    const Point pd = make_point(dom, p.coords);
    CHECK((P.g.matrix_at(pd) - A.g.matrix_at(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((P.f.matrix_at(pd) - A.f.matrix_at(p)).cwiseAbs().maxCoeff() < 1e-12);
    for (int a = 0; a < A.s; ++a) {
      CHECK((P.xi[a].value_at(pd) - A.xi[a].value_at(p)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((P.eta[a].value_at(pd) - A.eta[a].value_at(p)).cwiseAbs().maxCoeff() < 1e-12);
      // first derivatives survive unchanged as well
      CHECK((P.eta[a][0].gradient(pd) - A.eta[a][0].gradient(p)).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
}

TEST_CASE("sphere example: construction, dimensions, tangency of xi_s upstairs") {
  const NamedExample ex = sphere_example(1, 2);
  CHECK(ex.S.chart.dim() == 4);      // 2n + s
  CHECK(ex.embedding.has_value());
  CHECK(ex.embedding->ambient().dim() == 5);  // 2n + 2 + (s-1)
  CHECK(ex.expected_c == doctest::Approx(2.0));
  CHECK(ex.expected_tau == doctest::Approx(6.0));   // n s (2n+1)
  CHECK(ex.expected_tau_star == doctest::Approx(0.0));
  CHECK(ex.expected_tau_tilde == doctest::Approx(9.0));

  CounterRng rng(2);
  for (int k = 0; k < 10; ++k) {
    const Point p = ex.sample_point(rng);
    const Point q = ex.embedding->map(p);
    // the embedded point lies on the radius-2 sphere in the (x,y)-block
    double r2 = 0;
    for (int i = 0; i < 4; ++i) r2 += q.coords[i] * q.coords[i];
    CHECK(r2 == doctest::Approx(4.0).epsilon(1e-12));
    // xi_s is tangent: its (x,y)-block is Euclid-orthogonal to the position
    const Eigen::VectorXd xs = ex.ambient->xi[1].value_at(q);
    double dot = 0;
    for (int i = 0; i < 4; ++i) dot += xs[i] * q.coords[i];
    CHECK(dot == doctest::Approx(0.0).epsilon(1e-12));
    // Jacobian has full rank on the patch
    CHECK(ex.embedding->min_singular_value(p) > 1e-8);
  }
  CHECK_THROWS_AS(sphere_example(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sphere_example(0, 2), std::invalid_argument);
}

TEST_CASE("sphere example: pulled-back structure satisfies every axiom at 1e-8") {
  const NamedExample ex = sphere_example(1, 2);
  const auto pts = sample(ex, 20);
  const auto rep = validate_axioms(ex.S, pts, 1e-8);
  for (const auto& c : rep.checks) {
    INFO(c.name, " residual=", c.max_residual);
    CHECK(c.pass);
  }
  CHECK(check_normality(ex.S, pts, 1e-8).pass);
  CHECK(check_s_manifold(ex.S, pts, 1e-8).pass);
}

TEST_CASE("sphere example: f_pulled^2 = -I + sum eta (x) xi (the sharpest pullback test)") {
  const NamedExample ex = sphere_example(2, 2);
  const MetricFStructure& S = ex.S;
  CounterRng rng(3);
  const int d = S.chart.dim();
  for (int k = 0; k < 10; ++k) {
    const Point p = ex.sample_point(rng);
    const Eigen::MatrixXd F = S.f.matrix_at(p);
    Eigen::MatrixXd want = -Eigen::MatrixXd::Identity(d, d);
    for (int a = 0; a < S.s; ++a)
      want += S.xi[a].value_at(p) * S.eta[a].value_at(p).transpose();
    CHECK((F * F - want).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("sphere example: eta_pulled(xi_pulled) = delta and positive-definite metric") {
  const NamedExample ex = sphere_example(1, 2);
  const MetricFStructure& S = ex.S;
  CounterRng rng(4);
  for (int k = 0; k < 10; ++k) {
    const Point p = ex.sample_point(rng);
    for (int a = 0; a < S.s; ++a)
      for (int b = 0; b < S.s; ++b)
        CHECK(S.eta[a].value_at(p).dot(S.xi[b].value_at(p)) ==
              doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-8));
    const Eigen::MatrixXd G = S.g.matrix_at(p);
    CHECK((G - G.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("sphere example: f-sectional curvature equals s") {
  const NamedExample ex = sphere_example(1, 2);
  const MetricFStructure& S = ex.S;
  const AffineConnection lc = levi_civita(S.g);
  CounterRng rng(5);
  for (int k = 0; k < 5; ++k) {
    const Point p = ex.sample_point(rng);
    const CurvatureAt R = riemann_tensor(lc, S.g, p);
    Eigen::VectorXd v = l_project(S, p, rng.symmetric_vector(S.chart.dim()));
    const Eigen::MatrixXd G = S.g.matrix_at(p);
    v /= std::sqrt(v.dot(G * v));
    CHECK(f_sectional(R, S, v) == doctest::Approx(2.0).epsilon(1e-7));
  }
}

TEST_CASE("embedding evaluation outside the patch throws") {
  const NamedExample ex = sphere_example(1, 2);
  Eigen::VectorXd bad(4);
  bad << 1.9, 0.9, 0.9, 0.0;  // radicand = 4 - 3.61 - .81 - .81 < 0.25
  const Point p = make_point(ex.S.chart, bad);
  CHECK_THROWS_AS(ex.embedding->map(p), std::runtime_error);
}

TEST_CASE("pullback rejects non-tangent structure fields") {
  // Use the sphere ambient data but pass a xi field with a normal component.
  const NamedExample ex = sphere_example(1, 2);
  const Chart& A = ex.embedding->ambient();
  std::vector<ScalarField> bad_comps;
  for (int I = 0; I < A.dim(); ++I) bad_comps.push_back(coordinate(A, I));  // radial-ish
  std::vector<VectorField> xi_bad = ex.ambient->xi;
  xi_bad[0] = VectorField(A, std::move(bad_comps));
  const MetricFStructure s_bad = pullback_structure(*ex.embedding, ex.ambient->f, xi_bad,
                                                    ex.ambient->eta, ex.ambient->g, 1e-8);
  CounterRng rng(6);
  const Point p = ex.sample_point(rng);
  CHECK_THROWS_AS(s_bad.g.matrix_at(p), std::runtime_error);
}
