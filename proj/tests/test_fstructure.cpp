#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fgeom/examples.hpp"
#include "fgeom/fstructure.hpp"

using namespace fgeom;

namespace {

std::vector<Point> sample(const NamedExample& ex, int n, std::uint64_t seed = 42) {
  CounterRng rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(ex.sample_point(rng));
  return pts;
}

/// The same structure with xi_1 scaled by 2 (eta untouched) — a deliberate
/// violation of eta(xi) = delta.
MetricFStructure scale_xi(const MetricFStructure& S, double factor) {
  std::vector<VectorField> xi = S.xi;
  xi[0] = factor * xi[0];
  return MetricFStructure(S.chart, S.s, S.f, std::move(xi), S.eta, S.g);
}

MetricFStructure negate_f(const MetricFStructure& S) {
  const int d = S.chart.dim();
  std::vector<ScalarField> comps;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) comps.push_back(-S.f.component(i, j));
  return MetricFStructure(S.chart, S.s, EndomorphismField(S.chart, std::move(comps)), S.xi,
                          S.eta, S.g);
}

MetricFStructure scale_eta(const MetricFStructure& S, double factor) {
  const int d = S.chart.dim();
  std::vector<OneForm> eta = S.eta;
  std::vector<ScalarField> comps;
  for (int i = 0; i < d; ++i) comps.push_back(factor * eta[0][i]);
  eta[0] = OneForm(S.chart, std::move(comps));
  return MetricFStructure(S.chart, S.s, S.f, S.xi, std::move(eta), S.g);
}

}  // namespace

TEST_CASE("flat structures satisfy all axioms at 1e-9") {
  for (auto [m, t] : {std::pair{1, 1}, {2, 2}, {3, 1}}) {
    const NamedExample ex = flat_example(m, t);
    const auto rep = validate_axioms(ex.S, sample(ex, 20), 1e-9);
    CHECK(rep.pass);
    CHECK(rep.max_residual < 1e-9);
  }
}

TEST_CASE("scaling xi_1 by 2 breaks eta(xi) = delta with residual 1") {
  const NamedExample ex = flat_example(1, 1);
  const auto rep = validate_axioms(scale_xi(ex.S, 2.0), sample(ex, 5), 1e-9);
  CHECK(!rep.pass);
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == check_names::kAxEtaXi) {
      found = true;
      CHECK(c.max_residual == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(!c.pass);
    }
  CHECK(found);
}

TEST_CASE("fundamental form values on the flat structure") {
  const NamedExample ex = flat_example(1, 1);
  const MetricFStructure& S = ex.S;
  const TwoForm phi = fundamental_form(S);
  CounterRng rng(3);
  for (int k = 0; k < 10; ++k) {
    const Point p = ex.sample_point(rng);
    CHECK(phi.component(0, 1).value(p) == doctest::Approx(0.25).epsilon(1e-12));
    // Phi(xi, X) = 0 for every coordinate field
    const Eigen::MatrixXd M = phi.value_at(p);
    const Eigen::VectorXd xi = S.xi[0].value_at(p);
    CHECK((xi.transpose() * M).cwiseAbs().maxCoeff() < 1e-12);
    // Phi(X, fX) = -g(fX, fX) < 0 for X in L
    Eigen::VectorXd v = l_project(S, p, rng.symmetric_vector(3));
    const Eigen::MatrixXd F = S.f.matrix_at(p);
    const Eigen::MatrixXd G = S.g.matrix_at(p);
    const Eigen::VectorXd fv = F * v;
    const double lhs = v.dot(M * fv);
    CHECK(lhs == doctest::Approx(-fv.dot(G * fv)).epsilon(1e-10));
    CHECK(lhs < 0.0);
  }
}

TEST_CASE("normality holds on flat structures and breaks under xi scaling") {
  const NamedExample ex = flat_example(1, 1);
  const auto pts = sample(ex, 10);
  CHECK(check_normality(ex.S, pts, 1e-9).pass);

  const auto broken = check_normality(scale_xi(ex.S, 2.0), pts, 1e-9);
  CHECK(!broken.pass);
  CHECK(broken.max_residual == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("negating f keeps normality but breaks d.eta = Phi") {
  // [f,f] is even in f on this structure (the only nonconstant entries
  // f^z_{y_i} = y_i have symmetric mixed partials), so normality survives
  // the sign flip; the S-condition d.eta = Phi fails at the |Phi| scale
  // because Phi flips sign.
  const NamedExample ex = flat_example(1, 1);
  const auto pts = sample(ex, 10);
  const MetricFStructure neg = negate_f(ex.S);
  const auto norm = check_normality(neg, pts, 1e-9);
  CHECK(norm.max_residual < 1e-12);
  const auto smf = check_s_manifold(neg, pts, 1e-9);
  CHECK(!smf.pass);
  CHECK(smf.max_residual > 0.4);  // 2|Phi(dx,dy)| = 1/2
}

TEST_CASE("s-manifold condition holds on flat structures, doubling eta breaks it") {
  const NamedExample ex = flat_example(2, 2);
  const auto pts = sample(ex, 10);
  CHECK(check_s_manifold(ex.S, pts, 1e-9).pass);

  const auto broken = check_s_manifold(scale_eta(ex.S, 2.0), pts, 1e-9);
  CHECK(!broken.pass);
  CHECK(broken.max_residual > 0.2);  // d(2 eta) - Phi = Phi at the (x,y) slot
}

TEST_CASE("f-basis: orthonormal, eta-free, middle block is exactly f of the first") {
  const NamedExample ex = flat_example(2, 1);
  const MetricFStructure& S = ex.S;
  CounterRng rng(4);
  for (int k = 0; k < 5; ++k) {
    const Point p = ex.sample_point(rng);
    const auto frame = f_basis(S, p, 1e-9);
    const int d = S.chart.dim(), n = S.n();
    REQUIRE(static_cast<int>(frame.size()) == d);

    const Eigen::MatrixXd G = S.g.matrix_at(p);
    Eigen::MatrixXd B(d, d);
    for (int i = 0; i < d; ++i) B.col(i) = frame[i];
    CHECK((B.transpose() * G * B - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <
          1e-9);

    const Eigen::MatrixXd F = S.f.matrix_at(p);
    for (int i = 0; i < n; ++i) {
      // exact componentwise equality: the middle block is f applied to the first
      CHECK((frame[n + i] - F * frame[i]).cwiseAbs().maxCoeff() == 0.0);
      CHECK((F * frame[n + i] + frame[i]).cwiseAbs().maxCoeff() < 1e-9);  // f(fE) = -E
      for (int a = 0; a < S.s; ++a) {
        CHECK(std::abs(S.eta[a].value_at(p).dot(frame[i])) < 1e-9);
        CHECK(std::abs(S.eta[a].value_at(p).dot(frame[n + i])) < 1e-9);
      }
    }
    for (int a = 0; a < S.s; ++a)
      CHECK((frame[2 * n + a] - S.xi[a].value_at(p)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("f^3 + f = 0 and the trace identities of Eq-style compatibility") {
  const NamedExample ex = flat_example(2, 3);
  const MetricFStructure& S = ex.S;
  CounterRng rng(5);
  for (int k = 0; k < 10; ++k) {
    const Point p = ex.sample_point(rng);
    const Eigen::MatrixXd F = S.f.matrix_at(p);
    CHECK((F * F * F + F).cwiseAbs().maxCoeff() < 1e-9);

    // g(fX,fX) = g(X,X) - sum eta(X)^2 >= 0, and = 1 on unit X in L
    const Eigen::MatrixXd G = S.g.matrix_at(p);
    const Eigen::VectorXd v = rng.symmetric_vector(S.chart.dim());
    double eta2 = 0;
    for (int a = 0; a < S.s; ++a) {
      const double e = S.eta[a].value_at(p).dot(v);
      eta2 += e * e;
    }
    const Eigen::VectorXd fv = F * v;
    CHECK(fv.dot(G * fv) == doctest::Approx(v.dot(G * v) - eta2).epsilon(1e-10));
    CHECK(fv.dot(G * fv) >= -1e-12);

    Eigen::VectorXd u = l_project(S, p, v);
    u /= std::sqrt(u.dot(G * u));
    const Eigen::VectorXd fu = F * u;
    CHECK(fu.dot(G * fu) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("f-basis throws on a rank-deficient structure") {
  // zero out f entirely: fE_1 has zero norm, Gram fails
  const NamedExample ex = flat_example(1, 1);
  const MetricFStructure& S = ex.S;
  const int d = S.chart.dim();
  std::vector<ScalarField> zf(d * d, constant(S.chart, 0.0));
  const MetricFStructure broken(S.chart, S.s, EndomorphismField(S.chart, std::move(zf)), S.xi,
                                S.eta, S.g);
  CounterRng rng(6);
  const Point p = ex.sample_point(rng);
  CHECK_THROWS_AS(f_basis(broken, p, 1e-9), std::runtime_error);
}

TEST_CASE("structure constructor rejects dimension mismatches") {
  const NamedExample e11 = flat_example(1, 1);
  // s = 2 on a 3-dimensional chart leaves odd 2n
  CHECK_THROWS_AS(MetricFStructure(e11.S.chart, 2, e11.S.f,
                                   {e11.S.xi[0], e11.S.xi[0]}, {e11.S.eta[0], e11.S.eta[0]},
                                   e11.S.g),
                  std::invalid_argument);
  CHECK_THROWS_AS(MetricFStructure(e11.S.chart, 1, e11.S.f, {}, {e11.S.eta[0]}, e11.S.g),
                  std::invalid_argument);
}
