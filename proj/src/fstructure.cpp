#include "fgeom/fstructure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fgeom {

MetricFStructure::MetricFStructure(Chart chart_in, int s_in, EndomorphismField f_in,
                                   std::vector<VectorField> xi_in, std::vector<OneForm> eta_in,
                                   MetricField g_in)
    : chart(std::move(chart_in)),
      s(s_in),
      f(std::move(f_in)),
      xi(std::move(xi_in)),
      eta(std::move(eta_in)),
      g(std::move(g_in)) {
  if (s < 1) throw std::invalid_argument("MetricFStructure: s must be >= 1");
  const int d = chart.dim();
  if (d - s <= 0 || (d - s) % 2 != 0)
    throw std::invalid_argument("MetricFStructure: chart.dim - s must be even and positive");
  if (static_cast<int>(xi.size()) != s || static_cast<int>(eta.size()) != s)
    throw std::invalid_argument("MetricFStructure: need s structure fields and s forms");
  require_same_chart(chart, f.chart(), "MetricFStructure");
  require_same_chart(chart, g.chart(), "MetricFStructure");
  for (const auto& x : xi) require_same_chart(chart, x.chart(), "MetricFStructure");
  for (const auto& e : eta) require_same_chart(chart, e.chart(), "MetricFStructure");
}

void ValidationReport::add(std::string name, double residual, double tol) {
  const bool ok = residual < tol;
  checks.push_back({std::move(name), residual, tol, ok});
  max_residual = std::max(max_residual, residual);
  pass = pass && ok;
}

namespace {

struct StructureValues {
  Eigen::MatrixXd F;    // f^i_j
  Eigen::MatrixXd G;    // g_ij
  Eigen::MatrixXd H;    // s x d, row a = components of eta^a
  Eigen::MatrixXd Xi;   // d x s, column a = xi_a
};

StructureValues values_at(const MetricFStructure& S, const Point& p) {
  const int d = S.chart.dim();
  StructureValues v;
  v.F = S.f.matrix_at(p);
  v.G = S.g.matrix_at(p);
  v.H.resize(S.s, d);
  v.Xi.resize(d, S.s);
  for (int a = 0; a < S.s; ++a) {
    v.H.row(a) = S.eta[a].value_at(p).transpose();
    v.Xi.col(a) = S.xi[a].value_at(p);
  }
  return v;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

ValidationReport validate_axioms(const MetricFStructure& S, const std::vector<Point>& points,
                                 double tol) {
  const int d = S.chart.dim();
  double r_f2 = 0, r_etaxi = 0, r_fxi = 0, r_etaf = 0, r_metric = 0, r_etag = 0, r_skew = 0;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd Is = Eigen::MatrixXd::Identity(S.s, S.s);
  for (const Point& p : points) {
    const StructureValues v = values_at(S, p);
    Eigen::MatrixXd eta_xi = Eigen::MatrixXd::Zero(d, d);
    for (int a = 0; a < S.s; ++a) eta_xi += v.Xi.col(a) * v.H.row(a);
    r_f2 = std::max(r_f2, max_abs(v.F * v.F + I - eta_xi));
    r_etaxi = std::max(r_etaxi, max_abs(v.H * v.Xi - Is));
    r_fxi = std::max(r_fxi, max_abs(v.F * v.Xi));
    r_etaf = std::max(r_etaf, max_abs(v.H * v.F));
    r_metric = std::max(
        r_metric, max_abs(v.F.transpose() * v.G * v.F - v.G + v.H.transpose() * v.H));
    r_etag = std::max(r_etag, max_abs(v.G * v.Xi - v.H.transpose()));
    r_skew = std::max(r_skew, max_abs(v.G * v.F + v.F.transpose() * v.G));
  }
  ValidationReport rep;
  rep.add(check_names::kAxF2, r_f2, tol);
  rep.add(check_names::kAxEtaXi, r_etaxi, tol);
  rep.add(check_names::kAxFXi, r_fxi, tol);
  rep.add(check_names::kAxEtaF, r_etaf, tol);
  rep.add(check_names::kAxMetric, r_metric, tol);
  rep.add(check_names::kAxEtaG, r_etag, tol);
  rep.add(check_names::kAxSkew, r_skew, tol);
  return rep;
}

TwoForm fundamental_form(const MetricFStructure& S) {
  const int d = S.chart.dim();
  std::vector<ScalarField> comps;
  comps.reserve(d * d);
  // Phi_ij = sum_k g_ik f^k_j; fill the upper triangle and mirror so the
  // stored components are antisymmetric to the last bit.
  std::vector<ScalarField> upper;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (j > i) {
        ScalarField acc = constant(S.chart, 0.0);
        for (int k = 0; k < d; ++k) acc = acc + S.g.component(i, k) * S.f.component(k, j);
        upper.push_back(acc);
      }
    }
  auto upper_at = [&](int i, int j) -> const ScalarField& {
    // index into the packed strict upper triangle
    int idx = i * d - i * (i + 1) / 2 + (j - i - 1);
    return upper[idx];
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j)
        comps.push_back(constant(S.chart, 0.0));
      else if (j > i)
        comps.push_back(upper_at(i, j));
      else
        comps.push_back(-upper_at(j, i));
    }
  return TwoForm(S.chart, std::move(comps));
}

ValidationReport check_normality(const MetricFStructure& S, const std::vector<Point>& points,
                                 double tol) {
  const int d = S.chart.dim();
  std::vector<TwoForm> deta;
  deta.reserve(S.s);
  for (int a = 0; a < S.s; ++a) deta.push_back(exterior_d(S.eta[a]));
  std::vector<VectorField> coord;
  coord.reserve(d);
  for (int i = 0; i < d; ++i) coord.push_back(coordinate_field(S.chart, i));

  double res = 0;
  for (const Point& p : points) {
    Eigen::MatrixXd Xi(d, S.s);
    for (int a = 0; a < S.s; ++a) Xi.col(a) = S.xi[a].value_at(p);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Eigen::VectorXd N = nijenhuis(S.f, coord[i], coord[j], p);
        for (int a = 0; a < S.s; ++a)
          N += 2.0 * deta[a].component(i, j).value(p) * Xi.col(a);
        res = std::max(res, N.cwiseAbs().maxCoeff());
      }
  }
  ValidationReport rep;
  rep.add(check_names::kNormality, res, tol);
  return rep;
}

ValidationReport check_s_manifold(const MetricFStructure& S, const std::vector<Point>& points,
                                  double tol) {
  const int d = S.chart.dim();
  const TwoForm phi = fundamental_form(S);
  double res = 0;
  for (int a = 0; a < S.s; ++a) {
    const TwoForm da = exterior_d(S.eta[a]);
    for (const Point& p : points) {
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          res = std::max(res,
                         std::abs(da.component(i, j).value(p) - phi.component(i, j).value(p)));
    }
  }
  // Nondegeneracy surrogate: the f-basis frame must exist and be
  // orthonormal, i.e. {E_i, fE_i, xi_a} spans with nonsingular Gram matrix.
  double rank_res = 0;
  bool rank_ok = true;
  for (const Point& p : points) {
    try {
      const auto frame = f_basis(S, p, std::max(tol, 1e-9));
      const Eigen::MatrixXd G = S.g.matrix_at(p);
      Eigen::MatrixXd B(d, d);
      for (int i = 0; i < d; ++i) B.col(i) = frame[i];
      rank_res = std::max(
          rank_res, (B.transpose() * G * B - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff());
    } catch (const std::exception&) {
      rank_ok = false;
    }
  }
  ValidationReport rep;
  rep.add(check_names::kSManifoldDEta, res, tol);
  rep.add(check_names::kSManifoldRank, rank_ok ? rank_res : std::numeric_limits<double>::infinity(),
          std::max(tol, 1e-9));
  return rep;
}

Eigen::VectorXd l_project(const MetricFStructure& S, const Point& p,
                          const Eigen::VectorXd& v) {
  Eigen::VectorXd out = v;
  for (int a = 0; a < S.s; ++a) {
    const double c = S.eta[a].value_at(p).dot(v);
    out -= c * S.xi[a].value_at(p);
  }
  return out;
}

std::vector<Eigen::VectorXd> f_basis(const MetricFStructure& S, const Point& p, double tol) {
  const int d = S.chart.dim();
  const int n = S.n();
  const Eigen::MatrixXd G = S.g.matrix_at(p);
  const Eigen::MatrixXd F = S.f.matrix_at(p);

  std::vector<Eigen::VectorXd> E, fE;
  int coord_idx = 0;
  while (static_cast<int>(E.size()) < n) {
    if (coord_idx >= d)
      throw std::runtime_error("f_basis: Gram-Schmidt degenerated (rank-deficient structure)");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    v[coord_idx++] = 1.0;
    v = l_project(S, p, v);
    // two passes of g-orthogonalization against the accepted pairs
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < E.size(); ++k) {
        v -= (E[k].dot(G * v)) * E[k];
        v -= (fE[k].dot(G * v)) * fE[k];
      }
    }
    const double norm2 = v.dot(G * v);
    if (norm2 < 1e-8) continue;
    v /= std::sqrt(norm2);
    E.push_back(v);
    fE.push_back(F * v);
  }

  std::vector<Eigen::VectorXd> frame;
  frame.reserve(d);
  for (const auto& e : E) frame.push_back(e);
  for (const auto& e : fE) frame.push_back(e);
  for (int a = 0; a < S.s; ++a) frame.push_back(S.xi[a].value_at(p));

  Eigen::MatrixXd B(d, d);
  for (int i = 0; i < d; ++i) B.col(i) = frame[i];
  const double gram_res =
      (B.transpose() * G * B - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (gram_res > tol)
    throw std::runtime_error("f_basis: frame fails orthonormality (invalid structure)");
  return frame;
}

}  // namespace fgeom
