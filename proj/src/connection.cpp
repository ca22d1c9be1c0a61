#include "fgeom/connection.hpp"

#include <cmath>

namespace fgeom {
namespace detail {

/// Shared evaluation core: builds the full coefficient table at a point,
/// memoizing the most recent point so that per-entry field evaluations and
/// whole-table consumers (curvature) share one sweep.
struct ConnCore {
  virtual ~ConnCore() = default;
  virtual Chart chart() const = 0;
  virtual std::shared_ptr<const GammaTable> build(const Point& p, int order) const = 0;

  std::shared_ptr<const GammaTable> table_at(const Point& p, int order) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (memo_ && memo_coords_.size() == p.coords.size() && memo_coords_ == p.coords &&
          memo_->order >= order)
        return memo_;
    }
    auto table = build(p, order);
    {
      std::lock_guard<std::mutex> lock(mu_);
      memo_coords_ = p.coords;
      memo_ = table;
    }
    return table;
  }

 private:
  mutable std::mutex mu_;
  mutable Eigen::VectorXd memo_coords_;
  mutable std::shared_ptr<const GammaTable> memo_;
};

namespace {

struct LeviCivitaCore final : ConnCore {
  MetricField g;
  explicit LeviCivitaCore(MetricField g) : g(std::move(g)) {}
  Chart chart() const override { return g.chart(); }

  std::shared_ptr<const GammaTable> build(const Point& p, int order) const override {
    if (order > 2)
      throw std::runtime_error(
          "connection coefficients: request exceeds the supported derivative order");
    const int d = g.chart().dim();
    const auto mj = g.jets_at(p, order + 1);
    auto table = std::make_shared<GammaTable>();
    table->dim = d;
    table->order = order;
    table->jets.reserve(d * d * d);
    // cache the shifted jets d_i g_jl once (truncation guards against a
    // higher-order memo hit upstream)
    std::vector<Jet> dg;  // ((i*d)+j)*d+l
    dg.reserve(d * d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
          dg.push_back(derivative_jet(mj->entry(j, l, d).truncated(order + 1), i));
    auto dg_at = [&](int i, int j, int l) -> const Jet& { return dg[(i * d + j) * d + l]; };
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Jet acc(d, order);
          for (int l = 0; l < d; ++l) {
            Jet inv = mj->inv(k, l, d).truncated(order);
            acc = acc + inv * (dg_at(i, j, l) + dg_at(j, i, l) - dg_at(l, i, j));
          }
          table->jets.push_back(acc * 0.5);
        }
    return table;
  }
};

struct SemiSymmetricCore final : ConnCore {
  std::shared_ptr<const ConnCore> base;
  MetricFStructure S;
  bool metric_variant;  // true: nabla*, false: nabla~

  SemiSymmetricCore(std::shared_ptr<const ConnCore> base, MetricFStructure S,
                    bool metric_variant)
      : base(std::move(base)), S(std::move(S)), metric_variant(metric_variant) {}

  Chart chart() const override { return S.chart; }

  std::shared_ptr<const GammaTable> build(const Point& p, int order) const override {
    const int d = S.chart.dim();
    const auto base_table = base->table_at(p, order);
    // eta-sum and xi-sum jets at p
    std::vector<Jet> eta_sum(d, Jet(d, order)), xi_sum(d, Jet(d, order));
    for (int a = 0; a < S.s; ++a)
      for (int j = 0; j < d; ++j) {
        eta_sum[j] = eta_sum[j] + S.eta[a][j].eval(p, order);
        if (metric_variant) xi_sum[j] = xi_sum[j] + S.xi[a][j].eval(p, order);
      }
    std::shared_ptr<const MetricJets> mj;
    if (metric_variant) mj = S.g.jets_at(p, order);

    auto table = std::make_shared<GammaTable>();
    table->dim = d;
    table->order = order;
    table->jets.reserve(d * d * d);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Jet acc = base_table->at(k, i, j).truncated(order);
          if (k == i) acc = acc + eta_sum[j];
          if (metric_variant) acc = acc - mj->entry(i, j, d).truncated(order) * xi_sum[k];
          table->jets.push_back(acc);
        }
    return table;
  }
};

struct GammaEntryNode final : FieldNode {
  std::shared_ptr<const ConnCore> core;
  int k, i, j;
  GammaEntryNode(std::shared_ptr<const ConnCore> core, int k, int i, int j)
      : core(std::move(core)), k(k), i(i), j(j) {}
  Jet eval(const Point& p, int order) const override {
    return core->table_at(p, order)->at(k, i, j).truncated(order);
  }
};

}  // namespace
}  // namespace detail

AffineConnection::AffineConnection(std::shared_ptr<const detail::ConnCore> core,
                                   Provenance prov)
    : core_(std::move(core)), prov_(prov) {
  const Chart chart = core_->chart();
  const int d = chart.dim();
  gamma_fields_.reserve(d * d * d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        gamma_fields_.emplace_back(
            chart, std::make_shared<detail::GammaEntryNode>(core_, k, i, j));
}

const Chart& AffineConnection::chart() const { return gamma_fields_.front().chart(); }

const ScalarField& AffineConnection::gamma(int k, int i, int j) const {
  const int d = chart().dim();
  return gamma_fields_[(k * d + i) * d + j];
}

std::shared_ptr<const GammaTable> AffineConnection::coeffs_at(const Point& p,
                                                              int order) const {
  require_same_chart(chart(), p.chart, "AffineConnection::coeffs_at");
  return core_->table_at(p, order);
}

AffineConnection levi_civita(const MetricField& g) {
  return AffineConnection(std::make_shared<detail::LeviCivitaCore>(g),
                          Provenance::riemannian);
}

namespace {
std::shared_ptr<const detail::ConnCore> core_of(const AffineConnection& c,
                                                const MetricFStructure& S,
                                                bool metric_variant) {
  if (c.provenance() != Provenance::riemannian)
    throw std::invalid_argument("semi-symmetric connection: base must be the Riemannian one");
  require_same_chart(S.chart, c.chart(), "semi_symmetric connection");
  // Rebuild the base core from S.g; the base connection is required to be
  // levi_civita(S.g), which this reconstructs exactly.
  auto base = std::make_shared<detail::LeviCivitaCore>(S.g);
  return std::make_shared<detail::SemiSymmetricCore>(std::move(base), S, metric_variant);
}
}  // namespace

AffineConnection semi_symmetric_metric(const MetricFStructure& S, const AffineConnection& lc) {
  return AffineConnection(core_of(lc, S, true), Provenance::semi_symmetric_metric);
}

AffineConnection semi_symmetric_non_metric(const MetricFStructure& S,
                                           const AffineConnection& lc) {
  return AffineConnection(core_of(lc, S, false), Provenance::semi_symmetric_non_metric);
}

VectorField covariant_derivative(const AffineConnection& conn, const VectorField& X,
                                 const VectorField& Y) {
  require_same_chart(conn.chart(), X.chart(), "covariant_derivative");
  require_same_chart(conn.chart(), Y.chart(), "covariant_derivative");
  const Chart& chart = X.chart();
  const int d = chart.dim();
  std::vector<ScalarField> comps;
  comps.reserve(d);
  for (int k = 0; k < d; ++k) {
    ScalarField acc = constant(chart, 0.0);
    for (int i = 0; i < d; ++i) {
      acc = acc + X[i] * derivative(Y[k], i);
      for (int j = 0; j < d; ++j) acc = acc + conn.gamma(k, i, j) * X[i] * Y[j];
    }
    comps.push_back(acc);
  }
  return VectorField(chart, std::move(comps));
}

Eigen::VectorXd torsion(const AffineConnection& conn, const VectorField& X,
                        const VectorField& Y, const Point& p) {
  require_same_chart(conn.chart(), X.chart(), "torsion");
  require_same_chart(conn.chart(), Y.chart(), "torsion");
  const int d = p.dim();
  const auto table = conn.coeffs_at(p, 0);
  const Eigen::VectorXd xv = X.value_at(p);
  const Eigen::VectorXd yv = Y.value_at(p);
  // The partial-derivative terms of nabla_X Y - nabla_Y X - [X,Y] cancel
  // identically, leaving the coefficient part.
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (int k = 0; k < d; ++k) {
    double t = 0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        t += table->at(k, i, j).value * (xv[i] * yv[j] - yv[i] * xv[j]);
    out[k] = t;
  }
  return out;
}

double metric_compat_residual(const AffineConnection& conn, const MetricField& g,
                              const std::vector<Point>& points) {
  require_same_chart(conn.chart(), g.chart(), "metric_compat_residual");
  const int d = conn.chart().dim();
  double res = 0;
  for (const Point& p : points) {
    const auto mj = g.jets_at(p, 1);
    const auto table = conn.coeffs_at(p, 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double r = mj->entry(j, k, d).grad[i];
          for (int m = 0; m < d; ++m)
            r -= table->at(m, i, j).value * mj->entry(m, k, d).value +
                 table->at(m, i, k).value * mj->entry(j, m, d).value;
          res = std::max(res, std::abs(r));
        }
  }
  return res;
}

}  // namespace fgeom
