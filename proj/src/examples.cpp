#include "fgeom/examples.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <mutex>

namespace fgeom {

Embedding::Embedding(Chart domain, Chart ambient, std::vector<ScalarField> components)
    : domain_(std::move(domain)), ambient_(std::move(ambient)), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != ambient_.dim())
    throw std::invalid_argument("Embedding: need one component per ambient coordinate");
  if (ambient_.dim() < domain_.dim())
    throw std::invalid_argument("Embedding: ambient dim must be >= domain dim");
  for (const auto& c : comps_) require_same_chart(domain_, c.chart(), "Embedding");
}

Point Embedding::map(const Point& p) const {
  Eigen::VectorXd q(ambient_.dim());
  for (int I = 0; I < ambient_.dim(); ++I) q[I] = comps_[I].value(p);
  return Point{ambient_, std::move(q)};
}

Eigen::MatrixXd Embedding::jacobian(const Point& p) const {
  Eigen::MatrixXd J(ambient_.dim(), domain_.dim());
  for (int I = 0; I < ambient_.dim(); ++I) J.row(I) = comps_[I].gradient(p).transpose();
  return J;
}

double Embedding::min_singular_value(const Point& p) const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian(p));
  return svd.singularValues().minCoeff();
}

namespace detail {

/// Whole-point jet tables of a pulled-back bundle, memoized per point.
struct PullbackCore {
  explicit PullbackCore(Embedding e, double tol) : emb(std::move(e)), tangency_tol(tol) {}

  Embedding emb;
  std::vector<ScalarField> g_amb;                 // N*N row-major
  std::vector<ScalarField> f_amb;                 // N*N row-major
  std::vector<std::vector<ScalarField>> xi_amb;   // s lists of N
  std::vector<std::vector<ScalarField>> eta_amb;  // s lists of N
  double tangency_tol;

  struct Tables {
    int order = -1;
    std::vector<Jet> g, ginv, f;          // d*d each
    std::vector<std::vector<Jet>> xi;     // s of d
    std::vector<std::vector<Jet>> eta;    // s of d
  };

  mutable std::mutex mu;
  mutable Eigen::VectorXd memo_coords;
  mutable std::shared_ptr<const Tables> memo;

  std::shared_ptr<const Tables> tables_at(const Point& p, int order) const {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (memo && memo_coords.size() == p.coords.size() && memo_coords == p.coords &&
          memo->order >= order)
        return memo;
    }
    auto tables = build(p, order);
    {
      std::lock_guard<std::mutex> lock(mu);
      memo_coords = p.coords;
      memo = tables;
    }
    return tables;
  }

  std::shared_ptr<const Tables> build(const Point& p, int order) const {
    if (order > 2)
      throw std::runtime_error(
          "pullback fields: request exceeds the supported derivative order");
    const int d = emb.domain().dim();
    const int N = emb.ambient().dim();
    const int s = static_cast<int>(xi_amb.size());

    // Embedding jets one order up feed both the Jacobian entries and the
    // chain rule.
    std::vector<Jet> e_hi, e_lo;
    e_hi.reserve(N);
    e_lo.reserve(N);
    for (int I = 0; I < N; ++I) {
      e_hi.push_back(emb.component(I).eval(p, order + 1));
      e_lo.push_back(e_hi.back().truncated(order));
    }
    Eigen::VectorXd q(N);
    for (int I = 0; I < N; ++I) q[I] = e_hi[I].value;
    const Point pq{emb.ambient(), q};

    Eigen::MatrixXd J0(N, d);
    for (int I = 0; I < N; ++I) J0.row(I) = e_hi[I].grad.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J0);
    if (svd.singularValues().minCoeff() <= 1e-8)
      throw std::runtime_error("pullback: embedding Jacobian is rank deficient");

    // J entry jets d_a e^I at the requested order.
    std::vector<std::vector<Jet>> Jj(N);
    for (int I = 0; I < N; ++I) {
      Jj[I].reserve(d);
      for (int a = 0; a < d; ++a) Jj[I].push_back(derivative_jet(e_hi[I], a));
    }

    auto pull_scalar = [&](const ScalarField& ambient_field) {
      return compose_jet(ambient_field.eval(pq, order), e_lo);
    };

    // Ambient entry jets composed with the embedding.
    std::vector<Jet> Gj, Fj;
    Gj.reserve(N * N);
    Fj.reserve(N * N);
    for (int I = 0; I < N; ++I)
      for (int Jx = 0; Jx < N; ++Jx) {
        Gj.push_back(pull_scalar(g_amb[I * N + Jx]));
        Fj.push_back(pull_scalar(f_amb[I * N + Jx]));
      }
    std::vector<std::vector<Jet>> Xj(s), Ej(s);
    for (int a = 0; a < s; ++a) {
      Xj[a].reserve(N);
      Ej[a].reserve(N);
      for (int I = 0; I < N; ++I) {
        Xj[a].push_back(pull_scalar(xi_amb[a][I]));
        Ej[a].push_back(pull_scalar(eta_amb[a][I]));
      }
    }

    auto tables = std::make_shared<Tables>();
    tables->order = order;

    // K(I,b) = sum_J G_IJ (d_b e^J)
    std::vector<Jet> K(N * d, Jet(d, order));
    for (int I = 0; I < N; ++I)
      for (int b = 0; b < d; ++b) {
        Jet acc(d, order);
        for (int Jx = 0; Jx < N; ++Jx) acc = acc + Gj[I * N + Jx] * Jj[Jx][b];
        K[I * d + b] = acc;
      }

    tables->g.assign(d * d, Jet(d, order));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Jet acc(d, order);
        for (int I = 0; I < N; ++I) acc = acc + Jj[I][a] * K[I * d + b];
        tables->g[a * d + b] = acc;
      }
    tables->ginv = jet_matrix_inverse(tables->g, d);

    tables->eta.assign(s, std::vector<Jet>(d, Jet(d, order)));
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < d; ++b) {
        Jet acc(d, order);
        for (int I = 0; I < N; ++I) acc = acc + Ej[a][I] * Jj[I][b];
        tables->eta[a][b] = acc;
      }

    // xi solves the normal equations (J^T G J) xi = J^T G xi_amb in jets.
    tables->xi.assign(s, std::vector<Jet>(d, Jet(d, order)));
    for (int a = 0; a < s; ++a) {
      std::vector<Jet> rhs(d, Jet(d, order));
      for (int b = 0; b < d; ++b) {
        Jet acc(d, order);
        for (int I = 0; I < N; ++I) {
          Jet gx(d, order);
          for (int Jx = 0; Jx < N; ++Jx) gx = gx + Gj[I * N + Jx] * Xj[a][Jx];
          acc = acc + Jj[I][b] * gx;
        }
        rhs[b] = acc;
      }
      for (int c = 0; c < d; ++c) {
        Jet acc(d, order);
        for (int b = 0; b < d; ++b) acc = acc + tables->ginv[c * d + b] * rhs[b];
        tables->xi[a][c] = acc;
      }
      // tangency: the solve must reproduce xi_amb exactly
      Eigen::VectorXd xi_dom = Eigen::VectorXd::Zero(d);
      for (int c = 0; c < d; ++c) xi_dom[c] = tables->xi[a][c].value;
      Eigen::VectorXd xi_up = Eigen::VectorXd::Zero(N);
      for (int I = 0; I < N; ++I) xi_up[I] = Xj[a][I].value;
      const double res = (J0 * xi_dom - xi_up).norm();
      if (res > tangency_tol)
        throw std::runtime_error(
            "pullback: structure vector field is not tangent (wrong chart or field)");
    }

    // f = ginv J^T G F J
    std::vector<Jet> FJ(N * d, Jet(d, order)), GFJ(N * d, Jet(d, order));
    for (int I = 0; I < N; ++I)
      for (int b = 0; b < d; ++b) {
        Jet acc(d, order);
        for (int Kx = 0; Kx < N; ++Kx) acc = acc + Fj[I * N + Kx] * Jj[Kx][b];
        FJ[I * d + b] = acc;
      }
    for (int I = 0; I < N; ++I)
      for (int b = 0; b < d; ++b) {
        Jet acc(d, order);
        for (int Jx = 0; Jx < N; ++Jx) acc = acc + Gj[I * N + Jx] * FJ[Jx * d + b];
        GFJ[I * d + b] = acc;
      }
    std::vector<Jet> M(d * d, Jet(d, order));
    for (int c = 0; c < d; ++c)
      for (int b = 0; b < d; ++b) {
        Jet acc(d, order);
        for (int I = 0; I < N; ++I) acc = acc + Jj[I][c] * GFJ[I * d + b];
        M[c * d + b] = acc;
      }
    tables->f.assign(d * d, Jet(d, order));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Jet acc(d, order);
        for (int c = 0; c < d; ++c) acc = acc + tables->ginv[a * d + c] * M[c * d + b];
        tables->f[a * d + b] = acc;
      }
    return tables;
  }
};

namespace {

enum class PullKind { metric, endo, xi, eta };

struct PullEntryNode final : FieldNode {
  std::shared_ptr<const PullbackCore> core;
  PullKind kind;
  int a, b;  // (row, col) for metric/endo; (structure index, component) for xi/eta
  PullEntryNode(std::shared_ptr<const PullbackCore> core, PullKind kind, int a, int b)
      : core(std::move(core)), kind(kind), a(a), b(b) {}
  Jet eval(const Point& p, int order) const override {
    const auto t = core->tables_at(p, order);
    const int d = core->emb.domain().dim();
    switch (kind) {
      case PullKind::metric: return t->g[a * d + b].truncated(order);
      case PullKind::endo: return t->f[a * d + b].truncated(order);
      case PullKind::xi: return t->xi[a][b].truncated(order);
      case PullKind::eta: return t->eta[a][b].truncated(order);
    }
    throw std::logic_error("PullEntryNode: bad kind");
  }
};

}  // namespace
}  // namespace detail

MetricFStructure pullback_structure(const Embedding& e, const EndomorphismField& f,
                                    const std::vector<VectorField>& xi,
                                    const std::vector<OneForm>& eta, const MetricField& g,
                                    double tangency_tol) {
  const Chart& amb = e.ambient();
  require_same_chart(amb, f.chart(), "pullback_structure");
  require_same_chart(amb, g.chart(), "pullback_structure");
  if (xi.size() != eta.size())
    throw std::invalid_argument("pullback_structure: xi/eta counts differ");
  const int N = amb.dim();
  const int d = e.domain().dim();
  const int s = static_cast<int>(xi.size());

  auto core = std::make_shared<detail::PullbackCore>(e, tangency_tol);
  core->g_amb.reserve(N * N);
  core->f_amb.reserve(N * N);
  for (int I = 0; I < N; ++I)
    for (int J = 0; J < N; ++J) {
      core->g_amb.push_back(g.component(I, J));
      core->f_amb.push_back(f.component(I, J));
    }
  core->xi_amb.resize(s);
  core->eta_amb.resize(s);
  for (int a = 0; a < s; ++a) {
    for (int I = 0; I < N; ++I) {
      core->xi_amb[a].push_back(xi[a][I]);
      core->eta_amb[a].push_back(eta[a][I]);
    }
    require_same_chart(amb, xi[a].chart(), "pullback_structure");
    require_same_chart(amb, eta[a].chart(), "pullback_structure");
  }

  const Chart dom = e.domain();
  auto entry = [&](detail::PullKind kind, int a, int b) {
    return ScalarField(dom, std::make_shared<detail::PullEntryNode>(core, kind, a, b));
  };

  std::vector<ScalarField> g_comps, f_comps;
  g_comps.reserve(d * d);
  f_comps.reserve(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      g_comps.push_back(entry(detail::PullKind::metric, a, b));
      f_comps.push_back(entry(detail::PullKind::endo, a, b));
    }
  std::vector<VectorField> xi_p;
  std::vector<OneForm> eta_p;
  for (int a = 0; a < s; ++a) {
    std::vector<ScalarField> xc, ec;
    for (int b = 0; b < d; ++b) {
      xc.push_back(entry(detail::PullKind::xi, a, b));
      ec.push_back(entry(detail::PullKind::eta, a, b));
    }
    xi_p.emplace_back(dom, std::move(xc));
    eta_p.emplace_back(dom, std::move(ec));
  }
  return MetricFStructure(dom, s, EndomorphismField(dom, std::move(f_comps)),
                          std::move(xi_p), std::move(eta_p),
                          MetricField(dom, std::move(g_comps)));
}

namespace {

struct FlatBundle {
  Chart chart;
  EndomorphismField f;
  std::vector<VectorField> xi;
  std::vector<OneForm> eta;
  MetricField g;
};

/// The standard structure on R^{2m+t}; coordinates ordered
/// (x_1..x_m, y_1..y_m, z_1..z_t).
FlatBundle flat_bundle(int m, int t) {
  const int d = 2 * m + t;
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= m; ++i) names.push_back("y" + std::to_string(i));
  for (int a = 1; a <= t; ++a) names.push_back("z" + std::to_string(a));
  Chart chart(d, std::move(names));
  const auto zero = constant(chart, 0.0);

  std::vector<OneForm> eta;
  for (int a = 0; a < t; ++a) {
    std::vector<ScalarField> comps(d, zero);
    for (int i = 0; i < m; ++i) comps[i] = -0.5 * coordinate(chart, m + i);  // -y_i/2 on dx_i
    comps[2 * m + a] = constant(chart, 0.5);
    eta.emplace_back(chart, std::move(comps));
  }

  std::vector<VectorField> xi;
  for (int a = 0; a < t; ++a) {
    std::vector<ScalarField> comps(d, zero);
    comps[2 * m + a] = constant(chart, 2.0);
    xi.emplace_back(chart, std::move(comps));
  }

  std::vector<ScalarField> f_comps(d * d, zero);
  for (int i = 0; i < m; ++i) {
    f_comps[(m + i) * d + i] = constant(chart, -1.0);  // f dx_i = -dy_i direction
    f_comps[i * d + (m + i)] = constant(chart, 1.0);   // f dy_i has dx_i part
    for (int a = 0; a < t; ++a)
      f_comps[(2 * m + a) * d + (m + i)] = coordinate(chart, m + i);  // ... and y_i dz_a
  }

  std::vector<ScalarField> g_comps(d * d, zero);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ScalarField acc = zero;
      for (int a = 0; a < t; ++a) acc = acc + eta[a][i] * eta[a][j];
      if (i == j && i < 2 * m) acc = acc + 0.25;
      g_comps[i * d + j] = acc;
    }

  return FlatBundle{chart, EndomorphismField(chart, std::move(f_comps)), std::move(xi),
                    std::move(eta), MetricField(chart, std::move(g_comps))};
}

double flat_tau_star(int m, int t) {
  const double c = -3.0 * t;
  return (m * (m + 1) * (c - t) + (4.0 * m * t + t * (t - 1.0)) * (2.0 - t)) / 2.0;
}

}  // namespace

NamedExample flat_example(int m, int t) {
  if (m < 1 || t < 1) throw std::invalid_argument("flat_example: need m >= 1 and t >= 1");
  FlatBundle b = flat_bundle(m, t);
  MetricFStructure S(b.chart, t, std::move(b.f), std::move(b.xi), std::move(b.eta),
                     std::move(b.g));
  NamedExample ex{"flat",
                  m,
                  t,
                  0,
                  0,
                  std::move(S),
                  -3.0 * t,
                  /*kl_constant=*/m == 1,
                  /*expected_kl=*/-3.0 * t,
                  /*tau=*/-static_cast<double>(m) * t,
                  flat_tau_star(m, t),
                  /*tau_tilde=*/t * (t - 1.0) / 2.0,
                  std::nullopt,
                  nullptr};
  return ex;
}

NamedExample sphere_example(int n, int s) {
  if (n < 1 || s < 2) throw std::invalid_argument("sphere_example: need n >= 1 and s >= 2");
  // Ambient flat structure on R^{2(n+1)+(s-1)}.
  FlatBundle amb = flat_bundle(n + 1, s - 1);
  const Chart& A = amb.chart;
  const int N = A.dim();
  const int mm = n + 1;
  const auto zero = constant(A, 0.0);

  // xi_s = sum_i (-y_i dx_i + x_i dy_i) - (sum_i y_i^2) dz_a for every a
  std::vector<ScalarField> xis(N, zero);
  ScalarField y2 = zero;
  for (int i = 0; i < mm; ++i) {
    xis[i] = -coordinate(A, mm + i);
    xis[mm + i] = coordinate(A, i);
    y2 = y2 + coordinate(A, mm + i) * coordinate(A, mm + i);
  }
  for (int a = 0; a < s - 1; ++a) xis[2 * mm + a] = -y2;
  VectorField xi_s(A, std::move(xis));

  // eta^s(X) = g(X, xi_s) with the flat metric
  std::vector<ScalarField> etas;
  etas.reserve(N);
  for (int j = 0; j < N; ++j) {
    ScalarField acc = zero;
    for (int k = 0; k < N; ++k) acc = acc + amb.g.component(j, k) * xi_s[k];
    etas.push_back(acc);
  }
  OneForm eta_s(A, std::move(etas));

  std::vector<VectorField> xi_all = amb.xi;
  xi_all.push_back(std::move(xi_s));
  std::vector<OneForm> eta_all = amb.eta;
  eta_all.push_back(std::move(eta_s));

  // Deformation: xi~ = s xi, eta~ = eta/s, f~ = f,
  // g~ = g/s + (1-s)/s^2 sum eta (x) eta.
  const double sd = s;
  std::vector<VectorField> xi_def;
  std::vector<OneForm> eta_def;
  for (int a = 0; a < s; ++a) {
    xi_def.push_back(sd * xi_all[a]);
    std::vector<ScalarField> ec;
    for (int j = 0; j < N; ++j) ec.push_back((1.0 / sd) * eta_all[a][j]);
    eta_def.emplace_back(A, std::move(ec));
  }
  std::vector<ScalarField> g_def;
  g_def.reserve(N * N);
  const double w = (1.0 - sd) / (sd * sd);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      ScalarField acc = (1.0 / sd) * amb.g.component(i, j);
      for (int a = 0; a < s; ++a) acc = acc + w * (eta_all[a][i] * eta_all[a][j]);
      g_def.push_back(acc);
    }
  MetricField g_tilde(A, std::move(g_def));

  // Graph chart of S^{2n+1}(2) x R^{s-1}: domain coordinates
  // (x_1..x_n, y_1..y_{n+1}, z_1..z_{s-1}) with
  // x_{n+1} = sqrt(4 - sum x_i^2 - sum y_i^2) on the patch radicand > 1/4.
  const int d = 2 * n + s;
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n + 1; ++i) names.push_back("y" + std::to_string(i));
  for (int a = 1; a <= s - 1; ++a) names.push_back("z" + std::to_string(a));
  Chart D(d, std::move(names));

  std::vector<ScalarField> comps;
  comps.reserve(N);
  for (int i = 0; i < n; ++i) comps.push_back(coordinate(D, i));
  ScalarField radicand = constant(D, 4.0);
  for (int i = 0; i < 2 * n + 1; ++i)
    radicand = radicand - coordinate(D, i) * coordinate(D, i);
  comps.push_back(sqrt(radicand, 0.25));
  for (int i = 0; i <= n; ++i) comps.push_back(coordinate(D, n + i));
  for (int a = 0; a < s - 1; ++a) comps.push_back(coordinate(D, 2 * n + 1 + a));
  Embedding emb(D, A, std::move(comps));

  MetricFStructure S =
      pullback_structure(emb, amb.f, xi_def, eta_def, g_tilde, 1e-8);

  auto bundle = std::make_shared<NamedExample::AmbientBundle>(NamedExample::AmbientBundle{
      amb.f, std::move(xi_def), std::move(eta_def), std::move(g_tilde)});

  const double nd = n;
  NamedExample ex{"sphere",
                  0,
                  0,
                  n,
                  s,
                  std::move(S),
                  /*expected_c=*/sd,
                  /*kl_constant=*/true,
                  /*expected_kl=*/sd,
                  /*tau=*/nd * sd * (2 * nd + 1),
                  /*tau_star=*/(4 * nd * sd + sd * (sd - 1)) * (2 - sd) / 2.0,
                  /*tau_tilde=*/2 * nd * sd * (nd + 1) + sd * (sd - 1) / 2.0,
                  std::move(emb),
                  std::move(bundle)};
  return ex;
}

Point NamedExample::sample_point(CounterRng& rng) const {
  const int d = S.chart.dim();
  Eigen::VectorXd c(d);
  if (tag == "sphere") {
    // keep sphere coordinates well inside the graph patch
    for (int i = 0; i < 2 * n + 1; ++i) c[i] = rng.uniform(-0.5, 0.5);
    for (int i = 2 * n + 1; i < d; ++i) c[i] = rng.symmetric();
  } else {
    for (int i = 0; i < d; ++i) c[i] = rng.symmetric();
  }
  return Point{S.chart, std::move(c)};
}

}  // namespace fgeom
