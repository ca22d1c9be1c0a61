#include "fgeom/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "fgeom/fdcheck.hpp"

namespace fgeom {
namespace {

// Draw-stream layout; every random draw is keyed by (seed, purpose, point
// index) so sequences do not depend on which checks run.
enum Stream : std::uint64_t {
  kPoints = 1,
  kUnitL = 1000,
  kLPairs = 2000,
  kVectors = 3000,
  kPlanes = 4000,
  kFrames = 5000,
  kRaw = 6000,
};

struct Recorder {
  std::vector<CheckRecord> checks;
  double base_tol;

  void lt(const std::string& name, const std::string& conn, const std::string& anchor,
          double residual, double factor, bool directional = false) {
    const double tol = base_tol * factor;
    checks.push_back({name, conn, anchor, residual, tol, residual < tol, false, directional});
  }
  void gt(const std::string& name, const std::string& conn, const std::string& anchor,
          double value, double threshold, bool directional = false) {
    checks.push_back({name, conn, anchor, value, threshold, value > threshold, true,
                      directional});
  }
  void from(const ValidationReport& rep, const std::string& anchor) {
    for (const auto& c : rep.checks)
      checks.push_back({c.name, "structure", anchor, c.max_residual, c.tol, c.pass, false,
                        false});
  }
};

struct PointData {
  Point p;
  Eigen::MatrixXd G, Ginv, F;
  Eigen::MatrixXd H;   // s x d, rows eta^a
  Eigen::MatrixXd Xi;  // d x s, cols xi_a
  std::vector<Eigen::VectorXd> frame;
  std::vector<Eigen::VectorXd> alt_frame;
};

Eigen::VectorXd draw_unit_l(CounterRng& rng, const MetricFStructure& S, const PointData& pd) {
  const int d = pd.p.dim();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXd v = rng.symmetric_vector(d);
    v = l_project(S, pd.p, v);
    const double n2 = v.dot(pd.G * v);
    if (n2 < 1e-6) continue;
    return v / std::sqrt(n2);
  }
  throw std::runtime_error("draw_unit_l: degenerate draws");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> draw_l_pair(CounterRng& rng,
                                                        const MetricFStructure& S,
                                                        const PointData& pd) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXd x = draw_unit_l(rng, S, pd);
    Eigen::VectorXd y = rng.symmetric_vector(pd.p.dim());
    y = l_project(S, pd.p, y);
    y -= (x.dot(pd.G * y)) * x;
    y -= (x.dot(pd.G * y)) * x;
    const double n2 = y.dot(pd.G * y);
    if (n2 < 1e-6) continue;
    return {x, y / std::sqrt(n2)};
  }
  throw std::runtime_error("draw_l_pair: degenerate draws");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> draw_plane(CounterRng& rng, const PointData& pd) {
  const int d = pd.p.dim();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXd x = rng.symmetric_vector(d);
    const double nx2 = x.dot(pd.G * x);
    if (nx2 < 1e-6) continue;
    x /= std::sqrt(nx2);
    Eigen::VectorXd y = rng.symmetric_vector(d);
    y -= (x.dot(pd.G * y)) * x;
    y -= (x.dot(pd.G * y)) * x;
    const double ny2 = y.dot(pd.G * y);
    if (ny2 < 1e-6) continue;
    return {x, y / std::sqrt(ny2)};
  }
  throw std::runtime_error("draw_plane: degenerate draws");
}

std::vector<Eigen::VectorXd> draw_orthonormal_frame(CounterRng& rng, const PointData& pd) {
  const int d = pd.p.dim();
  std::vector<Eigen::VectorXd> frame;
  int attempts = 0;
  while (static_cast<int>(frame.size()) < d) {
    if (++attempts > 64 * d) throw std::runtime_error("draw_orthonormal_frame: degenerate");
    Eigen::VectorXd v = rng.symmetric_vector(d);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : frame) v -= (b.dot(pd.G * v)) * b;
    const double n2 = v.dot(pd.G * v);
    if (n2 < 1e-6) continue;
    frame.push_back(v / std::sqrt(n2));
  }
  return frame;
}

VectorField constant_vector_field(const Chart& chart, const Eigen::VectorXd& v) {
  std::vector<ScalarField> comps;
  comps.reserve(chart.dim());
  for (int i = 0; i < chart.dim(); ++i) comps.push_back(constant(chart, v[i]));
  return VectorField(chart, std::move(comps));
}

double spread(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *hi - *lo;
}

}  // namespace

TheoremReport theorem_suite(const NamedExample& ex, const SuiteOptions& opt) {
  if (opt.points < 1) throw std::invalid_argument("theorem_suite: points must be >= 1");
  if (opt.planes_per_point < 1)
    throw std::invalid_argument("theorem_suite: planes_per_point must be >= 1");
  if (!(opt.tol > 0)) throw std::invalid_argument("theorem_suite: tol must be positive");

  const MetricFStructure& S = ex.S;
  const int d = S.chart.dim();
  const int s = S.s;
  const double sd = s;
  const double c = ex.expected_c;
  const bool sphere = ex.tag == "sphere";

  Recorder rec;
  rec.base_tol = opt.tol;

  CounterRng rng_pts(opt.seed, kPoints);
  std::vector<Point> pts;
  pts.reserve(opt.points);
  for (int i = 0; i < opt.points; ++i) pts.push_back(ex.sample_point(rng_pts));

  // ---- structure equations ------------------------------------------------
  rec.from(validate_axioms(S, pts, opt.tol), "f^2 = -I + sum eta (x) xi; g-compatibility");
  rec.from(check_normality(S, pts, opt.tol), "[f,f] + 2 sum d.eta^a (x) xi_a = 0");
  rec.from(check_s_manifold(S, pts, opt.tol), "d.eta^a = Phi, frame spans");

  // ---- kernel cross-check (forward derivatives vs central differences) ----
  {
    std::vector<ScalarField> fields;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) fields.push_back(S.g.component(i, j));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) fields.push_back(S.f.component(i, j));
    for (int a = 0; a < s; ++a)
      for (int i = 0; i < d; ++i) {
        fields.push_back(S.eta[a][i]);
        fields.push_back(S.xi[a][i]);
      }
    FdReport fd;
    for (const Point& p : pts) {
      const FdReport r = fd_check_fields(fields, p);
      fd.grad_rel = std::max(fd.grad_rel, r.grad_rel);
      fd.hess_rel = std::max(fd.hess_rel, r.hess_rel);
      fd.hess_asym = std::max(fd.hess_asym, r.hess_asym);
    }
    rec.lt("kernel:gradient_vs_fd", "kernel", "exact gradient = central difference of values",
           fd.grad_rel, 100.0);
    rec.lt("kernel:hessian_vs_fd", "kernel", "exact Hessian = central difference of gradients",
           fd.hess_rel, 100.0);
    rec.lt("kernel:hessian_symmetry", "kernel", "H[i][j] = H[j][i]", fd.hess_asym, 1e-4);
  }

  // ---- pullback diagnostics (sphere only) ---------------------------------
  if (ex.embedding && ex.ambient) {
    const Embedding& emb = *ex.embedding;
    double xi_res = 0, f_normal_res = 0;
    for (const Point& p : pts) {
      const Point q = emb.map(p);
      const Eigen::MatrixXd J = emb.jacobian(p);
      const Eigen::MatrixXd Famb = ex.ambient->f.matrix_at(q);
      const Eigen::VectorXd xis = ex.ambient->xi[s - 1].value_at(q);
      const Eigen::VectorXd etas = ex.ambient->eta[s - 1].value_at(q);
      for (int a = 0; a < s; ++a) {
        const Eigen::VectorXd up = J * S.xi[a].value_at(p);
        xi_res = std::max(
            xi_res, (up - ex.ambient->xi[a].value_at(q)).cwiseAbs().maxCoeff());
      }
      const Eigen::MatrixXd fpull = S.f.matrix_at(p);
      const Eigen::VectorXd fxis = Famb * xis;
      for (int b = 0; b < d; ++b) {
        const Eigen::VectorXd measured = Famb * J.col(b) - J * fpull.col(b);
        const Eigen::VectorXd predicted = etas.dot(J.col(b)) * fxis;
        f_normal_res = std::max(f_normal_res, (measured - predicted).cwiseAbs().maxCoeff());
      }
    }
    rec.lt("pullback:xi_tangency", "structure", "J xi_pulled = xi (tangent solve residual)",
           xi_res, 1.0);
    rec.lt("pullback:f_normal=eta^s.f(xi_s)", "structure",
           "F J v - J f_pulled v = eta^s(J v) f(xi_s)", f_normal_res, 1.0);
  }

  // ---- connections ---------------------------------------------------------
  const bool need_riem = opt.run_riemannian || opt.run_ssm || opt.run_ssnm;
  if (!need_riem) {
    TheoremReport out{std::move(rec.checks), true};
    for (const auto& ch : out.checks) out.overall_pass = out.overall_pass && ch.pass;
    return out;
  }

  const AffineConnection lc = levi_civita(S.g);
  std::unique_ptr<AffineConnection> ssm, ssnm;
  if (opt.run_ssm) ssm = std::make_unique<AffineConnection>(semi_symmetric_metric(S, lc));
  if (opt.run_ssnm)
    ssnm = std::make_unique<AffineConnection>(semi_symmetric_non_metric(S, lc));

  const int pairs_per_point =
      std::max(opt.planes_per_point, (50 + opt.points - 1) / opt.points);
  const int eq6_points = std::min(5, opt.points);

  // accumulators
  double r5 = 0, r5_sec = 0, r5_xx = 0, r6 = 0, r7 = 0, r_tau = 0, r_tau_fr = 0;
  double r_bianchi = 0, r_anti = 0, r_skew = 0, r_pair = 0;
  std::vector<double> kl_samples;
  double m_kmks = 0, m_kxxi = 0, m_kxix = 0, m_kxx = 0, m_tors = 0, m_tau = 0, m_tau_fr = 0;
  double m_klstar = 0, m_anti = 0, m_skew = 0, m_pair_defect = 0, m_tors_eq = 0;
  std::vector<double> kstar_samples;
  double t_r1 = 0, t_r2 = 0, t_rxx = 0, t_kl = 0, t_tors = 0, t_tau = 0, t_tau_fr = 0;
  double t_anti = 0, t_nonmet = 0;
  double t_violation = std::numeric_limits<double>::infinity();

  for (int ip = 0; ip < opt.points; ++ip) {
    PointData pd;
    pd.p = pts[ip];
    pd.G = S.g.matrix_at(pd.p);
    pd.Ginv = S.g.inverse_at(pd.p);
    pd.F = S.f.matrix_at(pd.p);
    pd.H.resize(s, d);
    pd.Xi.resize(d, s);
    for (int a = 0; a < s; ++a) {
      pd.H.row(a) = S.eta[a].value_at(pd.p).transpose();
      pd.Xi.col(a) = S.xi[a].value_at(pd.p);
    }
    pd.frame = f_basis(S, pd.p, std::max(opt.tol, 1e-9));
    {
      CounterRng rng(opt.seed, kFrames + ip);
      pd.alt_frame = draw_orthonormal_frame(rng, pd);
    }

    const CurvatureAt Rr = riemann_tensor(lc, S.g, pd.p);
    std::unique_ptr<CurvatureAt> Rs, Rt;
    if (ssm) Rs = std::make_unique<CurvatureAt>(riemann_tensor(*ssm, S.g, pd.p));
    if (ssnm) Rt = std::make_unique<CurvatureAt>(riemann_tensor(*ssnm, S.g, pd.p));

    auto gform = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
      return a.dot(pd.G * b);
    };

    // tensor-level symmetries on coordinate quadruples. Pair symmetry holds
    // for the torsion-free metric connection; with torsion the defect of
    // R*(X,Y,Z,W) - R*(Z,W,X,Y) is exactly
    //   2s [g(X,W)Phi(Z,Y) + g(Y,W)Phi(X,Z) + g(Y,Z)Phi(W,X) + g(X,Z)Phi(Y,W)]
    // (antisymmetric part of the deformation tensor = 2 d.pi = 2s Phi), so
    // that closed form is what gets checked.
    const Eigen::MatrixXd Phi = pd.G * pd.F;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            r_anti = std::max(r_anti, std::abs(Rr(i, j, k, l) + Rr(j, i, k, l)));
            r_skew = std::max(r_skew, std::abs(Rr(i, j, k, l) + Rr(i, j, l, k)));
            r_pair = std::max(r_pair, std::abs(Rr(i, j, k, l) - Rr(k, l, i, j)));
            r_bianchi = std::max(
                r_bianchi, std::abs(Rr(i, j, k, l) + Rr(j, k, i, l) + Rr(k, i, j, l)));
            if (Rs) {
              m_anti = std::max(m_anti, std::abs((*Rs)(i, j, k, l) + (*Rs)(j, i, k, l)));
              m_skew = std::max(m_skew, std::abs((*Rs)(i, j, k, l) + (*Rs)(i, j, l, k)));
              const double defect =
                  2.0 * sd *
                  (pd.G(i, l) * Phi(k, j) + pd.G(j, l) * Phi(i, k) +
                   pd.G(j, k) * Phi(l, i) + pd.G(i, k) * Phi(j, l));
              m_pair_defect = std::max(
                  m_pair_defect,
                  std::abs((*Rs)(i, j, k, l) - (*Rs)(k, l, i, j) - defect));
            }
            if (Rt) t_anti = std::max(t_anti, std::abs((*Rt)(i, j, k, l) + (*Rt)(j, i, k, l)));
          }

    // frames: scalar curvature and frame independence
    {
      const double tau1 = scalar_curvature(Rr, pd.frame);
      const double tau2 = scalar_curvature(Rr, pd.alt_frame);
      r_tau = std::max(r_tau, std::abs(tau1 - ex.expected_tau));
      r_tau_fr = std::max(r_tau_fr, std::abs(tau1 - tau2));
      if (Rs) {
        const double a = scalar_curvature(*Rs, pd.frame);
        const double b = scalar_curvature(*Rs, pd.alt_frame);
        m_tau = std::max(m_tau, std::abs(a - ex.expected_tau_star));
        m_tau_fr = std::max(m_tau_fr, std::abs(a - b));
      }
      if (Rt) {
        const double a = scalar_curvature(*Rt, pd.frame);
        const double b = scalar_curvature(*Rt, pd.alt_frame);
        t_tau = std::max(t_tau, std::abs(a - ex.expected_tau_tilde));
        t_tau_fr = std::max(t_tau_fr, std::abs(a - b));
      }
    }

    // raw structure-plane identities
    {
      CounterRng rng(opt.seed, kRaw + ip);
      for (int k = 0; k < opt.planes_per_point; ++k) {
        const Eigen::VectorXd X = rng.symmetric_vector(d);
        const Eigen::VectorXd fX = pd.F * X;
        for (int a = 0; a < s; ++a) {
          const Eigen::VectorXd xia = pd.Xi.col(a);
          r5 = std::max(r5, std::abs(Rr.value(xia, X, X, xia) - gform(fX, fX)));
        }
      }
      for (int k = 0; k < opt.planes_per_point; ++k) {
        CounterRng rng_u(opt.seed, kUnitL + ip * 131 + k);
        const Eigen::VectorXd X = draw_unit_l(rng_u, S, pd);
        for (int a = 0; a < s; ++a) {
          const Eigen::VectorXd xia = pd.Xi.col(a);
          r5_sec = std::max(r5_sec, std::abs(sectional(Rr, xia, X) - 1.0));
          if (Rs) {
            m_kxxi = std::max(m_kxxi, std::abs(sectional(*Rs, X, xia) - (2.0 - sd)));
            m_kxix = std::max(m_kxix, std::abs(sectional(*Rs, xia, X) - (2.0 - sd)));
          }
          if (Rt) {
            t_r1 = std::max(t_r1, std::abs(Rt->value(xia, X, X, xia) - 1.0));
            t_r2 = std::max(t_r2, std::abs(Rt->value(X, xia, xia, X) - 2.0));
            t_violation = std::min(
                t_violation,
                std::abs(Rt->value(X, xia, xia, X) - Rt->value(xia, X, X, xia)));
          }
        }
      }
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
          if (a == b) continue;
          const Eigen::VectorXd xa = pd.Xi.col(a), xb = pd.Xi.col(b);
          r5_xx = std::max(r5_xx, std::abs(sectional(Rr, xa, xb)));
          if (Rs) m_kxx = std::max(m_kxx, std::abs(sectional(*Rs, xa, xb) - (2.0 - sd)));
          if (Rt) t_rxx = std::max(t_rxx, std::abs(Rt->value(xa, xb, xb, xa) - 1.0));
        }
    }

    // L-plane identities
    {
      CounterRng rng(opt.seed, kLPairs + ip);
      for (int k = 0; k < pairs_per_point; ++k) {
        const auto [X, Y] = draw_l_pair(rng, S, pd);
        const double kl = l_sectional(Rr, X, Y);
        kl_samples.push_back(kl);
        r7 = std::max(r7, std::abs(kl - kl_closed_form(c, s, S, X, Y, pd.p)));
        if (Rs) {
          const double ks = l_sectional(*Rs, X, Y);
          m_kmks = std::max(m_kmks, std::abs(ks - (kl - sd)));
          const double gxfy = X.dot(pd.G * (pd.F * Y));
          m_klstar = std::max(
              m_klstar, std::abs(ks - (c - sd) / 4.0 * (1.0 + 3.0 * gxfy * gxfy)));
        }
        if (Rt) t_kl = std::max(t_kl, std::abs(l_sectional(*Rt, X, Y) - kl));
      }
    }

    // arbitrary planes (constant-curvature probes for s = 2)
    if (Rs && s == 2) {
      CounterRng rng(opt.seed, kPlanes + ip);
      for (int k = 0; k < opt.planes_per_point; ++k) {
        const auto [X, Y] = draw_plane(rng, pd);
        kstar_samples.push_back(sectional(*Rs, X, Y));
      }
    }

    // space-form tensor, entrywise
    if (ip < eq6_points) {
      const Eigen::Tensor<double, 4> Rc = space_form_tensor_at(c, S, pd.p);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
              r6 = std::max(r6, std::abs(Rr(i, j, k, l) - Rc(i, j, k, l)));
    }

    // torsion and compatibility-by-formula checks
    if (ssm || ssnm) {
      CounterRng rng(opt.seed, kVectors + ip);
      for (int k = 0; k < opt.planes_per_point; ++k) {
        const Eigen::VectorXd xv = rng.symmetric_vector(d);
        const Eigen::VectorXd yv = rng.symmetric_vector(d);
        const VectorField X = constant_vector_field(S.chart, xv);
        const VectorField Y = constant_vector_field(S.chart, yv);
        Eigen::VectorXd expect = Eigen::VectorXd::Zero(d);
        for (int a = 0; a < s; ++a)
          expect += pd.H.row(a).dot(yv) * xv - pd.H.row(a).dot(xv) * yv;
        Eigen::VectorXd ts, tt;
        if (ssm) {
          ts = torsion(*ssm, X, Y, pd.p);
          m_tors = std::max(m_tors, (ts - expect).cwiseAbs().maxCoeff());
        }
        if (ssnm) {
          tt = torsion(*ssnm, X, Y, pd.p);
          t_tors = std::max(t_tors, (tt - expect).cwiseAbs().maxCoeff());
        }
        if (ssm && ssnm) m_tors_eq = std::max(m_tors_eq, (ts - tt).cwiseAbs().maxCoeff());
      }
    }

    // non-metricity of the non-metric connection, against its closed form
    if (ssnm) {
      const auto mj = S.g.jets_at(pd.p, 1);
      const auto table = ssnm->coeffs_at(pd.p, 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) {
            double lhs = mj->entry(j, k, d).grad[i];
            for (int m = 0; m < d; ++m)
              lhs -= table->at(m, i, j).value * mj->entry(m, k, d).value +
                     table->at(m, i, k).value * mj->entry(j, m, d).value;
            double rhs = 0;
            for (int a = 0; a < s; ++a)
              rhs -= pd.H(a, j) * pd.G(i, k) + pd.H(a, k) * pd.G(i, j);
            t_nonmet = std::max(t_nonmet, std::abs(lhs - rhs));
          }
    }
  }

  // ---- records --------------------------------------------------------------
  const double tau_factor = sphere ? 100.0 : 10.0;

  if (opt.run_riemannian || opt.run_ssm || opt.run_ssnm) {
    rec.lt("curv:R(xi,X,X,xi)=g(fX,fX)", "riemannian",
           "K(xi_a,X) = R(xi_a,X,X,xi_a) = g(fX,fX)", r5, 1.0);
    rec.lt("curv:K(xi,X)=1", "riemannian", "K(xi_a,X) = 1 for unit X in L", r5_sec, 1.0);
    if (s >= 2)
      rec.lt("curv:K(xi_a,xi_b)=0", "riemannian", "K(xi_a,xi_b) = 0", r5_xx, 1.0);
    rec.lt("curv:R=space_form(c)", "riemannian",
           "R equals the constant f-sectional curvature tensor M(c)", r6, sphere ? 10.0 : 1.0);
    rec.lt("curv:K_L=closed_form(c,s)", "riemannian",
           "K_L(X,Y) = (c+3s)/4 + 3(c-s)/4 g(X,fY)^2", r7, 1.0);
    if (ex.kl_constant) {
      double dev = 0;
      for (double v : kl_samples) dev = std::max(dev, std::abs(v - ex.expected_kl));
      rec.lt("curv:K_L_constant", "riemannian", "K_L constant on L-planes", dev, 10.0);
    } else {
      rec.gt("curv:K_L_nonconstant", "riemannian",
             "K_L spread > 0.1 when c != s (no constant K_L)", spread(kl_samples), 0.1);
    }
    rec.lt("curv:tau=closed_form", "riemannian",
           sphere ? "tau = n s (2n+1)" : "tau = n(n-1)(c+3s)/2 + n(c+2s)", r_tau, tau_factor);
    rec.lt("curv:tau_frame_independent", "riemannian", "tau agrees across orthonormal frames",
           r_tau_fr, 1.0);
    rec.lt("curv:first_bianchi", "riemannian", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", r_bianchi,
           1.0);
    rec.lt("curv:antisym_first_pair", "riemannian", "R(X,Y,Z,W) = -R(Y,X,Z,W)", r_anti, 0.1);
    rec.lt("curv:skew_symmetry_last_pair", "riemannian", "R(X,Y,Z,W) = -R(X,Y,W,Z)", r_skew,
           1.0);
    rec.lt("curv:pair_symmetry", "riemannian", "R(X,Y,Z,W) = R(Z,W,X,Y)", r_pair, 1.0);
  }

  if (ssm) {
    rec.lt("ssm:K(X,Y)=K_riem-s", "ssm", "K*(X,Y) = K(X,Y) - s", m_kmks, 1.0);
    rec.lt("ssm:K(X,xi)=2-s", "ssm", "K*(X,xi_a) = 2 - s", m_kxxi, 1.0);
    rec.lt("ssm:K(xi,X)=2-s", "ssm", "K*(xi_a,X) = 2 - s", m_kxix, 1.0);
    if (s >= 2) rec.lt("ssm:K(xi_a,xi_b)=2-s", "ssm", "K*(xi_a,xi_b) = 2 - s", m_kxx, 1.0);
    rec.lt("ssm:metric_compat", "ssm", "nabla* g = 0",
           metric_compat_residual(*ssm, S.g, pts), 0.1);
    rec.lt("ssm:torsion=eta(Y)X-eta(X)Y", "ssm",
           "T*(X,Y) = sum_a (eta^a(Y) X - eta^a(X) Y)", m_tors, 0.1);
    rec.lt("ssm:tau=closed_form", "ssm", "tau* = (n(n+1)(c-s) + (4ns+s(s-1))(2-s))/2", m_tau,
           100.0);
    rec.lt("ssm:tau_frame_independent", "ssm", "tau* agrees across orthonormal frames",
           m_tau_fr, 1.0);
    rec.lt("ssm:K_L=(c-s)/4*(1+3g(X,fY)^2)", "ssm", "K*_L(X,Y) = (c-s)/4 (1 + 3 g(X,fY)^2)",
           m_klstar, 1.0);
    rec.lt("ssm:antisym_first_pair", "ssm", "R*(X,Y,Z,W) = -R*(Y,X,Z,W)", m_anti, 0.1);
    rec.lt("ssm:skew_symmetry_last_pair", "ssm", "R*(X,Y,Z,W) = -R*(X,Y,W,Z)", m_skew, 1.0);
    rec.lt("ssm:pair_symmetry_defect=2s.g.Phi", "ssm",
           "R*(X,Y,Z,W) - R*(Z,W,X,Y) = 2s [g(X,W)Phi(Z,Y) + g(Y,W)Phi(X,Z) + "
           "g(Y,Z)Phi(W,X) + g(X,Z)Phi(Y,W)]",
           m_pair_defect, 1.0);
    if (ssnm)
      rec.lt("ssm:torsion_equals_ssnm", "ssm", "T* = T~", m_tors_eq, 0.01);
    if (s == 2) {
      // K* vanishes on L-planes, (X, xi) planes and (xi_a, xi_b) planes
      // when s = 2 (asserted above), yet K* on arbitrary planes is not
      // constant even here: a plane spanned by unit X in L and
      // (xi_1 + xi_2)/sqrt(2) carries K* = 2. The spread over random
      // planes records that observed non-constancy.
      rec.gt("ssm:K_nonconstant_general_planes", "ssm",
             "K* spread over arbitrary planes (s = 2)", spread(kstar_samples), 0.1);
    }
  }

  if (ssnm) {
    rec.lt("ssnm:R(xi,X,X,xi)=1", "ssnm", "R~(xi_a,X,X,xi_a) = 1", t_r1, 1.0, true);
    rec.lt("ssnm:R(X,xi,xi,X)=2", "ssnm", "R~(X,xi_a,xi_a,X) = 2", t_r2, 1.0, true);
    if (s >= 2)
      rec.lt("ssnm:R(xi_a,xi_b,xi_b,xi_a)=1", "ssnm", "R~(xi_a,xi_b,xi_b,xi_a) = 1", t_rxx,
             1.0, true);
    rec.gt("ssnm:pair_symmetry_violation", "ssnm",
           "|R~(X,xi,xi,X) - R~(xi,X,X,xi)| >= 0.5 (taking K~ has no sense)", t_violation,
           0.5, true);
    rec.lt("ssnm:K_L=K_L_riem", "ssnm", "K~_L(X,Y) = K_L(X,Y)", t_kl, 0.1);
    rec.lt("ssnm:nonmetricity=closed_form", "ssnm",
           "(nabla~_X g)(Y,Z) = -sum_a (eta^a(Y) g(X,Z) + eta^a(Z) g(X,Y))", t_nonmet, 0.1);
    rec.lt("ssnm:torsion=eta(Y)X-eta(X)Y", "ssnm",
           "T~(X,Y) = sum_a (eta^a(Y) X - eta^a(X) Y)", t_tors, 0.1);
    rec.lt("ssnm:tau=closed_form", "ssnm", "tau~ = (n(n+1)(c+3s) + s(s-1))/2", t_tau,
           tau_factor);
    rec.lt("ssnm:tau_frame_independent", "ssnm",
           "tau~ (raw ordered-pair sum) agrees across orthonormal frames", t_tau_fr, 1.0);
    rec.lt("ssnm:antisym_first_pair", "ssnm", "R~(X,Y,Z,W) = -R~(Y,X,Z,W)", t_anti, 0.1);
  }

  std::sort(rec.checks.begin(), rec.checks.end(), [](const CheckRecord& a, const CheckRecord& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.connection < b.connection;
  });

  TheoremReport out;
  out.checks = std::move(rec.checks);
  out.overall_pass = true;
  for (const auto& ch : out.checks) out.overall_pass = out.overall_pass && ch.pass;
  return out;
}

}  // namespace fgeom
