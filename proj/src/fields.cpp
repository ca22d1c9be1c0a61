#include "fgeom/fields.hpp"

#include <Eigen/Cholesky>

namespace fgeom {
namespace {

void check_count(const Chart& chart, std::size_t n, std::size_t want, const char* what) {
  if (!chart.valid()) throw std::invalid_argument(std::string(what) + ": invalid chart");
  if (n != want) throw std::invalid_argument(std::string(what) + ": wrong component count");
}

}  // namespace

VectorField::VectorField(Chart chart, std::vector<ScalarField> comps)
    : chart_(std::move(chart)), comps_(std::move(comps)) {
  check_count(chart_, comps_.size(), chart_.dim(), "VectorField");
  for (const auto& c : comps_) require_same_chart(chart_, c.chart(), "VectorField");
}

Eigen::VectorXd VectorField::value_at(const Point& p) const {
  Eigen::VectorXd v(chart_.dim());
  for (int i = 0; i < chart_.dim(); ++i) v[i] = comps_[i].value(p);
  return v;
}

OneForm::OneForm(Chart chart, std::vector<ScalarField> comps)
    : chart_(std::move(chart)), comps_(std::move(comps)) {
  check_count(chart_, comps_.size(), chart_.dim(), "OneForm");
  for (const auto& c : comps_) require_same_chart(chart_, c.chart(), "OneForm");
}

Eigen::VectorXd OneForm::value_at(const Point& p) const {
  Eigen::VectorXd v(chart_.dim());
  for (int i = 0; i < chart_.dim(); ++i) v[i] = comps_[i].value(p);
  return v;
}

TwoForm::TwoForm(Chart chart, std::vector<ScalarField> comps)
    : chart_(std::move(chart)), comps_(std::move(comps)) {
  check_count(chart_, comps_.size(), std::size_t(chart_.dim()) * chart_.dim(), "TwoForm");
}

Eigen::MatrixXd TwoForm::value_at(const Point& p) const {
  const int d = chart_.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = comps_[i * d + j].value(p);
  return m;
}

EndomorphismField::EndomorphismField(Chart chart, std::vector<ScalarField> comps)
    : chart_(std::move(chart)), comps_(std::move(comps)) {
  check_count(chart_, comps_.size(), std::size_t(chart_.dim()) * chart_.dim(),
              "EndomorphismField");
}

Eigen::MatrixXd EndomorphismField::matrix_at(const Point& p) const {
  const int d = chart_.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = comps_[i * d + j].value(p);
  return m;
}

VectorField EndomorphismField::column(int j) const {
  const int d = chart_.dim();
  std::vector<ScalarField> c;
  c.reserve(d);
  for (int i = 0; i < d; ++i) c.push_back(comps_[i * d + j]);
  return VectorField(chart_, std::move(c));
}

MetricField::MetricField(Chart chart, std::vector<ScalarField> comps)
    : chart_(std::move(chart)), comps_(std::move(comps)), cache_(std::make_shared<Cache>()) {
  check_count(chart_, comps_.size(), std::size_t(chart_.dim()) * chart_.dim(), "MetricField");
}

std::shared_ptr<const MetricJets> MetricField::jets_at(const Point& p, int order) const {
  require_same_chart(chart_, p.chart, "MetricField::jets_at");
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->jets && cache_->coords.size() == p.coords.size() &&
        cache_->coords == p.coords && cache_->jets->order >= order)
      return cache_->jets;
  }
  const int d = chart_.dim();
  auto jets = std::make_shared<MetricJets>();
  jets->order = order;
  jets->entries.reserve(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) jets->entries.push_back(comps_[i * d + j].eval(p, order));

  // Positive definiteness gate; also supplies nothing we reuse, LLT is cheap.
  Eigen::MatrixXd g0(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g0(i, j) = jets->entries[i * d + j].value;
  Eigen::LLT<Eigen::MatrixXd> llt(g0);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("MetricField: metric not positive definite at point");

  jets->inverse = jet_matrix_inverse(jets->entries, d);

  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->coords = p.coords;
    cache_->jets = jets;
  }
  return jets;
}

Eigen::MatrixXd MetricField::matrix_at(const Point& p) const {
  const auto jets = jets_at(p, 0);
  const int d = chart_.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = jets->entry(i, j, d).value;
  return m;
}

Eigen::MatrixXd MetricField::inverse_at(const Point& p) const {
  const auto jets = jets_at(p, 0);
  const int d = chart_.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = jets->inv(i, j, d).value;
  return m;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  require_same_chart(X.chart(), Y.chart(), "lie_bracket");
  const Chart& chart = X.chart();
  const int d = chart.dim();
  std::vector<ScalarField> comps;
  comps.reserve(d);
  for (int k = 0; k < d; ++k) {
    ScalarField acc = constant(chart, 0.0);
    for (int i = 0; i < d; ++i)
      acc = acc + X[i] * derivative(Y[k], i) - Y[i] * derivative(X[k], i);
    comps.push_back(acc);
  }
  return VectorField(chart, std::move(comps));
}

TwoForm exterior_d(const OneForm& eta) {
  const Chart& chart = eta.chart();
  const int d = chart.dim();
  std::vector<ScalarField> comps;
  comps.reserve(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      comps.push_back(0.5 * (derivative(eta[j], i) - derivative(eta[i], j)));
  return TwoForm(chart, std::move(comps));
}

Eigen::VectorXd nijenhuis(const EndomorphismField& f, const VectorField& X,
                          const VectorField& Y, const Point& p) {
  require_same_chart(f.chart(), X.chart(), "nijenhuis");
  require_same_chart(f.chart(), Y.chart(), "nijenhuis");
  const Eigen::MatrixXd F = f.matrix_at(p);
  const VectorField fX = endo_apply(f, X);
  const VectorField fY = endo_apply(f, Y);
  const Eigen::VectorXd b_xy = lie_bracket(X, Y).value_at(p);
  const Eigen::VectorXd b_fxfy = lie_bracket(fX, fY).value_at(p);
  const Eigen::VectorXd b_fxy = lie_bracket(fX, Y).value_at(p);
  const Eigen::VectorXd b_xfy = lie_bracket(X, fY).value_at(p);
  return F * (F * b_xy) + b_fxfy - F * b_fxy - F * b_xfy;
}

ScalarField metric_pair(const MetricField& g, const VectorField& X, const VectorField& Y) {
  require_same_chart(g.chart(), X.chart(), "metric_pair");
  require_same_chart(g.chart(), Y.chart(), "metric_pair");
  const Chart& chart = g.chart();
  const int d = chart.dim();
  ScalarField acc = constant(chart, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) acc = acc + g.component(i, j) * X[i] * Y[j];
  return acc;
}

double metric_pair_at(const MetricField& g, const VectorField& X, const VectorField& Y,
                      const Point& p) {
  const Eigen::VectorXd xv = X.value_at(p);
  const Eigen::VectorXd yv = Y.value_at(p);
  return xv.dot(g.matrix_at(p) * yv);
}

VectorField endo_apply(const EndomorphismField& f, const VectorField& X) {
  require_same_chart(f.chart(), X.chart(), "endo_apply");
  const Chart& chart = f.chart();
  const int d = chart.dim();
  std::vector<ScalarField> comps;
  comps.reserve(d);
  for (int i = 0; i < d; ++i) {
    ScalarField acc = constant(chart, 0.0);
    for (int j = 0; j < d; ++j) acc = acc + f.component(i, j) * X[j];
    comps.push_back(acc);
  }
  return VectorField(chart, std::move(comps));
}

ScalarField oneform_apply(const OneForm& eta, const VectorField& X) {
  require_same_chart(eta.chart(), X.chart(), "oneform_apply");
  const Chart& chart = eta.chart();
  ScalarField acc = constant(chart, 0.0);
  for (int i = 0; i < chart.dim(); ++i) acc = acc + eta[i] * X[i];
  return acc;
}

double two_form_apply(const TwoForm& w, const VectorField& X, const VectorField& Y,
                      const Point& p) {
  require_same_chart(w.chart(), X.chart(), "two_form_apply");
  require_same_chart(w.chart(), Y.chart(), "two_form_apply");
  const Eigen::VectorXd xv = X.value_at(p);
  const Eigen::VectorXd yv = Y.value_at(p);
  return xv.dot(w.value_at(p) * yv);
}

Eigen::MatrixXd metric_inverse_at(const MetricField& g, const Point& p) {
  return g.inverse_at(p);
}

VectorField coordinate_field(const Chart& chart, int i) {
  if (i < 0 || i >= chart.dim())
    throw std::invalid_argument("coordinate_field: index out of range");
  std::vector<ScalarField> comps;
  comps.reserve(chart.dim());
  for (int k = 0; k < chart.dim(); ++k) comps.push_back(constant(chart, k == i ? 1.0 : 0.0));
  return VectorField(chart, std::move(comps));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart(), b.chart(), "VectorField operator+");
  std::vector<ScalarField> comps;
  comps.reserve(a.chart().dim());
  for (int i = 0; i < a.chart().dim(); ++i) comps.push_back(a[i] + b[i]);
  return VectorField(a.chart(), std::move(comps));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart(), b.chart(), "VectorField operator-");
  std::vector<ScalarField> comps;
  comps.reserve(a.chart().dim());
  for (int i = 0; i < a.chart().dim(); ++i) comps.push_back(a[i] - b[i]);
  return VectorField(a.chart(), std::move(comps));
}

VectorField operator*(const ScalarField& s, const VectorField& X) {
  require_same_chart(s.chart(), X.chart(), "ScalarField * VectorField");
  std::vector<ScalarField> comps;
  comps.reserve(X.chart().dim());
  for (int i = 0; i < X.chart().dim(); ++i) comps.push_back(s * X[i]);
  return VectorField(X.chart(), std::move(comps));
}

VectorField operator*(double c, const VectorField& X) {
  std::vector<ScalarField> comps;
  comps.reserve(X.chart().dim());
  for (int i = 0; i < X.chart().dim(); ++i) comps.push_back(c * X[i]);
  return VectorField(X.chart(), std::move(comps));
}

}  // namespace fgeom
