#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fgeom {

/// Forward-propagated derivative packet: the value of a scalar expression
/// together with its exact partial derivatives up to `order` with respect
/// to the chart coordinates. Order 3 exists so that a first-derivative
/// field can still expose an exact Hessian; nothing propagates past it.
///
/// Rule set: +, -, *, scalar multiples, sqrt, index-shift (d/dx_i), and
/// matrix inversion of a square array of jets. There is no general
/// division and no transcendental rule beyond sqrt.
template <typename Scalar>
class JetT {
 public:
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  static constexpr int kMaxOrder = 3;

  JetT() = default;

  JetT(int dim, int order) : value(0), dim_(dim), order_(order) {
    if (dim < 1) throw std::invalid_argument("JetT: dim must be >= 1");
    if (order < 0 || order > kMaxOrder)
      throw std::invalid_argument("JetT: order must be in [0, 3]");
    if (order >= 1) grad = Vec::Zero(dim);
    if (order >= 2) hess = Mat::Zero(dim, dim);
    if (order >= 3) third.assign(dim, Mat::Zero(dim, dim));
  }

  int dim() const { return dim_; }
  int order() const { return order_; }

  /// Copy with derivative data above `order` dropped.
  JetT truncated(int order) const {
    if (order > order_) throw std::invalid_argument("JetT::truncated: cannot raise order");
    JetT out(dim_, order);
    out.value = value;
    if (order >= 1) out.grad = grad;
    if (order >= 2) out.hess = hess;
    if (order >= 3) out.third = third;
    return out;
  }

  Scalar value = Scalar(0);
  Vec grad;                 // grad[i]       = d_i f
  Mat hess;                 // hess(i,j)     = d_i d_j f
  std::vector<Mat> third;   // third[i](j,k) = d_i d_j d_k f

 private:
  int dim_ = 0;
  int order_ = -1;
};

using Jet = JetT<double>;

namespace detail {
template <typename S>
inline void require_compatible(const JetT<S>& a, const JetT<S>& b) {
  if (a.dim() != b.dim() || a.order() != b.order())
    throw std::invalid_argument("jet arithmetic: dim/order mismatch");
}
}  // namespace detail

template <typename S>
JetT<S> operator+(const JetT<S>& a, const JetT<S>& b) {
  detail::require_compatible(a, b);
  JetT<S> r = a;
  r.value += b.value;
  if (r.order() >= 1) r.grad += b.grad;
  if (r.order() >= 2) r.hess += b.hess;
  if (r.order() >= 3)
    for (int i = 0; i < r.dim(); ++i) r.third[i] += b.third[i];
  return r;
}

template <typename S>
JetT<S> operator-(const JetT<S>& a, const JetT<S>& b) {
  detail::require_compatible(a, b);
  JetT<S> r = a;
  r.value -= b.value;
  if (r.order() >= 1) r.grad -= b.grad;
  if (r.order() >= 2) r.hess -= b.hess;
  if (r.order() >= 3)
    for (int i = 0; i < r.dim(); ++i) r.third[i] -= b.third[i];
  return r;
}

template <typename S>
JetT<S> operator*(const JetT<S>& a, S c) {
  JetT<S> r = a;
  r.value *= c;
  if (r.order() >= 1) r.grad *= c;
  if (r.order() >= 2) r.hess *= c;
  if (r.order() >= 3)
    for (int i = 0; i < r.dim(); ++i) r.third[i] *= c;
  return r;
}

template <typename S>
JetT<S> operator*(S c, const JetT<S>& a) {
  return a * c;
}

template <typename S>
JetT<S> operator-(const JetT<S>& a) {
  return a * S(-1);
}

/// Leibniz rule, exact through third order.
template <typename S>
JetT<S> operator*(const JetT<S>& a, const JetT<S>& b) {
  detail::require_compatible(a, b);
  const int d = a.dim(), o = a.order();
  JetT<S> r(d, o);
  r.value = a.value * b.value;
  if (o >= 1) r.grad = a.grad * b.value + b.grad * a.value;
  if (o >= 2)
    r.hess = a.hess * b.value + b.hess * a.value + a.grad * b.grad.transpose() +
             b.grad * a.grad.transpose();
  if (o >= 3) {
    for (int i = 0; i < d; ++i) {
      r.third[i] = a.third[i] * b.value + b.third[i] * a.value;
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          r.third[i](j, k) += a.hess(i, j) * b.grad(k) + a.hess(i, k) * b.grad(j) +
                              a.hess(j, k) * b.grad(i) + b.hess(i, j) * a.grad(k) +
                              b.hess(i, k) * a.grad(j) + b.hess(j, k) * a.grad(i);
    }
  }
  return r;
}

/// Square root, exact through third order. Requires a positive value.
template <typename S>
JetT<S> sqrt_jet(const JetT<S>& u) {
  if (!(u.value > S(0))) throw std::runtime_error("sqrt_jet: non-positive radicand");
  const int d = u.dim(), o = u.order();
  JetT<S> h(d, o);
  const S s = std::sqrt(u.value);
  const S inv2s = S(1) / (S(2) * s);
  h.value = s;
  if (o >= 1) h.grad = u.grad * inv2s;
  if (o >= 2) h.hess = (u.hess - S(2) * (h.grad * h.grad.transpose())) * inv2s;
  if (o >= 3) {
    for (int i = 0; i < d; ++i) {
      h.third[i] = u.third[i];
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          h.third[i](j, k) -= S(2) * (h.hess(j, k) * h.grad(i) + h.grad(j) * h.hess(i, k) +
                                      h.grad(k) * h.hess(i, j));
      h.third[i] *= inv2s;
    }
  }
  return h;
}

/// The jet of d_i f, one order below the jet of f.
template <typename S>
JetT<S> derivative_jet(const JetT<S>& f, int i) {
  if (f.order() < 1) throw std::invalid_argument("derivative_jet: need order >= 1");
  if (i < 0 || i >= f.dim()) throw std::invalid_argument("derivative_jet: index out of range");
  JetT<S> r(f.dim(), f.order() - 1);
  r.value = f.grad[i];
  if (r.order() >= 1) r.grad = f.hess.col(i);
  if (r.order() >= 2) r.hess = f.third[i];
  return r;
}

/// Chain rule for f(e(x)): `outer` is the jet of f at e(x) over the ambient
/// coordinates, `inner[I]` the jet of e^I over the domain coordinates.
template <typename S>
JetT<S> compose_jet(const JetT<S>& outer, const std::vector<JetT<S>>& inner) {
  const int n = outer.dim(), o = outer.order();
  if (static_cast<int>(inner.size()) != n)
    throw std::invalid_argument("compose_jet: inner count must match outer dim");
  const int d = inner.front().dim();
  for (const auto& e : inner)
    if (e.dim() != d || e.order() != o)
      throw std::invalid_argument("compose_jet: inner jets must share dim/order");

  JetT<S> r(d, o);
  r.value = outer.value;
  if (o == 0) return r;

  typename JetT<S>::Mat J(n, d);  // J(I, a) = d_a e^I
  for (int I = 0; I < n; ++I) J.row(I) = inner[I].grad.transpose();

  r.grad = J.transpose() * outer.grad;
  if (o >= 2) {
    r.hess = J.transpose() * outer.hess * J;
    for (int I = 0; I < n; ++I) r.hess += outer.grad[I] * inner[I].hess;
  }
  if (o >= 3) {
    for (int a = 0; a < d; ++a) {
      auto& T = r.third[a];
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
          S acc = 0;
          for (int I = 0; I < n; ++I) {
            for (int J2 = 0; J2 < n; ++J2) {
              acc += outer.hess(I, J2) *
                     (inner[I].hess(a, b) * J(J2, c) + inner[I].hess(a, c) * J(J2, b) +
                      inner[I].hess(b, c) * J(J2, a));
              for (int K = 0; K < n; ++K)
                acc += outer.third[I](J2, K) * J(I, a) * J(J2, b) * J(K, c);
            }
            acc += outer.grad[I] * inner[I].third[a](b, c);
          }
          T(b, c) = acc;
        }
    }
  }
  return r;
}

/// Entrywise jets of the inverse of an n-by-n matrix of jets (row-major),
/// exact through second order. Third derivatives of an inverse are not
/// needed anywhere and are not implemented.
template <typename S>
std::vector<JetT<S>> jet_matrix_inverse(const std::vector<JetT<S>>& a, int n) {
  using Mat = typename JetT<S>::Mat;
  if (static_cast<int>(a.size()) != n * n)
    throw std::invalid_argument("jet_matrix_inverse: need n*n entries");
  const int d = a.front().dim();
  const int o = std::min(a.front().order(), 2);

  Mat A0(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) A0(r, c) = a[r * n + c].value;
  Eigen::FullPivLU<Mat> lu(A0);
  if (!lu.isInvertible()) throw std::runtime_error("jet_matrix_inverse: singular matrix");
  Mat B0 = lu.inverse();

  std::vector<Mat> Ai, Bi;
  if (o >= 1) {
    Ai.assign(d, Mat(n, n));
    for (int i = 0; i < d; ++i)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) Ai[i](r, c) = a[r * n + c].grad[i];
    Bi.resize(d);
    for (int i = 0; i < d; ++i) Bi[i] = -B0 * Ai[i] * B0;
  }

  std::vector<JetT<S>> out(n * n, JetT<S>(d, o));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      auto& j = out[r * n + c];
      j.value = B0(r, c);
      if (o >= 1)
        for (int i = 0; i < d; ++i) j.grad[i] = Bi[i](r, c);
    }
  if (o >= 2) {
    Mat Aij(n, n);
    for (int i = 0; i < d; ++i)
      for (int jx = i; jx < d; ++jx) {
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) Aij(r, c) = a[r * n + c].hess(i, jx);
        Mat Bij = B0 * Ai[i] * B0 * Ai[jx] * B0 + B0 * Ai[jx] * B0 * Ai[i] * B0 - B0 * Aij * B0;
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) {
            out[r * n + c].hess(i, jx) = Bij(r, c);
            out[r * n + c].hess(jx, i) = Bij(r, c);
          }
      }
  }
  return out;
}

}  // namespace fgeom
