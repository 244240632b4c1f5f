#pragma once
// Heisenberg group in exponential coordinates and its orientation preserving
// isometries ((a1,a2,a3), e^{i theta}).  Everything here is closed form.

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "nilweier/errors.hpp"

namespace nilweier {

template <class T>
struct Nil3Point {
  T x1{}, x2{}, x3{};

  std::complex<T> horizontal() const { return {x1, x2}; }
  Eigen::Matrix<T, 3, 1> vec() const { return {x1, x2, x3}; }
  static Nil3Point from(const Eigen::Matrix<T, 3, 1>& v) { return {v(0), v(1), v(2)}; }
};

template <class T>
Nil3Point<T> nil_mul(const Nil3Point<T>& a, const Nil3Point<T>& x) {
  return {a.x1 + x.x1, a.x2 + x.x2, a.x3 + x.x3 + T(0.5) * (a.x1 * x.x2 - a.x2 * x.x1)};
}

template <class T>
Nil3Point<T> nil_inv(const Nil3Point<T>& a) {
  return {-a.x1, -a.x2, -a.x3};
}

// Rotation angle kept unreduced so one-parameter families stay smooth in t.
template <class T>
struct Isometry {
  Nil3Point<T> t;
  T theta{};

  std::complex<T> alpha() const { return t.horizontal(); }
  static Isometry identity() { return {}; }
};

template <class T>
Nil3Point<T> iso_apply(const Isometry<T>& r, const Nil3Point<T>& x) {
  const T c = std::cos(r.theta), s = std::sin(r.theta);
  return nil_mul(r.t, Nil3Point<T>{c * x.x1 - s * x.x2, s * x.x1 + c * x.x2, x.x3});
}

// (alpha c e^{i theta})(beta d e^{i tau})
//   = (alpha + e^{i theta} beta)(c + d + Im(conj(alpha) e^{i theta} beta)/2) e^{i(theta + tau)}
template <class T>
Isometry<T> iso_compose(const Isometry<T>& r, const Isometry<T>& s) {
  const std::complex<T> a = r.alpha();
  const std::complex<T> rb = std::polar(T(1), r.theta) * s.alpha();
  const std::complex<T> h = a + rb;
  return {{h.real(), h.imag(), r.t.x3 + s.t.x3 + T(0.5) * std::imag(std::conj(a) * rb)},
          r.theta + s.theta};
}

template <class T>
Isometry<T> iso_inverse(const Isometry<T>& r) {
  const std::complex<T> b = -std::polar(T(1), -r.theta) * r.alpha();
  return {{b.real(), b.imag(), -r.t.x3}, -r.theta};
}

template <class T>
Isometry<T> pure_rotation(T theta) {
  return {{}, theta};
}

template <class T>
Isometry<T> left_translation(const Nil3Point<T>& a) {
  return {a, T(0)};
}

// Screw motion with pitch c about the vertical line through alpha.
template <class T>
Isometry<T> helicoidal_motion(T pitch, std::complex<T> alpha, T t) {
  const std::complex<T> h = alpha * (T(1) - std::polar(T(1), t));
  return {{h.real(), h.imag(), pitch * t - std::norm(alpha) / T(2) * std::sin(t)}, t};
}

template <class T>
Isometry<T> translation_motion(std::complex<T> alpha, T pitch, T t) {
  return {{t * alpha.real(), t * alpha.imag(), t * pitch}, T(0)};
}

// rho = alpha {c e^{iq}} alpha^{-1}: axis point, central part and angle
template <class T>
struct ScrewForm {
  T central{};  // c in the conjugated form, i.e. pitch times angle
  std::complex<T> alpha;
  T angle{};
};

template <class T>
ScrewForm<T> decompose_isometry(const Isometry<T>& r, T tol = T(1e-12)) {
  const T q = r.theta;
  const T sh = std::sin(q / 2), sq = std::sin(q);
  const T vers = T(2) * sh * sh;  // 1 - cos q without the cancellation at small q
  const T det = T(2) * vers;      // 2 - 2 cos q
  if (det <= tol) throw NoRotationPart("decompose_isometry: rotation angle is a multiple of 2 pi");
  // [[1-cos q, sin q], [-sin q, 1-cos q]] (a1, a2) = (w1, w2)
  const T w1 = r.t.x1, w2 = r.t.x2;
  const T a1 = (vers * w1 - sq * w2) / det;
  const T a2 = (sq * w1 + vers * w2) / det;
  return {r.t.x3 + T(0.5) * (a1 * a1 + a2 * a2) * sq, {a1, a2}, q};
}

template <class T>
Isometry<T> compose_screw(const ScrewForm<T>& f) {
  // alpha {c e^{iq}} alpha^{-1} in closed form; composing the three factors
  // cancels terms of size |alpha|^2 when q is small
  const T q = f.angle;
  const std::complex<T> h = f.alpha * std::complex<T>(T(0), T(-2) * std::sin(q / 2)) * std::polar(T(1), q / 2);
  return {{h.real(), h.imag(), f.central - T(0.5) * std::norm(f.alpha) * std::sin(q)}, q};
}

// ds^2 = dx1^2 + dx2^2 + (dx3 + (x2 dx1 - x1 dx2)/2)^2
template <class T>
Eigen::Matrix<T, 3, 1> frame_components(const Nil3Point<T>& x, const Eigen::Matrix<T, 3, 1>& u) {
  return {u(0), u(1), u(2) + T(0.5) * (x.x2 * u(0) - x.x1 * u(1))};
}

template <class T>
T metric_eval(const Nil3Point<T>& x, const Eigen::Matrix<T, 3, 1>& u, const Eigen::Matrix<T, 3, 1>& v) {
  return frame_components(x, u).dot(frame_components(x, v));
}

// Vector field whose three coordinate components are affine in x:
// row k = (constant, d/dx1, d/dx2, d/dx3) of the k-th component.
template <class T>
using AffineField = Eigen::Matrix<T, 3, 4>;

// E1 = d1 - x2/2 d3, E2 = d2 + x1/2 d3, E3 = d3, E4 = -x2 d1 + x1 d2
template <class T>
std::array<AffineField<T>, 4> killing_field_components() {
  std::array<AffineField<T>, 4> E;
  for (auto& e : E) e.setZero();
  E[0](0, 0) = 1;
  E[0](2, 2) = T(-0.5);
  E[1](1, 0) = 1;
  E[1](2, 1) = T(0.5);
  E[2](2, 0) = 1;
  E[3](0, 2) = -1;
  E[3](1, 1) = 1;
  return E;
}

template <class T>
Eigen::Matrix<T, 3, 1> eval_field(const AffineField<T>& X, const Nil3Point<T>& x) {
  const Eigen::Matrix<T, 4, 1> h(T(1), x.x1, x.x2, x.x3);
  return X * h;
}

template <class T>
std::array<Eigen::Matrix<T, 3, 1>, 4> killing_fields(const Nil3Point<T>& x) {
  const auto E = killing_field_components<T>();
  return {eval_field(E[0], x), eval_field(E[1], x), eval_field(E[2], x), eval_field(E[3], x)};
}

// [X,Y]^k = X^j d_j Y^k - Y^j d_j X^k, exact on affine components.  The
// product of an affine function with a constant stays affine, so the result
// is again an AffineField.
template <class T>
AffineField<T> bracket(const AffineField<T>& X, const AffineField<T>& Y) {
  AffineField<T> r = AffineField<T>::Zero();
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      r.row(k) += Y(k, j + 1) * X.row(j);
      r.row(k) -= X(k, j + 1) * Y.row(j);
    }
  return r;
}

}  // namespace nilweier
