#pragma once
// Truncated twisted Laurent loops lambda -> 2x2 complex matrices.
//
// A loop of order N keeps degrees -N..N.  Products and inverses are taken
// pointwise on M equispaced unit-circle samples and transformed back; the
// discarded high-degree mass is measured and must stay below tail_tol.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "nilweier/errors.hpp"

namespace nilweier {

template <class T>
struct LoopShape {
  int order = 32;
  int grid = 256;
  T tail_tol = T(1e-10);

  // smallest power of two >= max(256, 4N+4)
  static int default_grid(int order) {
    int m = 256;
    while (m < 4 * order + 4) m *= 2;
    return m;
  }
  static LoopShape with_order(int order) { return {order, default_grid(order), T(1e-10)}; }
  bool operator==(const LoopShape&) const = default;
};

template <class T>
class TwistedLoop {
 public:
  using Scalar = T;
  using Complex = std::complex<T>;
  using Matrix = Eigen::Matrix<Complex, 2, 2>;
  using Shape = LoopShape<T>;

  TwistedLoop() : TwistedLoop(Shape{}) {}
  explicit TwistedLoop(const Shape& s) : shape_(s), c_(2 * s.order + 1, Matrix::Zero()) {}

  static TwistedLoop identity(const Shape& s = {}) { return constant(Matrix::Identity(), s); }
  static TwistedLoop constant(const Matrix& m, const Shape& s = {}) {
    TwistedLoop g(s);
    g[0] = m;
    return g;
  }
  static TwistedLoop monomial(int n, const Matrix& m, const Shape& s = {}) {
    TwistedLoop g(s);
    g[n] = m;
    return g;
  }
  // ((0, lambda), (-1/lambda, 0))
  static TwistedLoop omega0(const Shape& s = {}) {
    TwistedLoop g(s);
    g[1](0, 1) = 1;
    g[-1](1, 0) = -1;
    return g;
  }

  int order() const { return shape_.order; }
  int grid() const { return shape_.grid; }
  const Shape& shape() const { return shape_; }

  Matrix& operator[](int n) { return c_.at(n + shape_.order); }
  const Matrix& operator[](int n) const { return c_.at(n + shape_.order); }
  Matrix coeff(int n) const {
    return std::abs(n) <= shape_.order ? c_[n + shape_.order] : Matrix::Zero();
  }

  // sum_n coeff(n) lambda^n
  Matrix operator()(Complex lambda) const {
    Matrix acc = (*this)[0];
    const Complex inv = Complex(1) / lambda;
    Complex up(1), down(1);
    for (int n = 1; n <= shape_.order; ++n) {
      up *= lambda;
      down *= inv;
      acc += (*this)[n] * up + (*this)[-n] * down;
    }
    return acc;
  }

  // k-th Euler moment sum_n n^k coeff(n) lambda0^n; k = 0, 1, 2 give the value
  // and the first two (lambda d/dlambda)-derivatives at lambda0.
  Matrix moment(int k, Complex lambda0 = Complex(1)) const {
    Matrix acc = Matrix::Zero();
    for (int n = -shape_.order; n <= shape_.order; ++n) {
      T w = T(1);
      for (int j = 0; j < k; ++j) w *= T(n);
      acc += (*this)[n] * (w * std::pow(lambda0, n));
    }
    return acc;
  }

  TwistedLoop& operator+=(const TwistedLoop& o) {
    for (int n = -order(); n <= order(); ++n) (*this)[n] += o.coeff(n);
    return *this;
  }
  TwistedLoop& operator-=(const TwistedLoop& o) {
    for (int n = -order(); n <= order(); ++n) (*this)[n] -= o.coeff(n);
    return *this;
  }
  TwistedLoop& operator*=(Complex s) {
    for (auto& m : c_) m *= s;
    return *this;
  }
  friend TwistedLoop operator+(TwistedLoop a, const TwistedLoop& b) { return a += b; }
  friend TwistedLoop operator-(TwistedLoop a, const TwistedLoop& b) { return a -= b; }
  friend TwistedLoop operator*(Complex s, TwistedLoop a) { return a *= s; }
  // products with a lambda-independent matrix act coefficientwise
  friend TwistedLoop operator*(const Matrix& m, TwistedLoop a) {
    for (auto& c : a.c_) c = m * c;
    return a;
  }
  friend TwistedLoop operator*(TwistedLoop a, const Matrix& m) {
    for (auto& c : a.c_) c = c * m;
    return a;
  }

  // same loop at another truncation order; dropped mass is not checked
  TwistedLoop reshaped(const Shape& s) const {
    TwistedLoop g(s);
    const int k = std::min(s.order, order());
    for (int n = -k; n <= k; ++n) g[n] = (*this)[n];
    return g;
  }

  // largest Frobenius norm over coefficients
  T max_norm() const {
    T m = 0;
    for (const auto& a : c_) m = std::max(m, a.norm());
    return m;
  }

  // largest entry that violates the sigma-twist parity
  T twist_defect() const {
    T d = 0;
    for (int n = -order(); n <= order(); ++n) {
      const Matrix& a = (*this)[n];
      if (n % 2 == 0)
        d = std::max({d, std::abs(a(0, 1)), std::abs(a(1, 0))});
      else
        d = std::max({d, std::abs(a(0, 0)), std::abs(a(1, 1))});
    }
    return d;
  }

  // zero out parity-violating entries (after a grid round trip they are noise)
  void enforce_twist() {
    for (int n = -order(); n <= order(); ++n) {
      Matrix& a = (*this)[n];
      if (n % 2 == 0)
        a(0, 1) = a(1, 0) = 0;
      else
        a(0, 0) = a(1, 1) = 0;
    }
  }

 private:
  Shape shape_;
  std::vector<Matrix> c_;
};

template <class T>
using LoopGrid = std::vector<typename TwistedLoop<T>::Matrix>;

template <class T>
T distance(const TwistedLoop<T>& a, const TwistedLoop<T>& b) {
  const int k = std::max(a.order(), b.order());
  T m = 0;
  for (int n = -k; n <= k; ++n) m = std::max(m, (a.coeff(n) - b.coeff(n)).norm());
  return m;
}

namespace detail {

template <class T>
Eigen::FFT<T>& fft_engine() {
  thread_local Eigen::FFT<T> fft = [] {
    Eigen::FFT<T> f;
    f.SetFlag(Eigen::FFT<T>::Unscaled);
    return f;
  }();
  return fft;
}

}  // namespace detail

// values at lambda_k = exp(2 pi i k / M), k = 0..M-1
template <class T>
LoopGrid<T> to_grid(const TwistedLoop<T>& g, int M = 0) {
  using C = std::complex<T>;
  if (M == 0) M = g.grid();
  LoopGrid<T> out(M);
  std::vector<C> in(M), res;
  auto& fft = detail::fft_engine<T>();
  for (int e = 0; e < 4; ++e) {
    std::fill(in.begin(), in.end(), C(0));
    for (int n = -g.order(); n <= g.order(); ++n) in[((n % M) + M) % M] += g[n](e / 2, e % 2);
    fft.inv(res, in);  // unscaled: sum_m a_m e^{+2 pi i k m / M}
    for (int k = 0; k < M; ++k) out[k](e / 2, e % 2) = res[k];
  }
  return out;
}

// Coefficients of grid values, truncated to s.order.  The relative Frobenius
// mass of the discarded degrees is written to *tail if given.
template <class T>
TwistedLoop<T> from_grid(const LoopGrid<T>& v, const LoopShape<T>& s, T* tail = nullptr) {
  using C = std::complex<T>;
  const int M = static_cast<int>(v.size());
  TwistedLoop<T> g(s);
  std::vector<C> in(M), res;
  auto& fft = detail::fft_engine<T>();
  T kept = 0, dropped = 0;
  for (int e = 0; e < 4; ++e) {
    for (int k = 0; k < M; ++k) in[k] = v[k](e / 2, e % 2);
    fft.fwd(res, in);
    for (int m = 0; m < M; ++m) {
      const int n = m < M / 2 ? m : m - M;
      const C a = res[m] / T(M);
      if (std::abs(n) <= s.order) {
        g[n](e / 2, e % 2) = a;
        kept += std::norm(a);
      } else {
        dropped += std::norm(a);
      }
    }
  }
  if (tail) *tail = (kept + dropped) > 0 ? std::sqrt(dropped / (kept + dropped)) : T(0);
  return g;
}

// from_grid that raises TailOverflow instead of silently truncating
template <class T>
TwistedLoop<T> from_grid_checked(const LoopGrid<T>& v, const LoopShape<T>& s, const char* op) {
  T tail = 0;
  TwistedLoop<T> g = from_grid(v, s, &tail);
  if (!(tail <= s.tail_tol))
    throw TailOverflow(std::string(op) + ": discarded tail mass " + std::to_string(tail));
  g.enforce_twist();
  return g;
}

template <class T>
TwistedLoop<T> loop_mul(const TwistedLoop<T>& a, const TwistedLoop<T>& b) {
  const int M = std::max(a.grid(), b.grid());
  LoopGrid<T> ga = to_grid(a, M), gb = to_grid(b, M);
  for (int k = 0; k < M; ++k) ga[k] = ga[k] * gb[k];
  auto s = a.shape();
  s.grid = M;
  return from_grid_checked(ga, s, "loop_mul");
}

template <class T>
TwistedLoop<T> operator*(const TwistedLoop<T>& a, const TwistedLoop<T>& b) {
  return loop_mul(a, b);
}

template <class T>
TwistedLoop<T> loop_inv(const TwistedLoop<T>& g) {
  LoopGrid<T> v = to_grid(g);
  for (auto& m : v) {
    const auto d = m.determinant();
    if (std::abs(d) < T(1e-12)) throw SingularLoop("loop_inv: |det| below 1e-12 on the grid");
    typename TwistedLoop<T>::Matrix r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    m = r / d;
  }
  return from_grid_checked(v, g.shape(), "loop_inv");
}

template <class T>
typename TwistedLoop<T>::Matrix sigma3() {
  typename TwistedLoop<T>::Matrix s;
  s << 1, 0, 0, -1;
  return s;
}

// max over the grid of |g* s3 g - s3|
template <class T>
T reality_residual_su11(const TwistedLoop<T>& g) {
  const auto s3 = sigma3<T>();
  T r = 0;
  for (const auto& m : to_grid(g)) r = std::max(r, (m.adjoint() * s3 * m - s3).norm());
  return r;
}

// Real-form involution phi(g)(lambda) = s3 (conj(g(1/conj lambda))^t)^{-1} s3,
// done on coefficients for unimodular loops: the adjugate of the conjugate
// transpose with degrees reflected.  Exact involution.
template <class T>
TwistedLoop<T> phi(const TwistedLoop<T>& g) {
  TwistedLoop<T> r(g.shape());
  for (int n = -g.order(); n <= g.order(); ++n) {
    const auto& a = g[-n];
    // s3 adj(a^*) s3 for 2x2: adj(B) = ((B11,-B01),(-B10,B00)), s3 flips the off-diagonal sign
    auto& b = r[n];
    b(0, 0) = std::conj(a(1, 1));
    b(1, 1) = std::conj(a(0, 0));
    b(0, 1) = std::conj(a(1, 0));
    b(1, 0) = std::conj(a(0, 1));
  }
  return r;
}

// d/dlambda: sum_n n coeff(n) lambda^{n-1}.  The result has the opposite twist
// and order N+1 so that nothing is lost.
template <class T>
TwistedLoop<T> lambda_derivative(const TwistedLoop<T>& g) {
  auto s = g.shape();
  s.order += 1;
  TwistedLoop<T> r(s);
  for (int n = -g.order(); n <= g.order(); ++n) r[n - 1] = g[n] * T(n);
  return r;
}

// lambda d/dlambda, degree preserving
template <class T>
TwistedLoop<T> euler_derivative(const TwistedLoop<T>& g) {
  TwistedLoop<T> r(g.shape());
  for (int n = -g.order(); n <= g.order(); ++n) r[n] = g[n] * T(n);
  return r;
}

// exp of a traceless 2x2 matrix: cosh(d) id + sinh(d)/d A with d^2 = -det A
template <class T>
typename TwistedLoop<T>::Matrix exp_traceless(const typename TwistedLoop<T>::Matrix& A) {
  using C = std::complex<T>;
  using Mat = typename TwistedLoop<T>::Matrix;
  const C d2 = -A.determinant();
  const C d = std::sqrt(d2);
  C ch, sh;  // cosh d, sinh d / d
  if (std::abs(d) < T(1e-4)) {
    ch = C(1) + d2 / T(2) + d2 * d2 / T(24);
    sh = C(1) + d2 / T(6) + d2 * d2 / T(120);
  } else {
    ch = std::cosh(d);
    sh = std::sinh(d) / d;
  }
  return ch * Mat::Identity() + sh * A;
}

// exp(z A(lambda)) for a loop A with traceless values, evaluated pointwise
template <class T>
TwistedLoop<T> loop_exp(const TwistedLoop<T>& A, std::complex<T> z) {
  LoopGrid<T> v = to_grid(A);
  for (auto& m : v) m = exp_traceless<T>(typename TwistedLoop<T>::Matrix(z * m));
  return from_grid_checked(v, A.shape(), "exp_degree_one");
}

}  // namespace nilweier
