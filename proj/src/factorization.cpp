#include "nilweier/factorization.hpp"

#include <cmath>
#include <string>

namespace nilweier {

const char* cell_name(Cell c) {
  switch (c) {
    case Cell::E: return "E";
    case Cell::OMEGA: return "OMEGA";
    case Cell::BOUNDARY: return "BOUNDARY";
  }
  return "?";
}

namespace {

// Unknown/equation slot s in {0,1} of degree n: diagonal entry (s,s) for even
// n, off-diagonal (s,1-s) for odd n.
int partner(int n, int s) { return (n % 2 == 0) ? s : 1 - s; }

// Y = id + sum_{m=1..K} y_m lambda^m with sum_m x_{n-m} y_m = -x_n, n = 1..K.
Loop solve_plus_inverse(const Loop& X, const Loop::Shape& shape, double cond_max) {
  const int K = shape.order;
  const int dim = 2 * K;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd rhs(dim);
  for (int n = 1; n <= K; ++n)
    for (int i = 0; i < 2; ++i) {
      const int j = partner(n, i);
      const int row = 2 * (n - 1) + i;
      rhs(row) = -X.coeff(n)(i, j);
      for (int m = 1; m <= K; ++m) {
        const Mat2 x = X.coeff(n - m);
        for (int k = 0; k < 2; ++k)
          if (partner(m, k) == j) A(row, 2 * (m - 1) + k) = x(i, k);
      }
    }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
  const auto R = qr.matrixR().diagonal().cwiseAbs();
  const double rmax = R.maxCoeff(), rmin = R.minCoeff();
  if (!(rmin > 0) || rmax / rmin > cond_max)
    throw OutsideBigCell("Toeplitz system condition estimate " + std::to_string(rmax / rmin) +
                         " exceeds " + std::to_string(cond_max));
  const Eigen::VectorXcd y = qr.solve(rhs);

  Loop Y = Loop::identity(shape);
  for (int m = 1; m <= K; ++m)
    for (int k = 0; k < 2; ++k) Y[m](k, partner(m, k)) = y(2 * (m - 1) + k);
  return Y;
}

// a*b without the tail check, for residual bookkeeping only
Loop mul_raw(const Loop& a, const Loop& b, const Loop::Shape& s) {
  const int M = std::max(a.grid(), b.grid());
  auto ga = to_grid(a, M), gb = to_grid(b, M);
  for (int k = 0; k < M; ++k) ga[k] = ga[k] * gb[k];
  return from_grid(ga, s);
}

}  // namespace

BirkhoffFactors birkhoff(const Loop& X, double cond_max) {
  const Loop Y = solve_plus_inverse(X, X.shape(), cond_max);

  auto wide = X.shape();
  wide.order = 2 * X.order();
  const Loop P = mul_raw(X, Y, wide);

  BirkhoffFactors f;
  f.middle = Mat2::Zero();
  f.middle.diagonal() = P[0].diagonal();
  const Mat2 mid_inv = f.middle.inverse();
  f.minus = Loop(X.shape());
  for (int n = -X.order(); n <= 0; ++n) f.minus[n] = P[n] * mid_inv;
  f.plus = loop_inv(Y);

  const Loop rebuilt = mul_raw(f.minus * f.middle, f.plus, X.shape());
  f.residual = distance(rebuilt, X);
  return f;
}

Loop reality_quotient(const Loop& C) {
  auto wide = C.shape();
  wide.order = 2 * C.order();
  const Mat2 s3 = sigma3<double>();
  auto v = to_grid(C);
  for (auto& m : v) m = s3 * m.adjoint() * s3 * m;
  return from_grid(v, wide);
}

IwasawaResult iwasawa_su11(const Loop& C, const IwasawaOptions& opt) {
  const Loop Q = reality_quotient(C);
  IwasawaResult r;
  r.Y = solve_plus_inverse(Q, C.shape(), opt.cond_max);

  Mat2 B = Mat2::Zero();
  for (int m = 0; m <= C.order(); ++m) B += Q.coeff(-m) * r.Y[m];
  r.middle = B;

  const double b = B(0, 0).real();
  const double scale = std::max(1.0, std::abs(b));
  if (std::abs(B(0, 0).imag()) > opt.imag_tol * scale || std::abs(B(0, 1)) > opt.imag_tol * scale ||
      std::abs(B(1, 0)) > opt.imag_tol * scale)
    throw OutsideBigCell("middle factor is not real diagonal");
  if (std::abs(b) <= opt.cell_delta || std::abs(b) >= 1.0 / opt.cell_delta)
    throw BoundaryCell("|B11| = " + std::to_string(std::abs(b)));

  r.cell = b > 0 ? Cell::E : Cell::OMEGA;
  const double s = std::sqrt(std::abs(b));
  r.l = Mat2::Zero();
  r.l(0, 0) = s;
  r.l(1, 1) = 1.0 / s;
  const Mat2 l_inv = r.l.inverse();

  const Loop U = C * r.Y;
  r.Vplus = r.l * loop_inv(r.Y);
  if (r.cell == Cell::E) {
    r.F = U * l_inv;
    r.reconstruction = distance(r.F * r.Vplus, C);
  } else {
    const Loop w0 = Loop::omega0(C.shape());
    r.F = -1.0 * ((U * l_inv) * w0);  // w0^{-1} = -w0
    r.reconstruction = distance(r.F * w0 * r.Vplus, C);
  }
  return r;
}

Loop meromorphic_frame(const Loop& C, const IwasawaResult& r) { return C * r.Y; }

Loop meromorphic_frame(const Loop& C, const IwasawaOptions& opt) {
  return meromorphic_frame(C, iwasawa_su11(C, opt));
}

Loop sym_frame(const IwasawaResult& r) {
  if (r.cell == Cell::OMEGA) return r.F * Loop::omega0(r.F.shape());
  return r.F;
}

}  // namespace nilweier
