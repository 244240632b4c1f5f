#include "nilweier/dpw.hpp"

#include <algorithm>
#include <cmath>

#include "nilweier/parallel.hpp"

namespace nilweier {

namespace {

const cd I(0, 1);
const cd SQRT_I = std::polar(1.0, M_PI / 4);

double grid_scale(const LoopGrid<double>& v) {
  double m = 0;
  for (const auto& a : v) m = std::max(m, a.cwiseAbs().maxCoeff());
  return m;
}

// dC/ds = C A(z(s)) dz on unit-circle samples, s in [0,1]
LoopGrid<double> rk4_segment(const Potential& eta, cd za, cd zb, LoopGrid<double> C, double rtol) {
  const cd dz = zb - za;
  const int M = static_cast<int>(C.size());
  auto rhs = [&](const LoopGrid<double>& y, double s) {
    auto A = to_grid(eta(za + s * dz), M);
    for (int k = 0; k < M; ++k) A[k] = y[k] * A[k] * dz;
    return A;
  };
  auto axpy = [M](const LoopGrid<double>& y, const LoopGrid<double>& k, double h) {
    LoopGrid<double> r(M);
    for (int i = 0; i < M; ++i) r[i] = y[i] + h * k[i];
    return r;
  };
  auto step = [&](const LoopGrid<double>& y, double s, double h) {
    const auto k1 = rhs(y, s);
    const auto k2 = rhs(axpy(y, k1, h / 2), s + h / 2);
    const auto k3 = rhs(axpy(y, k2, h / 2), s + h / 2);
    const auto k4 = rhs(axpy(y, k3, h), s + h);
    LoopGrid<double> r(M);
    for (int i = 0; i < M; ++i) r[i] = y[i] + (h / 6) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return r;
  };

  double s = 0, h = 0.1;
  while (s < 1) {
    h = std::min(h, 1 - s);
    if (h < 1e-12) throw StepUnderflow("integrate: step below 1e-12 of the segment");
    const auto full = step(C, s, h);
    const auto half = step(step(C, s, h / 2), s + h / 2, h / 2);
    double err = 0;
    for (int i = 0; i < M; ++i) err = std::max(err, (half[i] - full[i]).cwiseAbs().maxCoeff());
    err /= 15 * std::max(1.0, grid_scale(half));
    if (!std::isfinite(err)) throw StepUnderflow("integrate: non-finite state");
    if (err <= rtol) {
      for (int i = 0; i < M; ++i) C[i] = half[i] + (half[i] - full[i]) / 15.0;
      s += h;
    }
    h *= std::clamp(0.9 * std::pow(rtol / std::max(err, 1e-300), 0.2), 0.2, 2.0);
  }
  return C;
}

}  // namespace

Loop integrate(const Potential& eta, const std::vector<cd>& path, const Loop& C0, double rtol) {
  if (path.size() < 2) return C0;
  if (const auto& d = eta.as_degree_one()) return C0 * exp_degree_one(*d, path.back() - path.front(), C0.shape());
  LoopGrid<double> C = to_grid(C0);
  for (size_t k = 1; k < path.size(); ++k) C = rk4_segment(eta, path[k - 1], path[k], std::move(C), rtol);
  return from_grid_checked(C, C0.shape(), "integrate");
}

Loop solve_C(const DpwSetup& setup, cd z) { return integrate(setup.eta, {setup.z0, z}, setup.C0, setup.rtol); }

FramePoint frame_from_C(const DpwSetup& setup, const Loop& C, cd z) {
  FramePoint p;
  p.z = z;
  p.eta_m1 = setup.eta.minus_one(z);
  try {
    p.iw = iwasawa_su11(setup.S * C, setup.iwasawa);
    p.cell = p.iw.cell;
    p.frame = sym_frame(p.iw);
  } catch (const BoundaryCell& e) {
    p.failure = e.what();
  } catch (const OutsideBigCell& e) {
    p.failure = e.what();
  }
  return p;
}

FramePoint frame_at(const DpwSetup& setup, cd z) { return frame_from_C(setup, solve_C(setup, z), z); }

FrameGrid frame_grid(const DpwSetup& setup, const GridSpec& grid, int threads) {
  FrameGrid out;
  out.grid = grid;
  out.points.resize(grid.size());
  auto failed = [&](int k, const NumericError& e) {
    FramePoint& p = out.points[k];
    p.z = grid.at(k % grid.nx, k / grid.nx);
    p.cell = Cell::BOUNDARY;
    p.error = e.code();
    p.failure = e.what();
  };
  if (setup.eta.as_degree_one()) {
    parallel_for(
        grid.size(),
        [&](int k) {
          try {
            out.points[k] = frame_at(setup, grid.at(k % grid.nx, k / grid.nx));
          } catch (const NumericError& e) {
            failed(k, e);
          }
        },
        threads);
    return out;
  }
  // serial continuation down the first column, then rows in parallel;
  // once a step fails the rest of that line inherits the failure
  std::vector<Loop> column(grid.ny);
  int column_ok = 0;
  try {
    Loop C = integrate(setup.eta, {setup.z0, grid.at(0, 0)}, setup.C0, setup.rtol);
    for (int j = 0; j < grid.ny; ++j) {
      if (j > 0) C = integrate(setup.eta, {grid.at(0, j - 1), grid.at(0, j)}, C, setup.rtol);
      column[j] = C;
      column_ok = j + 1;
    }
  } catch (const NumericError& e) {
    for (int j = column_ok; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) failed(j * grid.nx + i, e);
  }
  parallel_for(
      column_ok,
      [&](int j) {
        Loop Cr = column[j];
        for (int i = 0; i < grid.nx; ++i) {
          try {
            if (i > 0) Cr = integrate(setup.eta, {grid.at(i - 1, j), grid.at(i, j)}, Cr, setup.rtol);
            out.points[j * grid.nx + i] = frame_from_C(setup, Cr, grid.at(i, j));
          } catch (const NumericError& e) {
            for (int r = i; r < grid.nx; ++r) failed(j * grid.nx + r, e);
            return;
          }
        }
      },
      threads);
  return out;
}

Eigen::Vector3d su11_coords(const Mat2& X) {
  return {2 * X(0, 1).imag(), -2 * X(0, 1).real(), -2 * X(0, 0).imag()};
}

double lorentz(const Mat2& X, const Mat2& Y) { return 2 * (X * Y).trace().real(); }

SymL3 sym_L3(const Loop& F) {
  const Mat2 s3 = sigma3<double>();
  const Mat2 F0 = F.moment(0), F1 = F.moment(1);
  const Mat2 Fi = F0.inverse();
  SymL3 r;
  r.N = 0.5 * I * F0 * s3 * Fi;
  r.f = -I * F1 * Fi - r.N;
  return r;
}

Point sym_nil(const Loop& frame) {
  const Mat2 s3 = sigma3<double>();
  const Mat2 F0 = frame.moment(0), F1 = frame.moment(1), F2 = frame.moment(2);
  const Mat2 Fi = F0.inverse();
  const Mat2 P = F1 * Fi;
  const Mat2 f = -I * P - 0.5 * I * F0 * s3 * Fi;
  const Mat2 df = -I * (F2 * Fi - P * P) - 0.5 * I * (F1 * s3 * Fi - F0 * s3 * Fi * P);
  // off-diagonal of f, diagonal of -(i/2) lambda d/dlambda f
  const cd f12 = f(0, 1);
  const cd f11 = -0.5 * I * df(0, 0);
  return {2 * f12.imag(), -2 * f12.real(), -2 * f11.imag()};
}

Point sym_nil(const IwasawaResult& iw, Cell tag) {
  if (iw.cell != tag)
    throw CellMismatch(std::string("frame is from cell ") + cell_name(iw.cell) + ", caller says " + cell_name(tag));
  return sym_nil(sym_frame(iw));
}

Spinors spinors_from_frame(const FramePoint& p, double vertical_tol) {
  if (p.cell == Cell::BOUNDARY) throw BoundaryCell("spinors_from_frame: boundary sample");
  // lambda^{-1} part of the (1,0) Maurer-Cartan form is v0 eta_{-1} v0^{-1}
  const Mat2& v0 = p.iw.l;
  const cd raw = -(v0(0, 0) / v0(1, 1)) * p.eta_m1(0, 1);
  Spinors s;
  s.h = 4 * std::abs(raw);
  if (!(s.h > vertical_tol)) throw VerticalPoint("support vanishes at the sample");
  // right gauge diag(k, conj k) with conj(k)^2 = i |raw| / raw
  const cd kbar = std::sqrt(I * std::abs(raw) / raw);
  const cd k = std::conj(kbar);
  const Mat2 F = p.frame.moment(0);
  const double amp = std::sqrt(s.h / 2);
  s.psi1 = SQRT_I * F(0, 0) * k * amp;
  s.psi2 = SQRT_I * F(0, 1) * kbar * amp;
  return s;
}

SurfaceSample surface_quantities(cd psi1, cd psi2, cd d_psi1, cd dbar_psi2) {
  SurfaceSample s;
  s.psi1 = psi1;
  s.psi2 = psi2;
  const double n1 = std::norm(psi1), n2 = std::norm(psi2);
  s.e_u = 4 * (n1 + n2) * (n1 + n2);
  s.h = 2 * (n1 - n2);
  if (std::abs(s.h) <= 1e-10) throw VerticalPoint("support vanishes");
  s.g = psi2 / std::conj(psi1);
  s.U_dirac = 0.25 * I * s.h;
  const cd phi3 = 2.0 * psi1 * std::conj(psi2);
  s.A = 2.0 * (psi1 * std::conj(dbar_psi2) - std::conj(psi2) * d_psi1) +
        4.0 * I * psi1 * psi1 * std::conj(psi2) * std::conj(psi2);
  s.Bcoef = 0.25 * I * (s.A + phi3 * phi3 / I);
  return s;
}

SurfaceSample sample_from_frame(const FramePoint& p) {
  SurfaceSample s;
  s.z = p.z;
  s.cell = p.cell;
  if (p.cell == Cell::BOUNDARY) return s;
  const Spinors sp = spinors_from_frame(p);
  const double n1 = std::norm(sp.psi1), n2 = std::norm(sp.psi2);
  s.psi1 = sp.psi1;
  s.psi2 = sp.psi2;
  s.e_u = 4 * (n1 + n2) * (n1 + n2);
  s.h = 2 * (n1 - n2);
  s.g = sp.psi2 / std::conj(sp.psi1);
  s.U_dirac = 0.25 * I * s.h;
  s.f = sym_nil(p.frame);
  const SymL3 L = sym_L3(p.frame);
  s.fL3 = L.f;
  s.N = L.N;
  return s;
}

double dirac_residual(const Stencil<Spinors>& st, double hx, double hy) {
  const Spinors& c = st[4];
  const cd psi1_x = (st[7].psi1 - st[1].psi1) / (2 * hx), psi1_y = (st[5].psi1 - st[3].psi1) / (2 * hy);
  const cd psi2_x = (st[7].psi2 - st[1].psi2) / (2 * hx), psi2_y = (st[5].psi2 - st[3].psi2) / (2 * hy);
  const cd d_psi2 = 0.5 * (psi2_x - I * psi2_y);
  const cd dbar_psi1 = 0.5 * (psi1_x + I * psi1_y);
  const cd U = 0.25 * I * c.h;
  return std::max(std::abs(d_psi2 + U * c.psi1), std::abs(-dbar_psi1 + U * c.psi2));
}

double dirac_residual(const Sampled<Spinors>& s) {
  double r = 0;
  for (int j = 1; j + 1 < s.ny; ++j)
    for (int i = 1; i + 1 < s.nx; ++i) r = std::max(r, dirac_residual(stencil_at(s, i, j), s.hx, s.hy));
  return r;
}

namespace {

using V3 = Eigen::Vector3d;

struct Jet {
  V3 x, fx, fy, fxx, fxy, fyy;
};

template <class V, class ToVec>
Jet jet(const Stencil<V>& st, double hx, double hy, ToVec vec) {
  Jet d;
  const V3 c = vec(st[4]);
  d.x = c;
  d.fx = (vec(st[7]) - vec(st[1])) / (2 * hx);
  d.fy = (vec(st[5]) - vec(st[3])) / (2 * hy);
  d.fxx = (vec(st[7]) - 2 * c + vec(st[1])) / (hx * hx);
  d.fyy = (vec(st[5]) - 2 * c + vec(st[3])) / (hy * hy);
  d.fxy = (vec(st[8]) - vec(st[6]) - vec(st[2]) + vec(st[0])) / (4 * hx * hy);
  return d;
}

// sum u_i v_j nabla_{E_i} E_j for the left-invariant orthonormal frame
V3 christoffel(const V3& u, const V3& v) {
  return {0.5 * (u(1) * v(2) + u(2) * v(1)), -0.5 * (u(0) * v(2) + u(2) * v(0)), 0.5 * (u(0) * v(1) - u(1) * v(0))};
}

// frame components of nabla_a b where a, b are coordinate partials of f
// and s is the coordinate second partial
V3 covariant(const Point& x, const V3& a, const V3& b, const V3& s) {
  const V3 acc(s(0), s(1), s(2) + 0.5 * (x.x2 * s(0) - x.x1 * s(1)) + 0.5 * (a(1) * b(0) - a(0) * b(1)));
  return acc + christoffel(frame_components(x, a), frame_components(x, b));
}

}  // namespace

double mean_curvature_nil3(const Stencil<Point>& st, double hx, double hy) {
  const Jet d = jet(st, hx, hy, [](const Point& p) { return p.vec(); });
  const Point x = st[4];
  const V3 u = frame_components(x, d.fx), v = frame_components(x, d.fy);
  const double E = u.dot(u), F = u.dot(v), G = v.dot(v);
  const double W = E * G - F * F;
  if (!(W > 1e-14 * std::max(1.0, E * G))) throw DegenerateMetric("first fundamental form is singular");
  const V3 n = u.cross(v).normalized();
  const double L = covariant(x, d.fx, d.fx, d.fxx).dot(n);
  const double M = covariant(x, d.fx, d.fy, d.fxy).dot(n);
  const double N = covariant(x, d.fy, d.fy, d.fyy).dot(n);
  return (E * N - 2 * F * M + G * L) / (2 * W);
}

std::vector<double> mean_curvature_nil3(const Sampled<Point>& s) {
  std::vector<double> H(s.v.size(), std::numeric_limits<double>::quiet_NaN());
  for (int j = 1; j + 1 < s.ny; ++j)
    for (int i = 1; i + 1 < s.nx; ++i) H[j * s.nx + i] = mean_curvature_nil3(stencil_at(s, i, j), s.hx, s.hy);
  return H;
}

std::array<double, 2> conformality_nil3(const Stencil<Point>& st, double hx, double hy) {
  const Jet d = jet(st, hx, hy, [](const Point& p) { return p.vec(); });
  const Point x = st[4];
  const V3 u = frame_components(x, d.fx), v = frame_components(x, d.fy);
  const double E = u.dot(u);
  return {std::abs(u.dot(v)) / E, std::abs(u.norm() - v.norm()) / u.norm()};
}

double mean_curvature_L3(const Stencil<Mat2>& f, const Mat2& N, double hx, double hy) {
  const Eigen::Vector3d eta(1, 1, -1);
  auto dot = [&](const V3& a, const V3& b) { return (a.cwiseProduct(eta)).dot(b); };
  const Jet d = jet(f, hx, hy, [](const Mat2& m) { return su11_coords(m); });
  const V3 n = su11_coords(N);
  const double E = dot(d.fx, d.fx), F = dot(d.fx, d.fy), G = dot(d.fy, d.fy);
  const double W = E * G - F * F;
  if (!(W > 0)) throw DegenerateMetric("Sym surface is not spacelike");
  // half the trace of the shape operator -dN, second form <f_ij, N>
  return (E * dot(d.fyy, n) - 2 * F * dot(d.fxy, n) + G * dot(d.fxx, n)) / (2 * W);
}

}  // namespace nilweier
