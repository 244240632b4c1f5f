#pragma once
// Generation pipeline: integrate dC = C eta, factorize S*C, Sym formulas into
// su(1,1) and Nil3, spinors and finite-difference geometry.

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nilweier/factorization.hpp"
#include "nilweier/nil3.hpp"
#include "nilweier/potentials.hpp"

namespace nilweier {

using Point = Nil3Point<double>;
using Iso = Isometry<double>;

// C at the end of a polyline starting from C0.  Constant degree-one
// potentials use the exact exponential; otherwise RK4 with step doubling.
Loop integrate(const Potential& eta, const std::vector<cd>& path, const Loop& C0, double rtol = 1e-10);

struct GridSpec {
  double x_min = -0.25, x_max = 0.25, y_min = -0.25, y_max = 0.25;
  int nx = 41, ny = 41;

  double hx() const { return nx > 1 ? (x_max - x_min) / (nx - 1) : 0.0; }
  double hy() const { return ny > 1 ? (y_max - y_min) / (ny - 1) : 0.0; }
  cd at(int i, int j) const { return {x_min + i * hx(), y_min + j * hy()}; }
  int size() const { return nx * ny; }
};

struct DpwSetup {
  Potential eta = Potential::zero();
  Loop S = Loop::identity();  // initial dressing
  cd z0 = 0;
  Loop C0 = Loop::identity();
  IwasawaOptions iwasawa;
  double rtol = 1e-10;
};

struct FramePoint {
  cd z;
  Cell cell = Cell::BOUNDARY;
  IwasawaResult iw;
  Loop frame;   // C*Y*l^{-1}: F in cell E, F~ w0 in cell OMEGA
  Mat2 eta_m1;  // lambda^{-1} coefficient of the potential at z
  std::string failure;  // why the point is BOUNDARY, or the numeric error
  std::optional<Errc> error;  // set when the point could not be computed
};

Loop solve_C(const DpwSetup& setup, cd z);
// Iwasawa of S*C; BoundaryCell/OutsideBigCell turn into a BOUNDARY tag.
FramePoint frame_from_C(const DpwSetup& setup, const Loop& C, cd z);
FramePoint frame_at(const DpwSetup& setup, cd z);

struct FrameGrid {
  GridSpec grid;
  std::vector<FramePoint> points;  // row-major in y: index j*nx + i

  const FramePoint& at(int i, int j) const { return points[j * grid.nx + i]; }
};

// Numeric failures are recorded per point (error set) instead of thrown.
FrameGrid frame_grid(const DpwSetup& setup, const GridSpec& grid, int threads = 0);

struct SymL3 {
  Mat2 f;  // point of L3 = su(1,1)
  Mat2 N;  // unit timelike normal
};

// f = -i lambda F' F^{-1} - (i/2) F s3 F^{-1}, N = (i/2) F s3 F^{-1} at lambda = 1
SymL3 sym_L3(const Loop& F);
Point sym_nil(const Loop& frame);
// picks F or F w0 by the cell; CellMismatch if the result carries another tag
Point sym_nil(const IwasawaResult& iw, Cell tag);

// su(1,1) <-> R^{2,1} in the basis E1 = (1/2)((0,i),(-i,0)),
// E2 = (1/2)((0,-1),(-1,0)), E3 = (1/2)((-i,0),(0,i)); <X,Y> = 2 tr(XY).
Eigen::Vector3d su11_coords(const Mat2& X);
double lorentz(const Mat2& X, const Mat2& Y);

struct Spinors {
  cd psi1, psi2;
  double h = 0;  // support recovered from the Maurer-Cartan form
};

Spinors spinors_from_frame(const FramePoint& p, double vertical_tol = 1e-10);

struct SurfaceSample {
  cd z;
  Cell cell = Cell::BOUNDARY;
  Point f;
  Mat2 fL3, N;
  cd psi1, psi2;
  double e_u = 0;  // e^u = 4(|psi1|^2+|psi2|^2)^2
  double h = 0;    // 2(|psi1|^2-|psi2|^2)
  cd g;            // psi2 / conj(psi1)
  cd U_dirac;      // (i/4) h
  cd A = std::numeric_limits<double>::quiet_NaN();
  cd Bcoef = std::numeric_limits<double>::quiet_NaN();

  double conformal_half() const { return std::sqrt(e_u); }  // e^{u/2}
};

// Pointwise fields; A and Bcoef need derivatives and stay NaN.
SurfaceSample sample_from_frame(const FramePoint& p);

// e_u, h, g, U from the spinors; A and B from d psi1 and dbar psi2.
SurfaceSample surface_quantities(cd psi1, cd psi2, cd d_psi1, cd dbar_psi2);

// values on a uniform grid, index j*nx + i
template <class V>
struct Sampled {
  int nx = 0, ny = 0;
  double hx = 0, hy = 0;
  std::vector<V> v;

  const V& at(int i, int j) const { return v[j * nx + i]; }
};

// 3x3 stencil, entry (di+1)*3 + (dj+1) at offset (di hx, dj hy)
template <class V>
using Stencil = std::array<V, 9>;

template <class V>
Stencil<V> stencil_at(const Sampled<V>& s, int i, int j) {
  Stencil<V> st;
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) st[(di + 1) * 3 + dj + 1] = s.at(i + di, j + dj);
  return st;
}

// Nonlinear Dirac residual max(|d psi2 + U psi1|, |-dbar psi1 + V psi2|),
// U = V = (i/4)h, central differences; NaN-free interior points only.
double dirac_residual(const Sampled<Spinors>& s);
double dirac_residual(const Stencil<Spinors>& st, double hx, double hy);

// Mean curvature in Nil3 with the Levi-Civita connection of the left-invariant metric.
double mean_curvature_nil3(const Stencil<Point>& st, double hx, double hy);
// per grid point, NaN on the border
std::vector<double> mean_curvature_nil3(const Sampled<Point>& s);

// |<f_x,f_y>| / |f_x|^2 and ||f_x| - |f_y|| / |f_x| in the Nil3 metric
std::array<double, 2> conformality_nil3(const Stencil<Point>& st, double hx, double hy);

// Mean curvature of the su(1,1) Sym surface from positions and the Sym normal,
// as half the trace of the shape operator -dN
double mean_curvature_L3(const Stencil<Mat2>& f, const Mat2& N, double hx, double hy);

// Samples a callable z -> V on the 3x3 stencil around z.
template <class V, class F>
Stencil<V> stencil_of(F&& fn, cd z, double h) {
  Stencil<V> st;
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) st[(di + 1) * 3 + dj + 1] = fn(z + cd(di * h, dj * h));
  return st;
}

}  // namespace nilweier
