#include "doctest.h"
#include "support.hpp"

using namespace nilweier;
using testing::Rng;

namespace {

const cd I(0, 1);

DpwSetup setup_for(const DegreeOne& P, const Loop& S) {
  DpwSetup s;
  s.eta = Potential::degree_one(P);
  s.S = S;
  return s;
}

// the same constant potential without the closed-form tag, so integration runs RK4
Potential untagged(const DegreeOne& P) {
  const Loop D = degree_one_matrix(P);
  return Potential([D](cd) { return D; }, D.shape());
}

// g(mu) -> g(e^{i theta} mu)
Loop rotate_spectral(const Loop& g, double theta) {
  Loop r = g;
  for (int n = -g.order(); n <= g.order(); ++n) r[n] *= std::polar(1.0, n * theta);
  return r;
}

Stencil<Point> sample_points(const DpwSetup& s, cd z, double h) {
  const auto fr = stencil_of<FramePoint>([&](cd w) { return frame_at(s, w); }, z, h);
  Stencil<Point> st;
  for (int k = 0; k < 9; ++k) st[k] = sym_nil(fr[k].frame);
  return st;
}

Stencil<Spinors> sample_spinors(const DpwSetup& s, cd z, double h) {
  const auto fr = stencil_of<FramePoint>([&](cd w) { return frame_at(s, w); }, z, h);
  Stencil<Spinors> st;
  for (int k = 0; k < 9; ++k) st[k] = spinors_from_frame(fr[k]);
  return st;
}

}  // namespace

TEST_CASE("integration") {
  Rng r(41);
  const Loop C0 = testing::random_real(r, 2);
  CHECK(distance(integrate(Potential::zero(), {0.0, cd(0.3, 0.2)}, C0), C0) < 1e-14);

  const DegreeOne P{1.0, cd(0.2, 0.3), 2.0};
  const Loop exact = integrate(Potential::degree_one(P), {0.0, 0.4}, C0);
  CHECK(distance(exact, C0 * exp_degree_one(P, 0.4)) < 1e-14);

  // RK4 against the closed form, along a bent path
  for (cd end : {cd(0.3, 0.0), cd(0.2, -0.25)}) {
    const Loop rk = integrate(untagged(P), {0.0, cd(0.1, 0.1), end}, C0);
    CHECK(distance(rk, C0 * exp_degree_one(P, end)) < 1e-9);
  }
}

TEST_CASE("frame grids") {
  GridSpec g{-0.5, 0.5, -0.5, 0.5, 9, 9};
  DpwSetup zero;
  const FrameGrid z = frame_grid(zero, g, 2);
  for (const auto& p : z.points) CHECK(distance(p.frame, Loop::identity()) < 1e-14);

  const FrameGrid t = frame_grid(setup_for({1.0, -1.0, 0}, Loop::identity()), g, 2);
  for (const auto& p : t.points) {
    CHECK(p.cell == Cell::E);
    CHECK(reality_residual_su11(p.iw.F) <= 1e-8);
  }

  // non-constant path: continuation along columns and rows matches pointwise exact frames
  const DegreeOne P{1.0, cd(0.2, 0.3), 2.0};
  DpwSetup rk = setup_for(P, diagonalizer(P));
  rk.eta = untagged(P);
  const GridSpec small{-0.1, 0.1, -0.1, 0.1, 4, 3};
  const FrameGrid a = frame_grid(rk, small, 2);
  const FrameGrid b = frame_grid(setup_for(P, diagonalizer(P)), small, 2);
  for (int k = 0; k < small.size(); ++k) CHECK(distance(a.points[k].frame, b.points[k].frame) < 1e-8);
}

TEST_CASE("frames of a helicoidal potential satisfy the monodromy relation") {
  const DegreeOne P{1.0, cd(0.2, 0.3), 2.0};
  const Loop S = diagonalizer(P);
  const DpwSetup s = setup_for(P, S);
  const Monodromy M{S, P};
  for (double t : {0.1, 0.5}) {
    const Loop Mt = M.at(t);
    CHECK(reality_residual_su11(Mt) < 1e-9);
    for (cd z : {cd(0.0), cd(0.1, -0.2)}) {
      const FramePoint p = frame_at(s, z), q = frame_at(s, z + t);
      CHECK(q.cell == p.cell);
      CHECK(distance(q.frame, Mt * p.frame) < 1e-9);
    }
  }
}

TEST_CASE("sym formulas") {
  const SymL3 id = sym_L3(Loop::identity());
  const Mat2 s3 = sigma3<double>();
  CHECK((id.f + 0.5 * I * s3).norm() < 1e-15);
  CHECK((id.N - 0.5 * I * s3).norm() < 1e-15);
  const Point o = sym_nil(Loop::identity());
  CHECK(o.vec().norm() < 1e-15);

  // a constant dressing moves the L3 surface by Ad
  const DpwSetup s = setup_for({1.0, -1.0, 0}, Loop::identity());
  const FramePoint p = frame_at(s, cd(0.1, 0.2));
  Mat2 K = Mat2::Zero();
  K(0, 0) = std::polar(1.0, 0.4);
  K(1, 1) = std::polar(1.0, -0.4);
  const SymL3 moved = sym_L3(K * p.frame), base = sym_L3(p.frame);
  CHECK((moved.f - K * base.f * K.inverse()).norm() < 1e-12);

  // Lorentz normalization and tangency of the normal
  const SymL3 L = sym_L3(frame_at(s, 0.0).frame);
  CHECK(std::abs(lorentz(L.N, L.N) + 1) < 1e-12);
  const double h = 1e-4;
  const Mat2 fx = (sym_L3(frame_at(s, h).frame).f - sym_L3(frame_at(s, -h).frame).f) / (2 * h);
  const Mat2 fy = (sym_L3(frame_at(s, I * h).frame).f - sym_L3(frame_at(s, -I * h).frame).f) / (2 * h);
  CHECK(std::abs(lorentz(fx, L.N)) < 1e-7);
  CHECK(std::abs(lorentz(fy, L.N)) < 1e-7);

  // associated family at the eighth roots of unity
  for (int k = 0; k < 8; ++k) {
    const Point q = sym_nil(rotate_spectral(p.frame, 2 * M_PI * k / 8));
    CHECK(std::isfinite(q.x1 + q.x2 + q.x3));
  }
  CHECK(sym_nil(rotate_spectral(p.frame, 0)).vec() == sym_nil(p.frame).vec());

  CHECK_THROWS_AS(sym_nil(p.iw, Cell::OMEGA), CellMismatch);
  CHECK((sym_nil(p.iw, Cell::E).vec() - sym_nil(p.frame).vec()).norm() == 0);
}

TEST_CASE("translation spinors") {
  const DpwSetup s = setup_for({1.0, -1.0, 0}, Loop::identity());
  for (double y : {0.0, 0.1, -0.2}) {
    const Spinors sp = spinors_from_frame(frame_at(s, cd(0, y)));
    // the extracted pair is (i sqrt2 cosh 2y, i sqrt2 sinh 2y)
    CHECK(std::abs(sp.psi1 - I * std::sqrt(2.0) * std::cosh(2 * y)) < 1e-10);
    CHECK(std::abs(sp.psi2 - I * std::sqrt(2.0) * std::sinh(2 * y)) < 1e-10);
    CHECK(sp.h == doctest::Approx(4.0).epsilon(1e-12));
    const SurfaceSample smp = sample_from_frame(frame_at(s, cd(0, y)));
    CHECK(smp.conformal_half() == doctest::Approx(2 * (std::norm(sp.psi1) + std::norm(sp.psi2))).epsilon(1e-12));
    CHECK(smp.conformal_half() == doctest::Approx(4 * std::cosh(4 * y)).epsilon(1e-10));
    CHECK(std::abs(smp.U_dirac - 0.25 * I * smp.h) == 0);
    CHECK(std::abs(smp.g) < 1);
  }
}

TEST_CASE("vertical samples are rejected") {
  FramePoint p = frame_at(setup_for({1.0, -1.0, 0}, Loop::identity()), 0.0);
  p.eta_m1.setZero();
  CHECK_THROWS_AS(spinors_from_frame(p), VerticalPoint);
  CHECK_THROWS_AS(surface_quantities(1.0, 1.0, 0.0, 0.0), VerticalPoint);
}

TEST_CASE("pointwise surface quantities") {
  const SurfaceSample s = surface_quantities(cd(0.6, 0.2), 0.0, 0.0, 0.0);
  CHECK(std::abs(s.g) == 0);
  CHECK(s.h == doctest::Approx(2 * 0.4));
  CHECK(s.e_u == doctest::Approx(4 * 0.4 * 0.4));

  // Abresch-Rosenberg coefficient is holomorphic on a generated surface
  const DegreeOne P{1.0, cd(0.2, 0.3), 2.0};
  const DpwSetup st = setup_for(P, diagonalizer(P));
  auto B_at = [&](cd z) {
    const double e = 1e-4;
    const auto sp = sample_spinors(st, z, e);
    const cd p1x = (sp[7].psi1 - sp[1].psi1) / (2 * e), p1y = (sp[5].psi1 - sp[3].psi1) / (2 * e);
    const cd p2x = (sp[7].psi2 - sp[1].psi2) / (2 * e), p2y = (sp[5].psi2 - sp[3].psi2) / (2 * e);
    return surface_quantities(sp[4].psi1, sp[4].psi2, 0.5 * (p1x - I * p1y), 0.5 * (p2x + I * p2y)).Bcoef;
  };
  const double h = 1e-2;
  const cd z(0.05, -0.03);
  const cd Bx = (B_at(z + h) - B_at(z - h)) / (2 * h), By = (B_at(z + I * h) - B_at(z - I * h)) / (2 * h);
  const cd dbarB = 0.5 * (Bx + I * By);
  CHECK(std::abs(dbarB) < 1e-4 * std::max(1.0, std::abs(B_at(z))));
}

TEST_CASE("dirac residual") {
  Stencil<Spinors> constant;
  for (auto& v : constant) v = {cd(1.0), cd(0.0), 2.0};
  CHECK(dirac_residual(constant, 0.1, 0.1) == doctest::Approx(0.5));

  const DegreeOne P{1.0, cd(0.2, 0.3), 2.0};
  const DpwSetup s = setup_for(P, diagonalizer(P));
  const cd z(0.05, 0.1);
  const double r1 = dirac_residual(sample_spinors(s, z, 2e-3), 2e-3, 2e-3);
  const double r2 = dirac_residual(sample_spinors(s, z, 1e-3), 1e-3, 1e-3);
  CHECK(r1 / r2 == doctest::Approx(4).epsilon(0.125));
}

TEST_CASE("nil3 mean curvature of model surfaces") {
  const double h = 1e-2;
  Stencil<Point> vertical, horizontal;
  const double slope = 0.7, c = 1 / std::sqrt(1 + slope * slope);
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) {
      const double u = 0.3 + di * h, v = -0.2 + dj * h;
      vertical[(di + 1) * 3 + dj + 1] = {c * u, c * slope * u, v};
      horizontal[(di + 1) * 3 + dj + 1] = {u, v, 0};
    }
  CHECK(std::abs(mean_curvature_nil3(vertical, h, h)) < 1e-12);
  CHECK(std::abs(mean_curvature_nil3(horizontal, h, h)) < 1e-12);
  const auto conf = conformality_nil3(vertical, h, h);
  CHECK(conf[0] < 1e-12);
  CHECK(conf[1] < 1e-12);

  Stencil<Point> line;
  for (int k = 0; k < 9; ++k) line[k] = {double(k / 3), 0, 0};
  CHECK_THROWS_AS(mean_curvature_nil3(line, h, h), DegenerateMetric);
}

TEST_CASE("generated surfaces are minimal and conformal") {
  const DegreeOne P{1.0, cd(0.2, 0.3), 2.0};
  for (const DpwSetup& s : {setup_for({1.0, -1.0, 0}, twisted_boost(0.3, 0)), setup_for(P, diagonalizer(P))}) {
    const cd z(0.05, 0.1);
    CHECK(std::abs(mean_curvature_nil3(sample_points(s, z, 1e-3), 1e-3, 1e-3)) <= 5e-5);
    const auto conf = conformality_nil3(sample_points(s, z, 2.5e-4), 2.5e-4, 2.5e-4);
    CHECK(conf[0] < 1e-6);
    CHECK(conf[1] < 1e-6);
    const auto fr = stencil_of<FramePoint>([&](cd w) { return frame_at(s, w); }, z, 1e-3);
    Stencil<Mat2> f;
    for (int k = 0; k < 9; ++k) f[k] = sym_L3(fr[k].frame).f;
    CHECK(mean_curvature_L3(f, sym_L3(fr[4].frame).N, 1e-3, 1e-3) == doctest::Approx(0.5).epsilon(1e-4));
  }
}

TEST_CASE("gauss map stays in the unit disc on a grid") {
  const DegreeOne P{1.0, cd(0.2, 0.3), 2.0};
  const FrameGrid fg = frame_grid(setup_for(P, diagonalizer(P)), {-0.25, 0.25, -0.25, 0.25, 7, 7}, 2);
  for (const auto& p : fg.points) {
    REQUIRE(p.cell != Cell::BOUNDARY);
    CHECK(std::abs(sample_from_frame(p).g) < 1);
  }
}
