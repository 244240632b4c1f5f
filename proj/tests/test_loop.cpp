#include "doctest.h"
#include "support.hpp"

using namespace nilweier;
using testing::Rng;

namespace {

Mat2 m(cd a, cd b, cd c, cd d) {
  Mat2 r;
  r << a, b, c, d;
  return r;
}

double coeff_distance(const Loop& a, const Loop& b) { return distance(a, b); }

}  // namespace

TEST_CASE("evaluation of simple loops") {
  CHECK((Loop::identity()(cd(0, 1)) - Mat2::Identity()).norm() == 0);
  const Loop g = Loop::monomial(-1, m(0, 1, 0, 0));
  CHECK((g(1.0) - m(0, 1, 0, 0)).norm() == 0);
  CHECK((Loop::omega0()(1.0) - m(0, 1, -1, 0)).norm() == 0);
  // off the circle the powers are still exact
  CHECK((Loop::omega0()(2.0) - m(0, 2, -0.5, 0)).norm() < 1e-15);
}

TEST_CASE("products") {
  Rng r(1);
  const Loop g = testing::random_twisted(r, 5);
  CHECK(coeff_distance(g * Loop::identity(), g) < 1e-14);
  CHECK(coeff_distance(Loop::omega0() * Loop::omega0(), -1.0 * Loop::identity()) < 1e-14);

  // against direct convolution of coefficients
  const Loop h = testing::random_twisted(r, 4);
  const Loop gh = g * h;
  double err = 0;
  for (int n = -9; n <= 9; ++n) {
    Mat2 acc = Mat2::Zero();
    for (int k = -5; k <= 5; ++k) acc += g.coeff(k) * h.coeff(n - k);
    err = std::max(err, (acc - gh.coeff(n)).norm());
  }
  CHECK(err < 1e-13);
}

TEST_CASE("twist parity survives products and inverses") {
  Rng r(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Loop a = testing::random_twisted(r, 6), b = testing::random_twisted(r, 6);
    Loop raw = a * b;
    CHECK(raw.twist_defect() == 0);
    const Loop inv = loop_inv(testing::random_real(r, 3));
    CHECK(inv.twist_defect() == 0);
  }
}

TEST_CASE("tail overflow is an error") {
  Loop::Shape small{4, 32, 1e-10};
  Loop g(small);
  g[3](0, 1) = g[3](1, 0) = 1;
  CHECK_THROWS_AS(g * g, TailOverflow);
}

TEST_CASE("inverse") {
  CHECK(coeff_distance(loop_inv(Loop::identity()), Loop::identity()) < 1e-15);
  CHECK(coeff_distance(loop_inv(Loop::omega0()), -1.0 * Loop::omega0()) < 1e-15);
  Rng r(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Loop g = testing::random_real(r, 4);
    const Loop gi = loop_inv(g);
    CHECK(coeff_distance(g * gi, Loop::identity()) < 1e-12);
    CHECK(reality_residual_su11(gi) < 1e-12);
  }
  Loop sing = Loop::identity();
  sing[0](1, 1) = 0;
  CHECK_THROWS_AS(loop_inv(sing), SingularLoop);
}

TEST_CASE("reality residual") {
  CHECK(reality_residual_su11(Loop::identity()) == 0);
  // w0^* s3 w0 = -s3 on the circle: w0 lies outside the real form
  CHECK(reality_residual_su11(Loop::omega0()) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
  const Loop d = Loop::constant(m(2, 0, 0, 0.5));
  CHECK(reality_residual_su11(d) > 1);

  Rng r(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Loop a = testing::random_real(r, 3), b = testing::random_real(r, 3);
    CHECK(reality_residual_su11(a) < 1e-12);
    CHECK(reality_residual_su11(a * b) < 1e-9);
  }
}

TEST_CASE("phi is an exact involution fixing the real form") {
  Rng r(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Loop g = testing::random_twisted(r, 7);
    CHECK(coeff_distance(phi(phi(g)), g) == 0);
    const Loop u = testing::random_real(r, 3);
    CHECK(coeff_distance(phi(u), u) < 1e-12);
  }
}

TEST_CASE("lambda derivatives") {
  CHECK(lambda_derivative(Loop::constant(m(1, 0, 0, 2))).max_norm() == 0);
  const Mat2 A = m(0, 3, -1, 0);
  const Loop d = lambda_derivative(Loop::monomial(1, A));
  CHECK((d(cd(0.3, 0.8)) - A).norm() < 1e-15);
  CHECK((euler_derivative(Loop::omega0())(1.0) - m(0, 1, 1, 0)).norm() < 1e-15);

  // linearity and the product rule, checked at sample points
  Rng r(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Loop g = testing::random_twisted(r, 5), h = testing::random_twisted(r, 5);
    const cd s = r.complex();
    const cd lam = std::polar(1.0, r.uniform(-M_PI, M_PI));
    const Loop lin = lambda_derivative(s * g + h);
    CHECK((lin(lam) - s * lambda_derivative(g)(lam) - lambda_derivative(h)(lam)).norm() < 1e-10);
    const Mat2 prod = lambda_derivative(g * h)(lam);
    const Mat2 rule = lambda_derivative(g)(lam) * h(lam) + g(lam) * lambda_derivative(h)(lam);
    CHECK((prod - rule).norm() < 1e-10);
  }
}

TEST_CASE("degree-one exponentials") {
  const DegreeOne trans{1.0, -1.0, 0};
  CHECK(coeff_distance(exp_degree_one(trans, 0.0), Loop::identity()) < 1e-15);
  CHECK((exp_degree_one(trans, cd(0.3, 0.2))(1.0) - Mat2::Identity()).norm() < 1e-13);

  Rng r(7);
  for (int trial = 0; trial < 30; ++trial) {
    const DegreeOne P{r.complex() + 1.5, r.complex(), r.uniform(-2, 2)};
    const cd s = r.complex(0.3), t = r.complex(0.3);
    const Loop lhs = exp_degree_one(P, s + t);
    const Loop rhs = exp_degree_one(P, s) * exp_degree_one(P, t);
    CHECK(coeff_distance(lhs, rhs) < 1e-10);
    CHECK(reality_residual_su11(exp_degree_one(P, s.real())) < 1e-10);
  }
}

TEST_CASE("grid round trip") {
  Rng r(8);
  const Loop g = testing::random_twisted(r, 10);
  double tail = 1;
  const Loop back = from_grid(to_grid(g), g.shape(), &tail);
  CHECK(coeff_distance(back, g) < 1e-14);
  CHECK(tail < 1e-14);
}
