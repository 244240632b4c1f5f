#include "doctest.h"
#include "support.hpp"

using namespace nilweier;
using testing::Rng;

namespace {

std::vector<cd> disc_samples() {
  std::vector<cd> s;
  for (int k = 0; k < 12; ++k) s.push_back(std::polar(0.1 + 0.05 * k, 0.9 * k));
  return s;
}

Loop offdiag_minus_one(cd a, cd b) {
  Loop L;
  L[-1](0, 1) = a;
  L[-1](1, 0) = b;
  return L;
}

}  // namespace

TEST_CASE("degree-one matrix layout") {
  const Loop D = degree_one_matrix({1.0, 0.0, 2.0});
  CHECK(D[0](0, 0) == cd(0, 2));
  CHECK(D[0](1, 1) == cd(0, -2));
  CHECK(D[-1](0, 1) == cd(1));
  CHECK(D[-1](1, 0) == cd(0));
  CHECK(D[1](0, 1) == cd(0));
  CHECK(D[1](1, 0) == cd(1));
  CHECK(D.twist_defect() == 0);

  const DegreeOne general{cd(0.3, -0.7), cd(1.1, 0.4), -0.6};
  const Loop G = degree_one_matrix(general);
  CHECK(G[1](0, 1) == std::conj(general.b));
  CHECK(G[1](1, 0) == std::conj(general.a));
  CHECK((G(1.0) - general.at_one()).norm() < 1e-15);

  CHECK(degree_one_matrix({1.0, -1.0, 0}).moment(0).norm() == 0);
  CHECK_THROWS_AS(degree_one_matrix({0.0, 1.0, 1.0}), ZeroA);
}

TEST_CASE("determinant at one") {
  CHECK(det_at_one({1.0, 0.0, 2.0}) == 3);
  CHECK(det_at_one({1.0, -1.0, 0.0}) == 0);
  CHECK(det_at_one({1.0, 2.0, 2.0}) == -5);
  CHECK(std::abs(det_at_one({1.0, 2.0, 2.0}) - DegreeOne{1.0, 2.0, 2.0}.at_one().determinant().real()) < 1e-14);

  // conjugating by a unitary diagonal: a -> e^{2i phi} a, b -> e^{-2i phi} b
  Rng r(31);
  for (int trial = 0; trial < 100; ++trial) {
    const DegreeOne P{r.complex(2), r.complex(2), r.uniform(-2, 2)};
    const double ph = r.uniform(-M_PI, M_PI);
    const DegreeOne Q{P.a * std::polar(1.0, 2 * ph), P.b * std::polar(1.0, -2 * ph), P.c};
    CHECK(std::abs(det_at_one(Q) - det_at_one(P)) < 1e-12);
  }
}

TEST_CASE("degree-one matrices take values in su(1,1)") {
  Rng r(32);
  const Mat2 s3 = sigma3<double>();
  for (int trial = 0; trial < 50; ++trial) {
    const DegreeOne P{r.complex(2), r.complex(2), r.uniform(-2, 2)};
    const Loop D = degree_one_matrix(P);
    CHECK(std::abs(P.at_one().trace()) < 1e-15);
    for (const Mat2& v : to_grid(D)) CHECK((v.adjoint() * s3 + s3 * v).norm() < 1e-12);
  }
}

TEST_CASE("gauging") {
  Rng r(33);
  const DegreeOne P{1.0, cd(0.2, 0.3), 2.0};
  const Potential eta = Potential::degree_one(P);
  const auto samples = disc_samples();

  const Potential same = gauge(eta, PlusGauge::constant(Loop::identity()));
  for (cd z : samples) CHECK(distance(same(z), eta(z)) < 1e-14);

  Mat2 d = Mat2::Zero();
  d(0, 0) = 2.0;
  d(1, 1) = 0.5;
  const Potential conj = gauge(eta, PlusGauge::constant(Loop::constant(d)));
  for (cd z : samples) CHECK(distance(conj(z), d.inverse() * eta(z) * d) < 1e-13);

  // (eta # W1) # W2 = eta # (W1 W2) for z-dependent plus gauges
  for (int trial = 0; trial < 5; ++trial) {
    const PlusGauge W1{{testing::random_plus(r, 2), 0.3 * testing::random_unipotent_product(r, 1, 1)}};
    const Loop A = testing::random_plus(r, 2);
    const PlusGauge W2 = PlusGauge::constant(A);
    const PlusGauge W12{{W1.coeffs[0] * A, W1.coeffs[1] * A}};
    const Potential lhs = gauge(gauge(eta, W1), W2), rhs = gauge(eta, W12);
    for (cd z : samples) CHECK(distance(lhs(z), rhs(z)) < 1e-10);
  }
}

TEST_CASE("invariance residuals") {
  const auto samples = disc_samples();
  const Potential eta = Potential::degree_one({1.0, cd(0.2, 0.3), 2.0});
  CHECK(invariance_residual(eta, 1.0, 0.7, samples) == 0);

  const Potential linear = Potential::polynomial({Loop(), offdiag_minus_one(1.0, 1.0)});
  CHECK(invariance_residual(linear, 1.0, 1.0, samples) > 0.5);

  // z^3 A is invariant under the rotation z -> i z
  const Potential cubic = Potential::polynomial({Loop(), Loop(), Loop(), offdiag_minus_one(1.0, 2.0)});
  CHECK(invariance_residual(cubic, cd(0, 1), 0.0, samples) < 1e-14);
}

TEST_CASE("normalized potentials and immersion margin") {
  const Poly p{{cd(0.5), cd(1.0)}}, B{{cd(0.25)}};
  const Potential eta = Potential::normalized(p, B);
  const Loop v = eta(cd(0.5));
  CHECK(v[-1](0, 1) == cd(-1.0));
  CHECK(v[-1](1, 0) == cd(0.25));
  CHECK_THROWS_AS(eta(cd(-0.5)), StepUnderflow);
  CHECK(immersion_margin(eta, {cd(0), cd(0.5)}) == doctest::Approx(0.5));
  CHECK(p.derivative()(3.0) == cd(1.0));
}
