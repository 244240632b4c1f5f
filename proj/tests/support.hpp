#pragma once
// Random generators shared by the property tests.

#include <random>

#include "nilweier/equivariant.hpp"

namespace testing {

using namespace nilweier;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long seed) : eng(seed) {}

  double uniform(double a = -1, double b = 1) { return std::uniform_real_distribution<double>(a, b)(eng); }
  cd complex(double r = 1) { return {uniform(-r, r), uniform(-r, r)}; }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng); }
};

// twisted loop with entries in degrees [-deg, deg], decaying amplitude
inline Loop random_twisted(Rng& r, int deg, const Loop::Shape& s = {}) {
  Loop g(s);
  for (int n = -deg; n <= deg; ++n) {
    const double amp = std::pow(0.5, std::abs(n));
    if (n % 2 == 0) {
      g[n](0, 0) = amp * r.complex();
      g[n](1, 1) = amp * r.complex();
    } else {
      g[n](0, 1) = amp * r.complex();
      g[n](1, 0) = amp * r.complex();
    }
  }
  return g;
}

// element of the real form: products of twisted boosts and constant rotations
inline Loop random_real(Rng& r, int factors, const Loop::Shape& s = {}) {
  Loop g = Loop::identity(s);
  for (int k = 0; k < factors; ++k) {
    const double th = r.uniform(-M_PI, M_PI);
    Mat2 rot = Mat2::Zero();
    rot(0, 0) = std::polar(1.0, th);
    rot(1, 1) = std::polar(1.0, -th);
    g = g * twisted_boost(r.uniform(-0.4, 0.4), r.uniform(-M_PI, M_PI), s) * rot;
  }
  return g;
}

// unipotent factors in lambda^{sign}: ((1, lambda a), (0, 1)) and ((1, 0), (lambda b, 1))
inline Loop random_unipotent_product(Rng& r, int factors, int sign, const Loop::Shape& s = {}, double size = 0.4) {
  Loop g = Loop::identity(s);
  for (int k = 0; k < factors; ++k) {
    Loop u = Loop::identity(s);
    if (k % 2 == 0)
      u[sign](0, 1) = size * r.complex();
    else
      u[sign](1, 0) = size * r.complex();
    g = g * u;
  }
  return g;
}

// plus loop with positive diagonal leading term
inline Loop random_plus(Rng& r, int factors, const Loop::Shape& s = {}) {
  Mat2 d = Mat2::Zero();
  const double rho = std::exp(r.uniform(-0.5, 0.5));
  d(0, 0) = rho;
  d(1, 1) = 1 / rho;
  return d * random_unipotent_product(r, factors, 1, s);
}

inline Loop random_minus(Rng& r, int factors, const Loop::Shape& s = {}) {
  return random_unipotent_product(r, factors, -1, s);
}

inline Point random_point(Rng& r, double scale = 2) { return {r.uniform(-scale, scale), r.uniform(-scale, scale), r.uniform(-scale, scale)}; }

inline Iso random_iso(Rng& r, double scale = 2) { return {random_point(r, scale), r.uniform(-M_PI, M_PI)}; }

inline double dist(const Point& a, const Point& b) { return (a.vec() - b.vec()).norm(); }

}  // namespace testing
