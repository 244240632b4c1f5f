#include "nilweier/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nilweier {

Mat2 DegreeOne::at_one() const {
  Mat2 m;
  m << cd(0, c), a + std::conj(b), b + std::conj(a), cd(0, -c);
  return m;
}

Loop degree_one_matrix(const DegreeOne& P, const Loop::Shape& s) {
  if (P.a == cd(0)) throw ZeroA("degree-one potential needs a != 0");
  Loop D(s);
  D[-1](0, 1) = P.a;
  D[-1](1, 0) = P.b;
  D[0](0, 0) = cd(0, P.c);
  D[0](1, 1) = cd(0, -P.c);
  D[1](0, 1) = std::conj(P.b);
  D[1](1, 0) = std::conj(P.a);
  return D;
}

double det_at_one(const DegreeOne& P) { return P.c * P.c - std::norm(P.a + std::conj(P.b)); }

Loop exp_degree_one(const DegreeOne& P, cd z, const Loop::Shape& s) {
  return loop_exp(degree_one_matrix(P, s), z);
}

cd Poly::operator()(cd z) const {
  cd acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative() const {
  Poly d;
  for (size_t k = 1; k < c.size(); ++k) d.c.push_back(c[k] * double(k));
  return d;
}

Potential Potential::zero(const Loop::Shape& s) {
  return Potential([s](cd) { return Loop(s); }, s);
}

Potential Potential::degree_one(const DegreeOne& P, const Loop::Shape& s) {
  Loop D = degree_one_matrix(P, s);
  return Potential([D](cd) { return D; }, s, P);
}

Potential Potential::normalized(Poly p, Poly B, const Loop::Shape& s, double pole_tol) {
  return Potential(
      [p, B, s, pole_tol](cd z) {
        const cd pz = p(z);
        if (std::abs(pz) < pole_tol) throw StepUnderflow("normalized potential: pole of B/p");
        Loop L(s);
        L[-1](0, 1) = -pz;
        L[-1](1, 0) = B(z) / pz;
        return L;
      },
      s);
}

Potential Potential::polynomial(std::vector<Loop> coeffs) {
  if (coeffs.empty()) return zero();
  for (const auto& A : coeffs)
    for (int n = -A.order(); n < -1; ++n)
      if (A[n].norm() != 0) throw ConfigError("general potential coefficient has degree below -1");
  const auto s = coeffs.front().shape();
  return Potential(
      [coeffs](cd z) {
        Loop acc = coeffs.back();
        for (int k = int(coeffs.size()) - 2; k >= 0; --k) {
          acc *= z;
          acc += coeffs[k];
        }
        return acc;
      },
      s);
}

Loop PlusGauge::operator()(cd z) const {
  Loop acc = coeffs.back();
  for (int k = int(coeffs.size()) - 2; k >= 0; --k) {
    acc *= z;
    acc += coeffs[k];
  }
  return acc;
}

Loop PlusGauge::derivative(cd z) const {
  Loop acc(coeffs.front().shape());
  cd zk = 1;
  for (size_t k = 1; k < coeffs.size(); ++k) {
    acc += (double(k) * zk) * coeffs[k];
    zk *= z;
  }
  return acc;
}

Potential gauge(const Potential& eta, const PlusGauge& W) {
  return Potential(
      [eta, W](cd z) {
        const Loop w = W(z);
        const Loop wi = loop_inv(w);
        return wi * eta(z) * w + wi * W.derivative(z);
      },
      eta.shape());
}

double invariance_residual(const Potential& eta, cd alpha, cd beta, const std::vector<cd>& samples) {
  double r = 0;
  for (cd z : samples) r = std::max(r, distance(alpha * eta(alpha * z + beta), eta(z)));
  return r;
}

double immersion_margin(const Potential& eta, const std::vector<cd>& samples) {
  double m = std::numeric_limits<double>::infinity();
  for (cd z : samples) m = std::min(m, std::abs(eta.minus_one(z)(0, 1)));
  return m;
}

}  // namespace nilweier
