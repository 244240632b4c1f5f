#pragma once
// Holomorphic potentials eta = A(z, lambda) dz.  A potential is a callback
// z -> loop; the constant degree-one case is also kept in closed form so
// integration can use the exact exponential.

#include <functional>
#include <optional>
#include <vector>

#include "nilweier/factorization.hpp"

namespace nilweier {

// D(lambda) = ((ic, a/lambda + lambda conj(b)), (b/lambda + lambda conj(a), -ic))
struct DegreeOne {
  cd a{1.0, 0.0};
  cd b{};
  double c = 0;

  Mat2 at_one() const;
};

Loop degree_one_matrix(const DegreeOne& P, const Loop::Shape& s = {});
double det_at_one(const DegreeOne& P);  // c^2 - |a + conj b|^2

// exp(z D), closed form per unit-circle sample
Loop exp_degree_one(const DegreeOne& P, cd z, const Loop::Shape& s = {});

// Polynomial in z with ascending coefficients.
struct Poly {
  std::vector<cd> c;

  cd operator()(cd z) const;
  Poly derivative() const;
};

class Potential {
 public:
  using Field = std::function<Loop(cd)>;

  Potential(Field f, Loop::Shape shape, std::optional<DegreeOne> d = std::nullopt)
      : f_(std::move(f)), shape_(shape), d_(d) {}

  static Potential zero(const Loop::Shape& s = {});
  static Potential degree_one(const DegreeOne& P, const Loop::Shape& s = {});
  // lambda^{-1} ((0, -p), (B/p, 0)); zeros of p are poles
  static Potential normalized(Poly p, Poly B, const Loop::Shape& s = {}, double pole_tol = 1e-12);
  // sum_k z^k coeffs[k]; every coefficient must have degrees >= -1
  static Potential polynomial(std::vector<Loop> coeffs);

  Loop operator()(cd z) const { return f_(z); }
  Mat2 minus_one(cd z) const { return f_(z)[-1]; }
  const std::optional<DegreeOne>& as_degree_one() const { return d_; }
  const Loop::Shape& shape() const { return shape_; }

 private:
  Field f_;
  Loop::Shape shape_;
  std::optional<DegreeOne> d_;
};

// Holomorphic plus-loop valued gauge W(z) = sum_k z^k coeffs[k].
struct PlusGauge {
  std::vector<Loop> coeffs;

  Loop operator()(cd z) const;
  Loop derivative(cd z) const;
  static PlusGauge constant(const Loop& W) { return {{W}}; }
};

// eta # W = W^{-1} eta W + W^{-1} dW
Potential gauge(const Potential& eta, const PlusGauge& W);

// max over samples of |eta(alpha z + beta) alpha - eta(z)| (coefficient norm)
double invariance_residual(const Potential& eta, cd alpha, cd beta, const std::vector<cd>& samples);

// Smallest |(eta_{-1})_{12}| over the samples; the immersion condition wants it nonzero.
double immersion_margin(const Potential& eta, const std::vector<cd>& samples);

}  // namespace nilweier
