#include "nilweier/equivariant.hpp"

#include <cmath>

namespace nilweier {

namespace {

const cd I(0, 1);

Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

Mat2 offdiag(const Mat2& m) {
  Mat2 r = m;
  r(0, 0) = r(1, 1) = 0;
  return r;
}

Mat2 diag_part(const Mat2& m) {
  Mat2 r = Mat2::Zero();
  r.diagonal() = m.diagonal();
  return r;
}

std::array<cd, 2> eigenvalues(const Mat2& m) {
  const cd half_tr = m.trace() / 2.0;
  const cd disc = std::sqrt(half_tr * half_tr - m.determinant());
  return {half_tr + disc, half_tr - disc};
}

// largest coefficient norm among negative degrees, relative to the loop size
double negative_mass(const Loop& g) {
  double m = 0;
  for (int n = -g.order(); n < 0; ++n) m = std::max(m, g[n].norm());
  return m / std::max(1.0, g.max_norm());
}

// fiber angle: 2 arg M(1)_11 lifted to the continuous branch 2 nu t
double lift_angle(double wrapped, double continuous) {
  const double k = std::round((continuous - wrapped) / (4 * M_PI));
  return wrapped + 4 * M_PI * k;
}

double rotation_rate(const DegreeOne& D) {
  if (det_at_one(D) <= 0) return std::numeric_limits<double>::quiet_NaN();
  const Mat2 E = eigenframe(D);
  return (E.inverse() * D.at_one() * E)(0, 0).imag();
}

void check_unimodular(const Mat2& M1) {
  for (cd mu : eigenvalues(M1))
    if (std::abs(std::abs(mu) - 1) > 1e-8)
      throw NonUnimodularMonodromy("eigenvalue of modulus " + std::to_string(std::abs(mu)) + " at lambda = 1");
}

}  // namespace

const char* class_name(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::Translation: return "Translation";
    case SymmetryClass::Helicoidal: return "Helicoidal";
    case SymmetryClass::HorizontalPlaneFamily: return "HorizontalPlaneFamily";
    case SymmetryClass::NonSymmetricDetZero: return "NonSymmetric(detZero)";
    case SymmetryClass::NonSymmetricDetNegative: return "NonSymmetric(detNegative)";
  }
  return "?";
}

SymmetryClass classify(const DegreeOne& P, double delta) {
  if (P.a == cd(0)) throw ZeroA("classify: a = 0");
  if (P.at_one().norm() <= delta) return SymmetryClass::Translation;
  const bool normalized = std::abs(P.a - 1.0) <= delta && std::abs(P.c - 2.0) <= delta;
  if (normalized && std::abs(P.b) <= delta) return SymmetryClass::HorizontalPlaneFamily;
  const double det = det_at_one(P);
  if (det > delta) return SymmetryClass::Helicoidal;
  if (det >= -delta) return SymmetryClass::NonSymmetricDetZero;
  return SymmetryClass::NonSymmetricDetNegative;
}

Mat2 eigenframe(const DegreeOne& P, double tol) {
  const double det = det_at_one(P);
  if (!(det > tol)) throw NullEigenvector("det D(1) <= 0: no sigma3-definite eigenvector");
  const double ell = std::sqrt(det);
  const cd w = P.b + std::conj(P.a);  // D(1) = ((ic, conj w), (w, -ic))
  Eigen::Vector2cd v;
  if (std::abs(w) <= tol) {
    v = P.c > 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
  } else {
    // (ic - mu) v0 + conj(w) v1 = 0; take the eigenvalue with positive norm
    for (double sgn : {1.0, -1.0}) {
      const cd mu = sgn * I * ell;
      v = Eigen::Vector2cd(std::conj(w), mu - cd(0, P.c));
      if (std::norm(v(0)) - std::norm(v(1)) > 0) break;
    }
  }
  const double nrm = std::norm(v(0)) - std::norm(v(1));
  if (!(nrm > tol)) throw NullEigenvector("eigenvector is sigma3-null");
  v /= std::sqrt(nrm);
  if (std::abs(v(1)) > tol) {
    const double ph = std::arg(v(0) * v(1));
    v *= std::polar(1.0, -(ph + M_PI / 2) / 2);
  } else {
    v *= std::polar(1.0, -std::arg(v(0)));
  }
  Mat2 E;
  E << v(0), std::conj(v(1)), v(1), std::conj(v(0));
  return E;
}

Loop diagonalizer(const DegreeOne& P, const Loop::Shape& s) {
  const Mat2 E = eigenframe(P);
  Loop S(s);
  S[0](0, 0) = E(1, 1);
  S[0](1, 1) = E(0, 0);
  S[1](0, 1) = -E(0, 1);
  S[-1](1, 0) = -E(1, 0);
  return S;
}

Loop twisted_boost(double p, double q, const Loop::Shape& s) {
  Loop B(s);
  B[0](0, 0) = B[0](1, 1) = std::cosh(p);
  B[1](0, 1) = std::polar(std::sinh(p), q);
  B[-1](1, 0) = std::polar(std::sinh(p), -q);
  return B;
}

Loop Monodromy::at(double t) const { return S * exp_degree_one(D, t, S.shape()) * loop_inv(S); }

MonodromyXY monodromy_xy(const Monodromy& M, double t) {
  const Loop Mh = exp_degree_one(M.D, t, M.S.shape());
  // values and v-derivatives at lambda = 1 (dot = i lambda d/dlambda)
  const Mat2 S1 = M.S.moment(0), Sd = I * M.S.moment(1), Sdd = -M.S.moment(2);
  const Mat2 H = Mh.moment(0), Hd = I * Mh.moment(1), Hdd = -Mh.moment(2);
  const Mat2 Si = S1.inverse(), Hi = H.inverse();

  const Mat2 A = Si * Sd;                // S^{-1} S'
  const Mat2 Ad = Si * Sdd - A * A;      // (S^{-1} S')'
  const Mat2 L = commutator(A, H) + Hd;  // [S^{-1} S', M^] + M^'
  const Mat2 Ld = commutator(Ad, H) + commutator(A, Hd) + Hdd;

  MonodromyXY r;
  r.M1 = S1 * H * Si;
  check_unimodular(r.M1);
  r.X = -S1 * L * Hi * Si;
  r.Y = 0.5 * S1 * (commutator(A, L) + Ld - L * Hi * L) * Hi * Si;
  const double wrapped = 2 * std::arg(r.M1(0, 0));
  const double nu = rotation_rate(M.D);
  r.theta = std::isnan(nu) ? wrapped : lift_angle(wrapped, 2 * nu * t);
  return r;
}

MonodromyXY monodromy_xy_direct(const Loop& Mt, double theta_hint) {
  const Mat2 M0 = Mt.moment(0), Md = I * Mt.moment(1), Mdd = -Mt.moment(2);
  const Mat2 Mi = M0.inverse();
  MonodromyXY r;
  r.M1 = M0;
  check_unimodular(M0);
  const Mat2 P = Md * Mi;
  r.X = -P;
  r.Y = 0.5 * (Mdd * Mi - P * P);
  r.theta = lift_angle(2 * std::arg(M0(0, 0)), theta_hint);
  return r;
}

Iso rho_from_xy(const MonodromyXY& xy) {
  return {{2 * xy.X(0, 1).imag(), -2 * xy.X(0, 1).real(), -2 * xy.Y(0, 0).imag()}, xy.theta};
}

Iso rho_from_monodromy(const Monodromy& M, double t) { return rho_from_xy(monodromy_xy(M, t)); }

HelicoidalParams helicoidal_params(cd b, double delta) {
  if (std::abs(b + 1.0) <= delta) throw PoleAtMinusOne("helicoidal_params: b = -1");
  const double rb = b.real(), nb = std::norm(b);
  const double ell2 = 3 - 2 * rb - nb;
  const double ell = ell2 > 0 ? std::sqrt(ell2) : 0.0;
  if (ell <= delta || ell >= 2 - delta) throw DegenerateEll("ell = " + std::to_string(ell) + " outside (0, 2)");
  HelicoidalParams h;
  h.ell = ell;
  h.alpha = I * (2 + ell) * (-6.0 + std::conj(b) + b * (3 + 2 * rb) + 4 * ell) /
            (ell2 * (1.0 + b) * std::sqrt(4 - ell2));
  h.pitch = -2 * catenoid_residual(b) / (ell2 * ell2);
  return h;
}

Iso helicoidal_rho(const HelicoidalParams& h, double t) { return helicoidal_motion(h.pitch, h.alpha, 2 * h.ell * t); }

double catenoid_residual(cd b) {
  const double rb = b.real(), nb = std::norm(b);
  return 3 * rb - rb * rb - nb * rb - nb;
}

bool catenoid_check(cd b, double tol) { return std::abs(catenoid_residual(b)) <= tol; }

TranslationOracle translation_oracle(double p, cd z) {
  const double x = z.real(), y = z.imag();
  const double c2 = std::cosh(2 * p), s2 = std::sinh(2 * p);
  TranslationOracle o;
  o.f = {4 * x * c2 + std::cosh(4 * y) * s2, std::sinh(4 * y), -2 * y * s2 + 2 * x * c2 * std::sinh(4 * y)};
  o.conformal_half = 2 * c2 * std::cosh(4 * y);
  return o;
}

ClosingDiagnostics closing_check(const Monodromy& M, double tau, double tol) {
  ClosingDiagnostics d;
  try {
    d.xy = monodromy_xy(M, tau);
  } catch (const NonUnimodularMonodromy& e) {
    d.note = e.what();
    return d;
  }
  const Mat2 id = Mat2::Identity();
  const double plus = (d.xy.M1 - id).norm(), minus = (d.xy.M1 + id).norm();
  d.sign = plus <= minus ? 1 : -1;
  d.m_residual = std::min(plus, minus);
  d.xo_residual = offdiag(d.xy.X).norm();
  d.yd_residual = diag_part(d.xy.Y).norm();
  d.rho = rho_from_xy(d.xy);
  d.closed = d.m_residual <= tol && d.xo_residual <= tol && d.yd_residual <= tol;
  return d;
}

Mono2Diagnostics mono2_predicate(const Loop& L, const Loop& b, const std::vector<Loop>& C_samples, Cell cell,
                                 double tol) {
  Mono2Diagnostics d;
  Loop rho;
  if (cell == Cell::OMEGA) {
    const Loop w0 = Loop::omega0(b.shape());
    d.plus_membership = negative_mass(-1.0 * (w0 * b * w0)) <= tol;  // w0^{-1} = -w0
    rho = L * b;
  } else {
    d.plus_membership = negative_mass(b) <= tol;
    rho = L * loop_inv(b);
  }
  d.reality_residual = reality_residual_su11(rho);
  d.reality = d.reality_residual <= tol;
  for (const Loop& C : C_samples) d.intertwiner_defect = std::max(d.intertwiner_defect, negative_mass(loop_inv(C) * b * C));
  d.intertwiner = d.intertwiner_defect <= tol;
  d.unimodular = true;
  for (cd mu : eigenvalues(rho.moment(0))) d.unimodular = d.unimodular && std::abs(std::abs(mu) - 1) <= 1e-8;
  return d;
}

EquivariantReport analyze(const DegreeOne& P, std::optional<Loop> S, const Loop::Shape& s, double delta,
                          double catenoid_tol) {
  EquivariantReport r;
  r.cls = classify(P, delta);
  r.det = det_at_one(P);
  r.ell = r.det > 0 ? std::sqrt(r.det) : 0.0;
  if (!S) S = r.det > delta ? diagonalizer(P, s) : Loop::identity(s);
  r.monodromy = {*S, P};
  const bool normalized = std::abs(P.a - 1.0) <= delta && std::abs(P.c - 2.0) <= delta;
  if (normalized && r.det > delta) {
    try {
      r.helicoidal = helicoidal_params(P.b, delta);
    } catch (const NumericError&) {
    }
  }
  r.catenoid = r.helicoidal.has_value() && catenoid_check(P.b, catenoid_tol);
  return r;
}

}  // namespace nilweier
