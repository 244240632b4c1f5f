#pragma once
// Symmetries of degree-one potentials: classification, the diagonalizing
// dressing, monodromy -> isometry extraction, helicoidal closed forms and
// closing conditions.

#include <optional>
#include <string>

#include "nilweier/dpw.hpp"

namespace nilweier {

enum class SymmetryClass { Translation, Helicoidal, HorizontalPlaneFamily, NonSymmetricDetZero, NonSymmetricDetNegative };
const char* class_name(SymmetryClass c);

SymmetryClass classify(const DegreeOne& P, double delta = 1e-10);

// sigma3-orthonormal eigenframe of D(1), first column of positive norm,
// phase fixed by e1[0] e1[1] in -i R_+ (e1[0] > 0 when D(1) is diagonal).
Mat2 eigenframe(const DegreeOne& P, double tol = 1e-12);
// S with S^{-1} = ((E11, lambda E12), (E21/lambda, E22))
Loop diagonalizer(const DegreeOne& P, const Loop::Shape& s = {});

// ((cosh p, lambda e^{iq} sinh p), (e^{-iq} sinh p / lambda, cosh p))
Loop twisted_boost(double p, double q, const Loop::Shape& s = {});

struct Monodromy {
  Loop S;
  DegreeOne D;

  Loop at(double t) const;  // S exp(tD) S^{-1}
};

struct MonodromyXY {
  double theta = 0;  // fiber angle, unreduced
  Mat2 X, Y;         // at lambda = 1
  Mat2 M1;           // M_t(1)
};

// X, Y from S and exp(tD) by moments (the S-conjugation formulas).
MonodromyXY monodromy_xy(const Monodromy& M, double t);
// Same data from the coefficients of a monodromy loop directly.
MonodromyXY monodromy_xy_direct(const Loop& Mt, double theta_hint = 0);

Iso rho_from_xy(const MonodromyXY& xy);
Iso rho_from_monodromy(const Monodromy& M, double t);

struct HelicoidalParams {
  double ell = 0;
  cd alpha;
  double pitch = 0;
};

// Closed forms for a = 1, c = 2.
HelicoidalParams helicoidal_params(cd b, double delta = 1e-10);
// rho_t = helicoidal_motion(pitch, alpha, 2 ell t)
Iso helicoidal_rho(const HelicoidalParams& h, double t);

double catenoid_residual(cd b);  // 3 Re b - (Re b)^2 - |b|^2 Re b - |b|^2
bool catenoid_check(cd b, double tol = 1e-10);

struct TranslationOracle {
  Point f;
  double conformal_half = 0;  // the stated e^{u/2}
};
TranslationOracle translation_oracle(double p, cd z);

struct ClosingDiagnostics {
  bool closed = false;
  int sign = 1;  // M(1) = sign * id
  double m_residual = 0, xo_residual = 0, yd_residual = 0;
  MonodromyXY xy;
  Iso rho;
  std::string note;
};

ClosingDiagnostics closing_check(const Monodromy& M, double tau, double tol = 1e-8);

struct Mono2Diagnostics {
  bool plus_membership = false;
  bool reality = false;
  bool intertwiner = false;
  bool unimodular = false;
  double reality_residual = 0;
  double intertwiner_defect = 0;

  bool ok() const { return plus_membership && reality && intertwiner && unimodular; }
};

// Case-2 monodromy test: rho = L b^{-1} (cell E) or L b (cell OMEGA) must be
// real, b (or w0^{-1} b w0) a plus-loop, C^{-1} b C plus-loops at every
// sample, and rho(1) with unimodular eigenvalues.
Mono2Diagnostics mono2_predicate(const Loop& L, const Loop& b, const std::vector<Loop>& C_samples, Cell cell,
                                 double tol = 1e-9);

struct EquivariantReport {
  SymmetryClass cls = SymmetryClass::NonSymmetricDetNegative;
  double det = 0;
  double ell = 0;
  std::optional<HelicoidalParams> helicoidal;  // closed forms when (a, c) = (1, 2)
  bool catenoid = false;
  Monodromy monodromy;  // with the dressing used for extraction

  Iso rho(double t) const { return rho_from_monodromy(monodromy, t); }
};

// S = the given dressing, or the diagonalizer / identity when absent
EquivariantReport analyze(const DegreeOne& P, std::optional<Loop> S = std::nullopt, const Loop::Shape& s = {},
                          double delta = 1e-10, double catenoid_tol = 1e-10);

}  // namespace nilweier
