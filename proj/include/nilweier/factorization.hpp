#pragma once
// Birkhoff splitting of twisted loops and the SU(1,1) Iwasawa decomposition
// in its two open cells.

#include "nilweier/loop.hpp"

namespace nilweier {

using Loop = TwistedLoop<double>;
using Mat2 = Loop::Matrix;
using cd = std::complex<double>;

enum class Cell { E, OMEGA, BOUNDARY };
const char* cell_name(Cell c);

struct BirkhoffFactors {
  Loop minus;   // degrees <= 0, coeff(0) = id
  Mat2 middle;  // constant diagonal
  Loop plus;    // degrees >= 0, coeff(0) = id
  double residual = 0;  // max coefficient norm of X - minus middle plus
};

// X = minus * middle * plus by the truncated block-Toeplitz system for
// Y = plus^{-1}: (X Y) has no positive degrees.  Solved with pivoted QR;
// a condition estimate above cond_max raises OutsideBigCell.
BirkhoffFactors birkhoff(const Loop& X, double cond_max = 1e12);

struct IwasawaResult {
  Cell cell = Cell::E;
  Loop F;       // real-form factor (F~ in cell OMEGA)
  Loop Vplus;   // leading term positive diagonal
  Mat2 l;       // diag(sqrt|B11|, 1/sqrt|B11|): l in cell E, k in cell OMEGA
  Mat2 middle;  // Birkhoff middle factor B of phi(C)^{-1} C
  Loop Y;       // normalized plus^{-1}; C*Y is the meromorphic frame
  double reconstruction = 0;  // max coefficient norm of C - F (w0) Vplus
};

struct IwasawaOptions {
  double cell_delta = 1e-8;
  double cond_max = 1e12;
  double imag_tol = 1e-8;  // B is real on the diagonal; larger parts are inconsistent
};

// C = F Vplus (cell E) or C = F w0 Vplus (cell OMEGA).  BoundaryCell when
// |B11| <= delta or |B11| >= 1/delta; OutsideBigCell from the Toeplitz solve.
IwasawaResult iwasawa_su11(const Loop& C, const IwasawaOptions& opt = {});

// U = C*Y = F l (cell E) = F~ w0 k (cell OMEGA).  phi(U) = U B^{-1}.
Loop meromorphic_frame(const Loop& C, const IwasawaOptions& opt = {});
Loop meromorphic_frame(const Loop& C, const IwasawaResult& r);

// The frame fed to the Sym formulas: F in cell E, F~ w0 in cell OMEGA.
// Both equal C * Y * l^{-1}.
Loop sym_frame(const IwasawaResult& r);

// Q = phi(C)^{-1} C = s3 C^* s3 C pointwise, kept to order 2N.
Loop reality_quotient(const Loop& C);

}  // namespace nilweier
