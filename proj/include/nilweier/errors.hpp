#pragma once

#include <stdexcept>
#include <string>

namespace nilweier {

enum class Errc {
  TailOverflow,
  SingularLoop,
  OutsideBigCell,
  BoundaryCell,
  ZeroA,
  StepUnderflow,
  VerticalPoint,
  DegenerateMetric,
  NullEigenvector,
  NonUnimodularMonodromy,
  DegenerateEll,
  PoleAtMinusOne,
  NoRotationPart,
  CellMismatch,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::TailOverflow: return "TailOverflow";
    case Errc::SingularLoop: return "SingularLoop";
    case Errc::OutsideBigCell: return "OutsideBigCell";
    case Errc::BoundaryCell: return "BoundaryCell";
    case Errc::ZeroA: return "ZeroA";
    case Errc::StepUnderflow: return "StepUnderflow";
    case Errc::VerticalPoint: return "VerticalPoint";
    case Errc::DegenerateMetric: return "DegenerateMetric";
    case Errc::NullEigenvector: return "NullEigenvector";
    case Errc::NonUnimodularMonodromy: return "NonUnimodularMonodromy";
    case Errc::DegenerateEll: return "DegenerateEll";
    case Errc::PoleAtMinusOne: return "PoleAtMinusOne";
    case Errc::NoRotationPart: return "NoRotationPart";
    case Errc::CellMismatch: return "CellMismatch";
  }
  return "?";
}

// Every numeric failure carries its kind; the CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
 public:
  NumericError(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

template <Errc E>
class Fault : public NumericError {
 public:
  explicit Fault(const std::string& msg) : NumericError(E, msg) {}
};

using TailOverflow = Fault<Errc::TailOverflow>;
using SingularLoop = Fault<Errc::SingularLoop>;
using OutsideBigCell = Fault<Errc::OutsideBigCell>;
using BoundaryCell = Fault<Errc::BoundaryCell>;
using ZeroA = Fault<Errc::ZeroA>;
using StepUnderflow = Fault<Errc::StepUnderflow>;
using VerticalPoint = Fault<Errc::VerticalPoint>;
using DegenerateMetric = Fault<Errc::DegenerateMetric>;
using NullEigenvector = Fault<Errc::NullEigenvector>;
using NonUnimodularMonodromy = Fault<Errc::NonUnimodularMonodromy>;
using DegenerateEll = Fault<Errc::DegenerateEll>;
using PoleAtMinusOne = Fault<Errc::PoleAtMinusOne>;
using NoRotationPart = Fault<Errc::NoRotationPart>;
using CellMismatch = Fault<Errc::CellMismatch>;

// Malformed input files / options; exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nilweier
