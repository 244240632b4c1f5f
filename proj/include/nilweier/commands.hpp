#pragma once
// The three CLI actions.  Each returns a process exit code:
// 0 pass, 2 configuration problem, 3 numeric failure.

#include <iosfwd>
#include <string>
#include <vector>

#include "nilweier/config.hpp"
#include "nilweier/equivariant.hpp"
#include "nilweier/io.hpp"

namespace nilweier {

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitNumeric = 3 };

// key: value lines
std::string analyze_report(const JobConfig& cfg);

struct Generated {
  FrameGrid frames;
  std::vector<SurfaceSample> samples;
  std::vector<SampleRow> rows;
};

// NumericError naming the first failing grid point (row-major order)
Generated generate_surface(const JobConfig& cfg, int threads = 0);

struct Residual {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = true;
  std::string note;
};

struct VerifyReport {
  std::vector<Residual> rows;
  std::vector<std::string> flags;  // e.g. VerticalPoint

  bool ok() const;
  std::string table() const;
};

// CSV-based checks (mean curvature, conformality) plus frame-based checks
// regenerated from the config (reality, Dirac, equivariance).
VerifyReport verify_samples(const JobConfig& cfg, const std::vector<SampleRow>& rows, int threads = 0);

int cmd_analyze(const std::string& config_path, const std::string& out_dir, std::ostream& out, std::ostream& err);
int cmd_generate(const std::string& config_path, const std::string& out_dir, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& config_path, const std::string& out_dir, std::ostream& out, std::ostream& err);

}  // namespace nilweier
