#pragma once
// Flat sectioned key = value job files.  Complex literals are written re+imi
// (also "2i", "-i", "1.5").  Unknown sections or keys are errors.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilweier/dpw.hpp"

namespace nilweier {

cd parse_complex(const std::string& text);
std::vector<cd> parse_complex_list(const std::string& text);
std::string format_complex(cd z);
std::string format_double(double x);  // %.17g

class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in);
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
  double number(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key, double fallback) const;
  int integer(const std::string& section, const std::string& key, int fallback) const;
  cd complex(const std::string& section, const std::string& key, cd fallback) const;
  // keys of a section that start with prefix
  std::vector<std::string> keys_with_prefix(const std::string& section, const std::string& prefix) const;
  // raises on anything outside the allowed table (prefix entries end with '.')
  void restrict_to(const std::map<std::string, std::vector<std::string>>& allowed) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

enum class PotentialKind { DegreeOne, Normalized, General };
enum class DressingKind { Auto, Identity, Boost, Diagonalizer, Explicit };

struct VerifyTolerances {
  double mean_curvature = 1e-2;
  double conformality = 1e-2;
  double dirac = 1e-2;
  double reality = 1e-8;
  double equivariance = 1e-6;
};

struct JobConfig {
  PotentialKind potential_kind = PotentialKind::DegreeOne;
  DegreeOne degree_one;
  Poly p, B;
  std::vector<Loop> general;  // coefficient of z^k

  DressingKind dressing_kind = DressingKind::Auto;
  double boost_p = 0, boost_q = 0;
  Loop explicit_S;

  GridSpec grid;
  cd z0 = 0;
  Loop::Shape shape;
  IwasawaOptions iwasawa;
  double rtol = 1e-10;
  double class_delta = 1e-10;
  double catenoid_tol = 1e-10;

  std::vector<double> analyze_times{0.1, 1.0};
  std::optional<double> closing_tau;

  std::string csv = "surface.csv";
  std::string obj = "surface.obj";
  std::string report = "report.txt";
  bool write_csv = true, write_obj = true;

  VerifyTolerances verify;

  static JobConfig load(const std::string& path);
  static JobConfig from(const KeyValueFile& kv);

  Potential potential() const;
  Loop dressing() const;
  DpwSetup setup() const;
};

}  // namespace nilweier
