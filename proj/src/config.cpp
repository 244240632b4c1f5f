#include "nilweier/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nilweier/equivariant.hpp"

namespace nilweier {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno == 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

Mat2 parse_matrix(const std::string& text, const std::string& where) {
  const auto v = parse_complex_list(text);
  if (v.size() != 4) throw ConfigError(where + ": expected four entries m00, m01, m10, m11");
  Mat2 m;
  m << v[0], v[1], v[2], v[3];
  return m;
}

int parse_int(const std::string& s, const std::string& where) {
  double x;
  if (!parse_real(s, x) || x != std::floor(x)) throw ConfigError(where + ": not an integer: '" + s + "'");
  return static_cast<int>(x);
}

}  // namespace

cd parse_complex(const std::string& raw) {
  // blanks are only allowed around the sign joining the two parts
  std::string s;
  const std::string body = trim(raw);
  for (std::size_t k = 0; k < body.size(); ++k) {
    const char ch = body[k];
    if (ch != ' ' && ch != '\t') {
      s += ch;
      continue;
    }
    std::size_t n = k;
    while (n < body.size() && (body[n] == ' ' || body[n] == '\t')) ++n;
    const bool sign_next = n < body.size() && (body[n] == '+' || body[n] == '-');
    const bool sign_prev = !s.empty() && (s.back() == '+' || s.back() == '-');
    if (!sign_next && !sign_prev) throw ConfigError("malformed complex literal '" + raw + "'");
    k = n - 1;
  }
  const auto bad = [&] { return ConfigError("malformed complex literal '" + raw + "'"); };
  if (s.empty()) throw bad();
  double re = 0, im = 0;
  if (s.back() != 'i') {
    if (!parse_real(s, re)) throw bad();
    return {re, 0};
  }
  s.pop_back();
  // split at the last sign that is not an exponent sign and not leading
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  std::string re_part, im_part = s;
  if (cut != std::string::npos) {
    re_part = s.substr(0, cut);
    im_part = s.substr(cut);
  }
  if (!re_part.empty() && !parse_real(re_part, re)) throw bad();
  if (im_part.empty() || im_part == "+")
    im = 1;
  else if (im_part == "-")
    im = -1;
  else if (!parse_real(im_part, im))
    throw bad();
  return {re, im};
}

std::vector<cd> parse_complex_list(const std::string& text) {
  std::vector<cd> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_complex(part));
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(cd z) {
  std::string s = format_double(z.real());
  const std::string im = format_double(z.imag());
  s += (im[0] == '-' ? "" : "+") + im + "i";
  return s;
}

KeyValueFile KeyValueFile::parse(std::istream& in) {
  KeyValueFile kv;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      kv.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": empty key");
    auto& sec = kv.sections_[section];
    if (sec.count(key)) throw ConfigError(where + ": duplicate key " + section + "." + key);
    sec[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse(in);
}

bool KeyValueFile::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key);
}

std::string KeyValueFile::text(const std::string& section, const std::string& key) const {
  if (!has(section, key)) throw ConfigError("missing key " + section + "." + key);
  return sections_.at(section).at(key);
}

std::string KeyValueFile::text(const std::string& section, const std::string& key, const std::string& fallback) const {
  return has(section, key) ? text(section, key) : fallback;
}

double KeyValueFile::number(const std::string& section, const std::string& key) const {
  double x;
  if (!parse_real(text(section, key), x)) throw ConfigError(section + "." + key + ": not a number");
  return x;
}

double KeyValueFile::number(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

int KeyValueFile::integer(const std::string& section, const std::string& key, int fallback) const {
  return has(section, key) ? parse_int(text(section, key), section + "." + key) : fallback;
}

cd KeyValueFile::complex(const std::string& section, const std::string& key, cd fallback) const {
  if (!has(section, key)) return fallback;
  try {
    return parse_complex(text(section, key));
  } catch (const ConfigError& e) {
    throw ConfigError(section + "." + key + ": " + e.what());
  }
}

std::vector<std::string> KeyValueFile::keys_with_prefix(const std::string& section, const std::string& prefix) const {
  std::vector<std::string> out;
  const auto it = sections_.find(section);
  if (it == sections_.end()) return out;
  for (const auto& [k, v] : it->second)
    if (k.rfind(prefix, 0) == 0) out.push_back(k);
  return out;
}

void KeyValueFile::restrict_to(const std::map<std::string, std::vector<std::string>>& allowed) const {
  for (const auto& [sec, entries] : sections_) {
    const auto it = allowed.find(sec);
    if (it == allowed.end()) throw ConfigError("unknown section [" + sec + "]");
    for (const auto& [k, v] : entries) {
      bool ok = false;
      for (const auto& a : it->second)
        ok = ok || (a.back() == '.' ? k.rfind(a, 0) == 0 : k == a);
      if (!ok) throw ConfigError("unknown key " + sec + "." + k);
    }
  }
}

JobConfig JobConfig::load(const std::string& path) { return from(KeyValueFile::load(path)); }

JobConfig JobConfig::from(const KeyValueFile& kv) {
  kv.restrict_to({
      {"potential", {"kind", "a", "b", "c", "p", "B", "eta."}},
      {"dressing", {"kind", "p", "q", "coeff."}},
      {"grid", {"x_min", "x_max", "y_min", "y_max", "nx", "ny", "z0"}},
      {"numerics", {"N", "M", "tail_tol", "cell_delta", "cond_max", "imag_tol", "rtol", "class_delta", "catenoid_tol"}},
      {"analyze", {"t", "tau"}},
      {"outputs", {"formats", "csv", "obj", "report"}},
      {"verify", {"mean_curvature", "conformality", "dirac", "reality", "equivariance"}},
  });
  JobConfig c;

  const int N = kv.integer("numerics", "N", 32);
  if (N < 1) throw ConfigError("numerics.N must be >= 1");
  const int M = kv.integer("numerics", "M", Loop::Shape::default_grid(N));
  if (M < 4 * N + 4 || (M & (M - 1)) != 0) throw ConfigError("numerics.M must be a power of two >= 4N+4");
  c.shape = {N, M, kv.number("numerics", "tail_tol", 1e-10)};
  c.iwasawa.cell_delta = kv.number("numerics", "cell_delta", c.iwasawa.cell_delta);
  c.iwasawa.cond_max = kv.number("numerics", "cond_max", c.iwasawa.cond_max);
  c.iwasawa.imag_tol = kv.number("numerics", "imag_tol", c.iwasawa.imag_tol);
  c.rtol = kv.number("numerics", "rtol", c.rtol);
  c.class_delta = kv.number("numerics", "class_delta", c.class_delta);
  c.catenoid_tol = kv.number("numerics", "catenoid_tol", c.catenoid_tol);
  for (double t : {c.shape.tail_tol, c.iwasawa.cell_delta, c.iwasawa.cond_max, c.iwasawa.imag_tol, c.rtol,
                   c.class_delta, c.catenoid_tol})
    if (!(t > 0)) throw ConfigError("numerics tolerances must be positive");

  const std::string kind = kv.text("potential", "kind", "degree_one");
  if (kind == "degree_one") {
    c.potential_kind = PotentialKind::DegreeOne;
    c.degree_one.a = kv.complex("potential", "a", 1.0);
    c.degree_one.b = kv.complex("potential", "b", 0.0);
    c.degree_one.c = kv.number("potential", "c", 0.0);
    if (c.degree_one.a == cd(0)) throw ConfigError("potential.a must be nonzero");
  } else if (kind == "normalized") {
    c.potential_kind = PotentialKind::Normalized;
    c.p.c = parse_complex_list(kv.text("potential", "p"));
    c.B.c = kv.has("potential", "B") ? parse_complex_list(kv.text("potential", "B")) : std::vector<cd>{0.0};
    bool zero = true;
    for (cd v : c.p.c) zero = zero && v == cd(0);
    if (zero) throw ConfigError("potential.p is identically zero");
  } else if (kind == "general") {
    c.potential_kind = PotentialKind::General;
    // eta.<k>.<n> = m00, m01, m10, m11 : coefficient of z^k lambda^n
    for (const auto& key : kv.keys_with_prefix("potential", "eta.")) {
      const auto parts = split(key, '.');
      if (parts.size() != 3) throw ConfigError("potential." + key + ": expected eta.<k>.<n>");
      const int k = parse_int(parts[1], "potential." + key), n = parse_int(parts[2], "potential." + key);
      if (k < 0 || k > 16) throw ConfigError("potential." + key + ": z-degree must be in 0..16");
      if (n < -1 || n > N) throw ConfigError("potential." + key + ": lambda-degree must be in -1..N");
      const Mat2 m = parse_matrix(kv.text("potential", key), "potential." + key);
      const bool even = n % 2 == 0;
      if ((even && (m(0, 1) != cd(0) || m(1, 0) != cd(0))) || (!even && (m(0, 0) != cd(0) || m(1, 1) != cd(0))))
        throw ConfigError("potential." + key + ": violates the twist (even degrees diagonal, odd off-diagonal)");
      if (static_cast<int>(c.general.size()) <= k) c.general.resize(k + 1, Loop(c.shape));
      c.general[k][n] = m;
    }
    if (c.general.empty()) throw ConfigError("general potential without eta.<k>.<n> entries");
  } else {
    throw ConfigError("potential.kind must be degree_one, normalized or general");
  }

  const std::string dk = kv.text("dressing", "kind", "auto_diagonalizer");
  if (dk == "auto_diagonalizer" || dk == "auto") {
    c.dressing_kind = DressingKind::Auto;
  } else if (dk == "identity") {
    c.dressing_kind = DressingKind::Identity;
  } else if (dk == "boost") {
    c.dressing_kind = DressingKind::Boost;
    c.boost_p = kv.number("dressing", "p", 0.0);
    c.boost_q = kv.number("dressing", "q", 0.0);
  } else if (dk == "diagonalizer") {
    c.dressing_kind = DressingKind::Diagonalizer;
  } else if (dk == "explicit") {
    c.dressing_kind = DressingKind::Explicit;
    c.explicit_S = Loop(c.shape);
    const auto keys = kv.keys_with_prefix("dressing", "coeff.");
    if (keys.empty()) throw ConfigError("explicit dressing without coeff.<n> entries");
    for (const auto& key : keys) {
      const int n = parse_int(key.substr(6), "dressing." + key);
      if (std::abs(n) > N) throw ConfigError("dressing." + key + ": degree outside -N..N");
      c.explicit_S[n] = parse_matrix(kv.text("dressing", key), "dressing." + key);
    }
    if (c.explicit_S.twist_defect() > 0) throw ConfigError("explicit dressing violates the twist");
  } else {
    throw ConfigError("dressing.kind must be auto_diagonalizer, identity, boost, diagonalizer or explicit");
  }
  if ((c.dressing_kind == DressingKind::Auto || c.dressing_kind == DressingKind::Diagonalizer) &&
      c.potential_kind != PotentialKind::DegreeOne && dk != "auto" && dk != "auto_diagonalizer")
    throw ConfigError("the diagonalizer needs a degree_one potential");

  c.grid.x_min = kv.number("grid", "x_min", c.grid.x_min);
  c.grid.x_max = kv.number("grid", "x_max", c.grid.x_max);
  c.grid.y_min = kv.number("grid", "y_min", c.grid.y_min);
  c.grid.y_max = kv.number("grid", "y_max", c.grid.y_max);
  c.grid.nx = kv.integer("grid", "nx", c.grid.nx);
  c.grid.ny = kv.integer("grid", "ny", c.grid.ny);
  c.z0 = kv.complex("grid", "z0", 0.0);
  if (!(c.grid.x_max > c.grid.x_min) || !(c.grid.y_max > c.grid.y_min)) throw ConfigError("grid ranges must be nonempty");
  if (c.grid.nx < 2 || c.grid.ny < 2) throw ConfigError("grid needs nx, ny >= 2");

  if (kv.has("analyze", "t")) {
    c.analyze_times.clear();
    for (const auto& part : split(kv.text("analyze", "t"), ',')) {
      double t;
      if (!parse_real(part, t)) throw ConfigError("analyze.t: not a number list");
      c.analyze_times.push_back(t);
    }
  }
  if (kv.has("analyze", "tau")) c.closing_tau = kv.number("analyze", "tau");

  if (kv.has("outputs", "formats")) {
    c.write_csv = c.write_obj = false;
    for (const auto& f : split(kv.text("outputs", "formats"), ',')) {
      if (f == "csv")
        c.write_csv = true;
      else if (f == "obj")
        c.write_obj = true;
      else
        throw ConfigError("outputs.formats: unknown format '" + f + "'");
    }
  }
  c.csv = kv.text("outputs", "csv", c.csv);
  c.obj = kv.text("outputs", "obj", c.obj);
  c.report = kv.text("outputs", "report", c.report);

  auto& v = c.verify;
  v.mean_curvature = kv.number("verify", "mean_curvature", v.mean_curvature);
  v.conformality = kv.number("verify", "conformality", v.conformality);
  v.dirac = kv.number("verify", "dirac", v.dirac);
  v.reality = kv.number("verify", "reality", v.reality);
  v.equivariance = kv.number("verify", "equivariance", v.equivariance);
  for (double t : {v.mean_curvature, v.conformality, v.dirac, v.reality, v.equivariance})
    if (!(t > 0)) throw ConfigError("verify tolerances must be positive");
  return c;
}

Potential JobConfig::potential() const {
  switch (potential_kind) {
    case PotentialKind::DegreeOne: return Potential::degree_one(degree_one, shape);
    case PotentialKind::Normalized: return Potential::normalized(p, B, shape);
    case PotentialKind::General: return Potential::polynomial(general);
  }
  return Potential::zero(shape);
}

Loop JobConfig::dressing() const {
  switch (dressing_kind) {
    case DressingKind::Identity: return Loop::identity(shape);
    case DressingKind::Boost: return twisted_boost(boost_p, boost_q, shape);
    case DressingKind::Explicit: return explicit_S;
    case DressingKind::Diagonalizer: return diagonalizer(degree_one, shape);
    case DressingKind::Auto:
      if (potential_kind == PotentialKind::DegreeOne && det_at_one(degree_one) > class_delta)
        return diagonalizer(degree_one, shape);
      return Loop::identity(shape);
  }
  return Loop::identity(shape);
}

DpwSetup JobConfig::setup() const {
  DpwSetup s;
  s.eta = potential();
  s.S = dressing();
  s.z0 = z0;
  s.C0 = Loop::identity(shape);
  s.iwasawa = iwasawa;
  s.rtol = rtol;
  return s;
}

}  // namespace nilweier
