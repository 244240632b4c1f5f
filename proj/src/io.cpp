#include "nilweier/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nilweier/config.hpp"

namespace nilweier {

namespace {

const double NaN = std::numeric_limits<double>::quiet_NaN();

template <class Fn>
void to_file(const std::string& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  fn(out);
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

Cell parse_cell(const std::string& s) {
  if (s == "E") return Cell::E;
  if (s == "OMEGA") return Cell::OMEGA;
  if (s == "BOUNDARY") return Cell::BOUNDARY;
  throw ConfigError("unknown cell tag '" + s + "'");
}

}  // namespace

SampleRow row_of(const SurfaceSample& s) {
  SampleRow r;
  r.z = s.z;
  r.cell = s.cell;
  if (s.cell == Cell::BOUNDARY) {
    r.f = {NaN, NaN, NaN};
    r.e_u = r.h = NaN;
    r.g = {NaN, NaN};
    return r;
  }
  r.f = s.f;
  r.e_u = s.e_u;
  r.h = s.h;
  r.g = s.g;
  return r;
}

void write_csv(std::ostream& out, const std::vector<SampleRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    for (double v : {r.z.real(), r.z.imag(), r.f.x1, r.f.x2, r.f.x3, r.e_u, r.h, r.g.real(), r.g.imag()})
      out << (std::isnan(v) ? std::string("nan") : format_double(v)) << ',';
    out << cell_name(r.cell) << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<SampleRow>& rows) {
  to_file(path, [&](std::ostream& o) { write_csv(o, rows); });
}

void write_obj(std::ostream& out, const std::vector<SampleRow>& rows, int nx, int ny) {
  if (static_cast<int>(rows.size()) != nx * ny) throw ConfigError("write_obj: row count does not match the grid");
  std::vector<int> index(rows.size(), 0);
  int next = 1;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    if (r.cell == Cell::BOUNDARY) continue;
    index[k] = next++;
    out << "v " << format_double(r.f.x1) << ' ' << format_double(r.f.x2) << ' ' << format_double(r.f.x3) << '\n';
  }
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      // counter-clockwise in the parameter plane
      const int corners[4] = {j * nx + i, j * nx + i + 1, (j + 1) * nx + i + 1, (j + 1) * nx + i};
      std::vector<int> kept;
      for (int c : corners)
        if (index[c]) kept.push_back(index[c]);
      if (kept.size() < 3) continue;
      out << 'f';
      for (int v : kept) out << ' ' << v;
      out << '\n';
    }
}

void write_obj(const std::string& path, const std::vector<SampleRow>& rows, int nx, int ny) {
  to_file(path, [&](std::ostream& o) { write_obj(o, rows, nx, ny); });
}

std::vector<SampleRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("CSV header mismatch");
  std::vector<SampleRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 10) throw ConfigError("CSV line " + std::to_string(lineno) + ": expected 10 fields");
    double v[9];
    for (int k = 0; k < 9; ++k) {
      char* end = nullptr;
      v[k] = std::strtod(f[k].c_str(), &end);
      if (f[k].empty() || *end) throw ConfigError("CSV line " + std::to_string(lineno) + ": bad number '" + f[k] + "'");
    }
    SampleRow r;
    r.z = {v[0], v[1]};
    r.f = {v[2], v[3], v[4]};
    r.e_u = v[5];
    r.h = v[6];
    r.g = {v[7], v[8]};
    r.cell = parse_cell(f[9]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<SampleRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace nilweier
