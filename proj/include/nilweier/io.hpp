#pragma once
// Sample export (CSV, Wavefront OBJ) and CSV read-back for verification.

#include <iosfwd>
#include <string>
#include <vector>

#include "nilweier/dpw.hpp"

namespace nilweier {

// one CSV row; boundary rows carry NaN numbers
struct SampleRow {
  cd z;
  Point f;
  double e_u = 0, h = 0;
  cd g;
  Cell cell = Cell::BOUNDARY;
};

inline constexpr const char* kCsvHeader = "z_re,z_im,x1,x2,x3,e_u,h,g_re,g_im,cell";

SampleRow row_of(const SurfaceSample& s);

void write_csv(std::ostream& out, const std::vector<SampleRow>& rows);
void write_csv(const std::string& path, const std::vector<SampleRow>& rows);

// rows are grid-ordered (j*nx + i); BOUNDARY vertices are dropped, quads
// missing one corner become triangles, quads missing more are skipped
void write_obj(std::ostream& out, const std::vector<SampleRow>& rows, int nx, int ny);
void write_obj(const std::string& path, const std::vector<SampleRow>& rows, int nx, int ny);

// ConfigError on a missing file or malformed content
std::vector<SampleRow> read_csv(std::istream& in);
std::vector<SampleRow> read_csv(const std::string& path);

}  // namespace nilweier
