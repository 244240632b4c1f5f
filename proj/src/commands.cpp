#include "nilweier/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nilweier/parallel.hpp"

namespace nilweier {

namespace {

const double NaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) { return std::isnan(x) ? "nan" : format_double(x); }

std::string where(const GridSpec& g, int k) {
  const int i = k % g.nx, j = k / g.nx;
  std::ostringstream s;
  s << "grid (" << i << ", " << j << "), z = " << format_complex(g.at(i, j));
  return s.str();
}

std::string iso_text(const Iso& r) {
  return num(r.t.x1) + " " + num(r.t.x2) + " " + num(r.t.x3) + " " + num(r.theta);
}

std::optional<Loop> explicit_dressing(const JobConfig& cfg) {
  if (cfg.dressing_kind == DressingKind::Auto) return std::nullopt;
  return cfg.dressing();
}

bool has_symmetry(SymmetryClass c) {
  return c == SymmetryClass::Translation || c == SymmetryClass::Helicoidal || c == SymmetryClass::HorizontalPlaneFamily;
}

std::string output_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

std::string analyze_report(const JobConfig& cfg) {
  std::ostringstream r;
  if (cfg.potential_kind != PotentialKind::DegreeOne) {
    const Potential eta = cfg.potential();
    std::vector<cd> samples;
    for (int j = 0; j < cfg.grid.ny; ++j)
      for (int i = 0; i < cfg.grid.nx; ++i) samples.push_back(cfg.grid.at(i, j));
    r << "potential: " << (cfg.potential_kind == PotentialKind::Normalized ? "normalized" : "general") << '\n';
    r << "class: unclassified\n";
    r << "immersion_margin: " << num(immersion_margin(eta, samples)) << '\n';
    return r.str();
  }
  const DegreeOne& P = cfg.degree_one;
  const EquivariantReport rep = analyze(P, explicit_dressing(cfg), cfg.shape, cfg.class_delta, cfg.catenoid_tol);
  r << "potential: degree_one\n";
  r << "a: " << format_complex(P.a) << '\n';
  r << "b: " << format_complex(P.b) << '\n';
  r << "c: " << num(P.c) << '\n';
  r << "class: " << class_name(rep.cls) << '\n';
  r << "det_at_one: " << num(rep.det) << '\n';
  r << "ell: " << num(rep.ell) << '\n';
  if (rep.helicoidal) {
    r << "alpha: " << format_complex(rep.helicoidal->alpha) << '\n';
    r << "pitch: " << num(rep.helicoidal->pitch) << '\n';
  } else {
    r << "alpha: n/a\npitch: n/a\n";
  }
  r << "catenoid_residual: " << num(catenoid_residual(P.b)) << '\n';
  r << "catenoid: " << (rep.catenoid ? "true" : "false") << '\n';
  if (!has_symmetry(rep.cls)) {
    r << "rho: none\n";
    return r.str();
  }
  for (double t : cfg.analyze_times) r << "rho_t(" << num(t) << "): " << iso_text(rep.rho(t)) << '\n';
  if (rep.cls == SymmetryClass::Translation) {
    const Iso one = rep.rho(1.0);
    r << "direction: " << num(one.t.x1) << " " << num(one.t.x2) << " " << num(one.t.x3) << '\n';
  }
  const double tau = cfg.closing_tau.value_or(rep.ell > 0 ? 2 * M_PI / rep.ell : 1.0);
  const ClosingDiagnostics d = closing_check(rep.monodromy, tau);
  r << "closing_tau: " << num(tau) << '\n';
  if (!d.note.empty()) {
    r << "closing: " << d.note << '\n';
  } else {
    r << "closing_sign: " << d.sign << '\n';
    r << "closing_m_residual: " << num(d.m_residual) << '\n';
    r << "closing_xo_residual: " << num(d.xo_residual) << '\n';
    r << "closing_yd_residual: " << num(d.yd_residual) << '\n';
    r << "closing_rho: " << iso_text(d.rho) << '\n';
  }
  r << "closed: " << (d.closed ? "true" : "false") << '\n';
  return r.str();
}

Generated generate_surface(const JobConfig& cfg, int threads) {
  Generated g;
  const DpwSetup setup = cfg.setup();
  g.frames = frame_grid(setup, cfg.grid, threads);
  const int n = cfg.grid.size();
  g.samples.resize(n);
  for (int k = 0; k < n; ++k) {
    const FramePoint& p = g.frames.points[k];
    if (p.error) throw NumericError(*p.error, where(cfg.grid, k) + ": " + p.failure);
    try {
      g.samples[k] = sample_from_frame(p);
    } catch (const NumericError& e) {
      throw NumericError(e.code(), where(cfg.grid, k) + ": " + e.what());
    }
  }
  g.rows.reserve(n);
  for (const auto& s : g.samples) g.rows.push_back(row_of(s));
  return g;
}

bool VerifyReport::ok() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::string VerifyReport::table() const {
  std::ostringstream s;
  s << "check,value,tolerance,status,note\n";
  for (const auto& r : rows)
    s << r.name << ',' << num(r.value) << ',' << num(r.tolerance) << ',' << (r.pass ? "pass" : "FAIL") << ','
      << r.note << '\n';
  for (const auto& f : flags) s << "flag," << f << '\n';
  return s.str();
}

VerifyReport verify_samples(const JobConfig& cfg, const std::vector<SampleRow>& rows, int threads) {
  const GridSpec& g = cfg.grid;
  if (static_cast<int>(rows.size()) != g.size())
    throw ConfigError("CSV has " + std::to_string(rows.size()) + " rows, grid expects " + std::to_string(g.size()));
  const double zscale = std::max({std::abs(g.x_min), std::abs(g.x_max), std::abs(g.y_min), std::abs(g.y_max), 1.0});
  for (int k = 0; k < g.size(); ++k)
    if (std::abs(rows[k].z - g.at(k % g.nx, k / g.nx)) > 1e-9 * zscale)
      throw ConfigError("CSV row " + std::to_string(k) + " is not at the configured grid point");

  VerifyReport rep;
  auto add = [&](std::string name, double value, double tol, std::string note = {}) {
    rep.rows.push_back({std::move(name), value, tol, value <= tol, std::move(note)});
  };
  auto usable = [&](int i, int j) {
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        const auto& r = rows[(j + dj) * g.nx + i + di];
        if (r.cell == Cell::BOUNDARY || !std::isfinite(r.f.x1 + r.f.x2 + r.f.x3)) return false;
      }
    return true;
  };

  Sampled<Point> pts{g.nx, g.ny, g.hx(), g.hy(), {}};
  for (const auto& r : rows) pts.v.push_back(r.f);
  double H = 0, conf = 0;
  int interior = 0;
  std::string degenerate;
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      if (!usable(i, j)) continue;
      ++interior;
      const auto st = stencil_at(pts, i, j);
      try {
        H = std::max(H, std::abs(mean_curvature_nil3(st, pts.hx, pts.hy)));
        const auto c = conformality_nil3(st, pts.hx, pts.hy);
        conf = std::max({conf, c[0], c[1]});
      } catch (const DegenerateMetric& e) {
        H = conf = std::numeric_limits<double>::infinity();
        if (degenerate.empty()) degenerate = where(g, j * g.nx + i) + " degenerate metric";
      }
      if (std::isnan(H) || std::isnan(conf)) H = conf = std::numeric_limits<double>::infinity();
    }
  const std::string count = std::to_string(interior) + " interior points";
  add("mean_curvature", H, cfg.verify.mean_curvature, degenerate.empty() ? count : degenerate);
  add("conformality", conf, cfg.verify.conformality, count);

  bool vertical = false;
  for (const auto& r : rows)
    if (r.cell != Cell::BOUNDARY && !(std::abs(r.h) > 1e-10)) vertical = true;
  if (vertical) {
    // h = 0: no spinor representation; frame-based checks do not apply
    rep.flags.push_back("VerticalPoint: support h vanishes, spinor checks skipped");
    return rep;
  }

  const DpwSetup setup = cfg.setup();
  const FrameGrid frames = frame_grid(setup, g, threads);
  double reality = 0;
  Sampled<Spinors> sp{g.nx, g.ny, g.hx(), g.hy(), std::vector<Spinors>(g.size())};
  std::vector<bool> have(g.size(), false);
  for (int k = 0; k < g.size(); ++k) {
    const FramePoint& p = frames.points[k];
    if (p.error) throw NumericError(*p.error, where(g, k) + ": " + p.failure);
    if (p.cell == Cell::BOUNDARY) continue;
    reality = std::max(reality, reality_residual_su11(p.iw.F));
    sp.v[k] = spinors_from_frame(p);
    have[k] = true;
  }
  add("reality", reality, cfg.verify.reality);

  double dirac = 0;
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      bool ok = true;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) ok = ok && have[(j + dj) * g.nx + i + di];
      if (ok) dirac = std::max(dirac, dirac_residual(stencil_at(sp, i, j), sp.hx, sp.hy));
    }
  add("dirac", dirac, cfg.verify.dirac);

  if (cfg.potential_kind == PotentialKind::DegreeOne) {
    const EquivariantReport er = analyze(cfg.degree_one, setup.S, cfg.shape, cfg.class_delta);
    if (has_symmetry(er.cls)) {
      double eq = 0;
      for (double t : {0.1, 0.5}) {
        const Iso rho = er.rho(t);
        for (int j = 0; j < g.ny; j += std::max(1, (g.ny - 1) / 4))
          for (int i = 0; i < g.nx; i += std::max(1, (g.nx - 1) / 4)) {
            const FramePoint& p = frames.at(i, j);
            if (p.cell == Cell::BOUNDARY) continue;
            const FramePoint q = frame_at(setup, p.z + t);
            if (q.cell == Cell::BOUNDARY) continue;
            const Point a = iso_apply(rho, sym_nil(p.frame)), b = sym_nil(q.frame);
            eq = std::max(eq, (a.vec() - b.vec()).norm());
          }
      }
      add("equivariance", eq, cfg.verify.equivariance, std::string("class ") + class_name(er.cls));
    } else {
      rep.flags.push_back(std::string("no symmetry to test: class ") + class_name(er.cls));
    }
  }
  return rep;
}

int cmd_analyze(const std::string& config_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const JobConfig cfg = JobConfig::load(config_path);
    const std::string report = analyze_report(cfg);
    std::filesystem::create_directories(out_dir);
    const std::string path = output_path(out_dir, cfg.report);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << report;
    out << report;
    return int(kExitOk);
  });
}

int cmd_generate(const std::string& config_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const JobConfig cfg = JobConfig::load(config_path);
    const Generated g = generate_surface(cfg, thread_budget());
    std::filesystem::create_directories(out_dir);
    int boundary = 0;
    for (const auto& r : g.rows) boundary += r.cell == Cell::BOUNDARY;
    if (cfg.write_csv) write_csv(output_path(out_dir, cfg.csv), g.rows);
    if (cfg.write_obj) write_obj(output_path(out_dir, cfg.obj), g.rows, cfg.grid.nx, cfg.grid.ny);
    out << "samples: " << g.rows.size() << '\n' << "boundary: " << boundary << '\n';
    if (cfg.write_csv) out << "csv: " << output_path(out_dir, cfg.csv) << '\n';
    if (cfg.write_obj) out << "obj: " << output_path(out_dir, cfg.obj) << '\n';
    return int(kExitOk);
  });
}

int cmd_verify(const std::string& config_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const JobConfig cfg = JobConfig::load(config_path);
    const auto rows = read_csv(output_path(out_dir, cfg.csv));
    const VerifyReport rep = verify_samples(cfg, rows, thread_budget());
    out << rep.table();
    if (!rep.ok()) {
      err << "verify: residual above tolerance\n";
      return int(kExitNumeric);
    }
    return int(kExitOk);
  });
}

}  // namespace nilweier
