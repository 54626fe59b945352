#pragma once

/// Command implementations behind the drms executable. Each returns the
/// process exit code: 0 pass, 1 mathematical failure, 2 input error,
/// 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "drms/config.hpp"
#include "drms/errors.hpp"
#include "drms/mesh_io.hpp"
#include "drms/synthesis.hpp"
#include "drms/verify.hpp"
#include "drms/weierstrass.hpp"

namespace drms::cli {

enum Exit : int { kPass = 0, kMathFailure = 1, kInputError = 2, kNumericFailure = 3 };

struct Options {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<std::string> grid;  // NUxNV override
  std::string out;
  std::string mesh;
  std::string format = "csv";
  std::string projection = "x,z,t";
  bool force = false;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write '" + path + "'");
  os << text;
}

/// Resolves --config / --preset and applies --grid. Both absent is allowed
/// only when `optional` is set.
inline std::optional<RunConfig> resolve_config(const Options& opt, bool optional = false) {
  if (opt.config_path && opt.preset) throw InputError("give either --config or --preset, not both");
  std::optional<RunConfig> cfg;
  if (opt.config_path) cfg = load_config_string(read_file(*opt.config_path), *opt.config_path);
  if (opt.preset) cfg = preset(*opt.preset);
  if (!cfg) {
    if (optional) return std::nullopt;
    throw InputError("no configuration: pass --config PATH or --preset NAME");
  }
  if (opt.grid) {
    const auto [nu, nv] = parse_grid_override(*opt.grid);
    cfg->domain.nu = nu;
    cfg->domain.nv = nv;
  }
  return cfg;
}

inline int cmd_examples(std::ostream& out) {
  for (const auto& p : presets()) {
    out << p.name << "  space=" << to_string(p.space) << " algebra=" << to_string(p.algebra)
        << " c=" << format_double(p.c) << "\n";
    for (int k = 0; k < 4; ++k) out << "    psi" << k + 1 << " = " << p.psi[k] << "\n";
    if (p.reference) {
      static const char* axis[] = {"x", "y", "z", "t"};
      for (int k = 0; k < 4; ++k) {
        out << "    " << axis[k] << "(u,v) = " << (*p.reference)[k] << "\n";
      }
    }
    out << "    " << p.notes << "\n";
  }
  return kPass;
}

inline int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = *resolve_config(opt);
    const PreparedData data(cfg.data());
    const ValidationReport rep = validate(cfg.model(), data, cfg.domain.grid(), cfg.validation);
    const std::string summary = rep.summary();
    out << summary;
    std::ostringstream csv;
    rep.write_csv(csv);
    const std::string csv_path = !opt.out.empty() ? opt.out : cfg.output.csv;
    if (!csv_path.empty()) write_file(csv_path, csv.str());
    if (!cfg.output.report.empty()) write_file(cfg.output.report, summary);
    return rep.pass ? kPass : kMathFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline int cmd_synthesize(const Options& opt, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::optional<PreparedData> data;
  try {
    cfg = *resolve_config(opt);
    data.emplace(cfg.data());
    (void)cfg.domain.grid();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const SpaceModel space = cfg.model();
  const DomainGrid grid = cfg.domain.grid();
  const ValidationReport rep = validate(space, *data, grid, cfg.validation);
  if (!rep.pass && !opt.force) {
    out << rep.summary();
    err << "error: data failed validation; rerun with --force to integrate anyway\n";
    return kMathFailure;
  }
  if (!rep.pass) {
    out << "WARNING: data failed validation; integrating because of --force.\n"
        << "WARNING: the result is generally not a well-defined minimal immersion.\n";
  }
  try {
    SynthesisOptions so;
    so.force = true;  // already validated above
    so.notes = cfg.notes;
    const SurfaceMesh mesh = synthesize(space, *data, grid, cfg.initial, so);
    const double pid = path_independence(space, data->data, grid, cfg.initial);
    std::ostringstream csv;
    write_mesh_csv(csv, mesh);
    const std::string path =
        !opt.out.empty() ? opt.out : (!cfg.output.mesh.empty() ? cfg.output.mesh : "mesh.csv");
    write_file(path, csv.str());
    out << "mesh: " << path << " (" << grid.nu() << " x " << grid.nv() << ", "
        << to_string(mesh.causal_character) << ")\n";
    out << "path-independence discrepancy: " << format_double(pid) << "\n";
    if (cfg.reference) {
      out << "closed-form error (stored reference): "
          << format_double(closed_form_error(mesh, *cfg.reference, cfg.algebra)) << "\n";
    }
    if (cfg.derived_reference) {
      out << "closed-form error (derived reference): "
          << format_double(closed_form_error(mesh, *cfg.derived_reference, cfg.algebra)) << "\n";
    }
    if (!cfg.notes.empty()) out << "notes: " << cfg.notes << "\n";
    return rep.pass ? kPass : kMathFailure;
  } catch (const StepFailure& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const EvalError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline SurfaceMesh load_mesh(const std::string& path) {
  if (path.empty()) throw InputError("no mesh file given");
  std::istringstream in(read_file(path));
  return read_mesh_csv(in);
}

inline int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  try {
    SurfaceMesh mesh = load_mesh(opt.mesh);
    std::optional<RunConfig> cfg = resolve_config(opt, /*optional=*/true);
    const Provenance& p = mesh.provenance;
    VerifyTolerances tol;
    std::optional<WeierstrassData> data;
    if (cfg) {
      if (cfg->space != p.space) {
        throw InputError("mesh was built in " + to_string(p.space) + " but the configuration says " +
                         to_string(cfg->space));
      }
      if (cfg->c != p.c) {
        throw InputError("mesh was built with c=" + format_double(p.c) +
                         " but the configuration says c=" + format_double(cfg->c));
      }
      if (cfg->algebra != p.algebra) {
        throw InputError("mesh algebra " + to_string(p.algebra) + " differs from configuration " +
                         to_string(cfg->algebra));
      }
      tol = cfg->verification;
      data = cfg->data();
    } else if (!p.psi[0].empty()) {
      data = WeierstrassData::parse(p.psi, p.algebra);
    }
    const SpaceModel space(p.space, p.c);
    const MeshReport rep = verify_mesh(space, mesh, data ? &*data : nullptr, tol);
    const std::string summary = rep.summary();
    out << summary;
    std::ostringstream csv;
    rep.write_csv(csv);
    const std::string csv_path = !opt.out.empty() ? opt.out : (cfg ? cfg->output.verify_csv : "");
    if (!csv_path.empty()) write_file(csv_path, csv.str());
    if (cfg && !cfg->output.verify_report.empty()) write_file(cfg->output.verify_report, summary);
    return rep.pass ? kPass : kMathFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline int cmd_export(const Options& opt, std::ostream& out, std::ostream& err) {
  try {
    const SurfaceMesh mesh = load_mesh(opt.mesh);
    std::ostringstream os;
    if (opt.format == "csv") {
      write_mesh_csv(os, mesh);
    } else if (opt.format == "obj") {
      write_obj(os, mesh, parse_projection(opt.projection));
    } else {
      throw InputError("unknown format '" + opt.format + "' (expected csv or obj)");
    }
    const std::string path = !opt.out.empty() ? opt.out : "mesh." + opt.format;
    write_file(path, os.str());
    out << "wrote " << path << "\n";
    return kPass;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace drms::cli
