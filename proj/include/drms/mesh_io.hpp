#pragma once

/// Mesh files. The mesh CSV starts with '#' provenance lines, then the
/// header "u,v,x,y,z,t" and one row per node in u-major order. Numbers use
/// the shortest round-trip representation, so output is deterministic.

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "drms/config.hpp"
#include "drms/errors.hpp"
#include "drms/expr.hpp"
#include "drms/spaces.hpp"
#include "drms/synthesis.hpp"

namespace drms {

inline void write_mesh_csv(std::ostream& os, const SurfaceMesh& m) {
  const DomainGrid& g = m.grid;
  const Provenance& p = m.provenance;
  os << "# drms mesh\n";
  os << "# space=" << to_string(p.space) << " c=" << format_double(p.c)
     << " algebra=" << to_string(p.algebra) << " nu=" << g.nu() << " nv=" << g.nv()
     << " u_min=" << format_double(g.u_min()) << " u_max=" << format_double(g.u_max())
     << " v_min=" << format_double(g.v_min()) << " v_max=" << format_double(g.v_max())
     << " u0=" << format_double(g.u0()) << " v0=" << format_double(g.v0()) << "\n";
  for (int k = 0; k < 4; ++k) os << "# psi" << k + 1 << "=" << p.psi[k] << "\n";
  os << "# initial=" << format_double(p.initial.x) << "," << format_double(p.initial.y) << ","
     << format_double(p.initial.z) << "," << format_double(p.initial.t) << "\n";
  if (!p.notes.empty()) os << "# notes=" << p.notes << "\n";
  os << "u,v,x,y,z,t\n";
  for (int i = 0; i < g.nu(); ++i) {
    for (int j = 0; j < g.nv(); ++j) {
      const Point& q = m.at(i, j);
      os << format_double(g.u_at(i)) << ',' << format_double(g.v_at(j)) << ','
         << format_double(q.x) << ',' << format_double(q.y) << ',' << format_double(q.z) << ','
         << format_double(q.t) << "\n";
    }
  }
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::string trim_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace detail

/// Reads a mesh written by write_mesh_csv. Throws InputError on any
/// structural problem (missing header, wrong row count, grid mismatch).
inline SurfaceMesh read_mesh_csv(std::istream& is) {
  std::map<std::string, std::string> meta;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    line = detail::trim_cr(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.substr(1);
      if (body.rfind(" psi", 0) == 0 || body.rfind(" initial=", 0) == 0 ||
          body.rfind(" notes=", 0) == 0) {
        const auto eq = body.find('=');
        meta[body.substr(1, eq - 1)] = body.substr(eq + 1);
      } else {
        std::istringstream ws(body);
        std::string tok;
        while (ws >> tok) {
          const auto eq = tok.find('=');
          if (eq != std::string::npos) meta[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
      }
      continue;
    }
    if (line != "u,v,x,y,z,t") throw InputError("mesh CSV: expected header 'u,v,x,y,z,t'");
    have_header = true;
    break;
  }
  if (!have_header) throw InputError("mesh CSV: missing column header");
  for (const char* key : {"space", "c", "algebra", "nu", "nv", "u_min", "u_max", "v_min", "v_max",
                          "u0", "v0"}) {
    if (!meta.count(key)) throw InputError(std::string("mesh CSV: missing metadata '") + key + "'");
  }
  const DomainGrid g(parse_real("u_min", meta["u_min"]), parse_real("u_max", meta["u_max"]),
                     parse_real("v_min", meta["v_min"]), parse_real("v_max", meta["v_max"]),
                     parse_count("nu", meta["nu"]), parse_count("nv", meta["nv"]),
                     parse_real("u0", meta["u0"]), parse_real("v0", meta["v0"]));
  Provenance prov;
  prov.space = parse_space(meta["space"]);
  prov.c = parse_real("c", meta["c"]);
  prov.algebra = parse_algebra(meta["algebra"]);
  for (int k = 0; k < 4; ++k) {
    prov.psi[k] = meta.count("psi" + std::to_string(k + 1)) ? meta["psi" + std::to_string(k + 1)]
                                                            : std::string();
  }
  if (meta.count("initial")) {
    const auto parts = detail::split(meta["initial"], ',');
    if (parts.size() != 4) throw InputError("mesh CSV: malformed initial point");
    prov.initial = {parse_real("initial", parts[0]), parse_real("initial", parts[1]),
                    parse_real("initial", parts[2]), parse_real("initial", parts[3])};
  }
  if (meta.count("notes")) prov.notes = meta["notes"];

  std::vector<Point> nodes(g.size());
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    line = detail::trim_cr(line);
    if (line.empty()) continue;
    if (rows >= g.size()) throw InputError("mesh CSV: more rows than nu*nv");
    const auto f = detail::split(line, ',');
    if (f.size() != 6) {
      throw InputError("mesh CSV: row " + std::to_string(rows + 1) + " has " +
                       std::to_string(f.size()) + " fields, expected 6");
    }
    const int i = static_cast<int>(rows / g.nv());
    const int j = static_cast<int>(rows % g.nv());
    const double u = parse_real("u", f[0]), v = parse_real("v", f[1]);
    const double scale = std::max({1.0, std::abs(g.u_max()), std::abs(g.v_max())});
    if (std::abs(u - g.u_at(i)) > 1e-9 * scale || std::abs(v - g.v_at(j)) > 1e-9 * scale) {
      throw InputError("mesh CSV: row " + std::to_string(rows + 1) +
                       " does not match the declared grid");
    }
    nodes[rows] = {parse_real("x", f[2]), parse_real("y", f[3]), parse_real("z", f[4]),
                   parse_real("t", f[5])};
    ++rows;
  }
  if (rows != g.size()) {
    throw InputError("mesh CSV: truncated, " + std::to_string(rows) + " of " +
                     std::to_string(g.size()) + " rows");
  }
  return SurfaceMesh{g, std::move(nodes), expected_character(prov.algebra), prov, {}, {}};
}

/// Axis indices (0..3 for x, y, z, t) chosen for OBJ vertex positions.
inline std::array<int, 3> parse_projection(const std::string& text) {
  const auto parts = detail::split(text, ',');
  if (parts.size() != 3) throw InputError("projection needs three axes, e.g. x,z,t");
  std::array<int, 3> axes{};
  for (int k = 0; k < 3; ++k) {
    const std::string& a = parts[k];
    if (a == "x") axes[k] = 0;
    else if (a == "y") axes[k] = 1;
    else if (a == "z") axes[k] = 2;
    else if (a == "t") axes[k] = 3;
    else throw InputError("unknown projection axis '" + a + "'");
    for (int q = 0; q < k; ++q) {
      if (axes[q] == axes[k]) throw InputError("duplicate projection axis '" + a + "'");
    }
  }
  return axes;
}

/// Wavefront OBJ: three projected coordinates per vertex, the remaining
/// coordinate carried as the optional fourth vertex component; quad faces.
inline void write_obj(std::ostream& os, const SurfaceMesh& m, const std::array<int, 3>& axes) {
  int rest = 0 + 1 + 2 + 3 - axes[0] - axes[1] - axes[2];
  static const char* names = "xyzt";
  os << "# drms mesh export: position " << names[axes[0]] << "," << names[axes[1]] << ","
     << names[axes[2]] << "; vertex weight " << names[rest] << "\n";
  const DomainGrid& g = m.grid;
  for (int i = 0; i < g.nu(); ++i) {
    for (int j = 0; j < g.nv(); ++j) {
      const Vec4 p = m.at(i, j).vec();
      os << "v " << format_double(p[axes[0]]) << ' ' << format_double(p[axes[1]]) << ' '
         << format_double(p[axes[2]]) << ' ' << format_double(p[rest]) << "\n";
    }
  }
  for (int i = 0; i + 1 < g.nu(); ++i) {
    for (int j = 0; j + 1 < g.nv(); ++j) {
      os << "f " << g.index(i, j) + 1 << ' ' << g.index(i + 1, j) + 1 << ' '
         << g.index(i + 1, j + 1) + 1 << ' ' << g.index(i, j + 1) + 1 << "\n";
    }
  }
}

/// Max coordinate error of the mesh against closed-form expressions in u, v.
inline double closed_form_error(const SurfaceMesh& m, const std::array<std::string, 4>& ref,
                                Algebra kind) {
  std::array<Expr, 4> e{parse(ref[0], kind), parse(ref[1], kind), parse(ref[2], kind),
                        parse(ref[3], kind)};
  const DomainGrid& g = m.grid;
  double worst = 0.0;
  for (int i = 0; i < g.nu(); ++i) {
    for (int j = 0; j < g.nv(); ++j) {
      const Vec4 p = m.at(i, j).vec();
      for (int k = 0; k < 4; ++k) {
        const double exact = eval(e[k], g.u_at(i), g.v_at(j)).re;
        const double err = std::abs(p[k] - exact);
        if (!(err <= worst)) worst = err;
      }
    }
  }
  return worst;
}

}  // namespace drms
