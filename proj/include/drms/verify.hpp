#pragma once

/// A-posteriori checks on a synthesized mesh that use only the mesh
/// coordinates, the metric and the finite-difference Christoffel symbols:
/// first fundamental form, causal character and the tension field.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "drms/expr.hpp"
#include "drms/spaces.hpp"
#include "drms/synthesis.hpp"
#include "drms/weierstrass.hpp"

namespace drms {

/// First fundamental form at a node.
struct PullbackSample {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
};

inline Causal causal_character(const PullbackSample& p) {
  const double det = p.E * p.G - p.F * p.F;
  if (std::abs(det) <= 1e-10 * (1.0 + p.E * p.E + p.G * p.G)) return Causal::Degenerate;
  return det > 0.0 ? Causal::Spacelike : Causal::Timelike;
}

namespace detail {

// d/du (dir 0) or d/dv (dir 1) of the mesh at (i, j); second-order
// one-sided stencils on the boundary.
inline Vec4 mesh_derivative(const SurfaceMesh& m, int i, int j, int dir) {
  const DomainGrid& g = m.grid;
  const int n = dir == 0 ? g.nu() : g.nv();
  const int k = dir == 0 ? i : j;
  const double h = dir == 0 ? g.du() : g.dv();
  auto f = [&](int q) { return (dir == 0 ? m.at(q, j) : m.at(i, q)).vec(); };
  if (k > 0 && k < n - 1) return (f(k + 1) - f(k - 1)) / (2.0 * h);
  if (n == 2) return (f(1) - f(0)) / h;
  if (k == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
  return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
}

inline Vec4 mesh_second_derivative(const SurfaceMesh& m, int i, int j, int dir) {
  const double h = dir == 0 ? m.grid.du() : m.grid.dv();
  const Vec4 lo = (dir == 0 ? m.at(i - 1, j) : m.at(i, j - 1)).vec();
  const Vec4 hi = (dir == 0 ? m.at(i + 1, j) : m.at(i, j + 1)).vec();
  return (hi - 2.0 * m.at(i, j).vec() + lo) / (h * h);
}

}  // namespace detail

/// E, F, G at every node from finite-difference tangents and metric_at.
inline std::vector<PullbackSample> pullback(const SpaceModel& s, const SurfaceMesh& m) {
  const DomainGrid& g = m.grid;
  std::vector<PullbackSample> out(g.size());
  for (int i = 0; i < g.nu(); ++i) {
    for (int j = 0; j < g.nv(); ++j) {
      const Vec4 fu = detail::mesh_derivative(m, i, j, 0);
      const Vec4 fv = detail::mesh_derivative(m, i, j, 1);
      const Mat4 G = s.metric_at(m.at(i, j));
      out[g.index(i, j)] = {fu.dot(G * fu), fu.dot(G * fv), fv.dot(G * fv)};
    }
  }
  return out;
}

/// Coordinate tension field at interior nodes (boundary entries are NaN):
///   spacelike  T = f_uu + f_vv + Gamma(f_u, f_u) + Gamma(f_v, f_v)
///   timelike   T = f_uu - f_vv + Gamma(f_u, f_u) - Gamma(f_v, f_v)
inline std::vector<Vec4> tension_residual(const SpaceModel& s, const SurfaceMesh& m) {
  const DomainGrid& g = m.grid;
  const double sg = m.causal_character == Causal::Timelike ? -1.0 : 1.0;
  std::vector<Vec4> out(g.size(), Vec4::Constant(std::numeric_limits<double>::quiet_NaN()));
  for (int i = 1; i < g.nu() - 1; ++i) {
    for (int j = 1; j < g.nv() - 1; ++j) {
      const Vec4 fu = detail::mesh_derivative(m, i, j, 0);
      const Vec4 fv = detail::mesh_derivative(m, i, j, 1);
      const Christoffel Gam = s.christoffel_at(m.at(i, j));
      Vec4 T = detail::mesh_second_derivative(m, i, j, 0) +
               sg * detail::mesh_second_derivative(m, i, j, 1);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          for (int c = 0; c < 4; ++c) {
            T[a] += Gam[a][b][c] * (fu[b] * fu[c] + sg * fv[b] * fv[c]);
          }
        }
      }
      out[g.index(i, j)] = T;
    }
  }
  return out;
}

struct VerifyTolerances {
  double conformality = 1e-3;
  double tension = 1e-3;
  double density = 1e-3;
};

struct MeshNodeReport {
  double u = 0.0, v = 0.0;
  PullbackSample ff;
  Causal character = Causal::Degenerate;
  double tension = std::numeric_limits<double>::quiet_NaN();
  double density_defect = std::numeric_limits<double>::quiet_NaN();  // |2 cond_i - E|
};

/// Aggregates over interior nodes; boundary nodes are reported but not
/// counted in the sup-norms.
struct MeshReport {
  std::vector<MeshNodeReport> nodes;
  Causal expected = Causal::Timelike;
  Causal observed = Causal::Degenerate;
  bool character_uniform = false;
  double sup_conformality = 0.0;  // max(|F|, |E -/+ G|)
  double sup_tension = 0.0;
  std::size_t worst_tension_node = 0;
  std::optional<double> sup_density;
  VerifyTolerances tolerances;
  bool pass = false;
  std::vector<std::string> reasons;

  std::string summary() const {
    std::ostringstream os;
    os << "verification: " << (pass ? "PASS" : "FAIL") << "\n";
    os << "  causal character: " << to_string(observed)
       << (character_uniform ? "" : " (not uniform)") << ", expected " << to_string(expected)
       << "\n";
    os << "  conformality defect sup-norm: " << format_double(sup_conformality)
       << " (tolerance " << format_double(tolerances.conformality) << ")\n";
    os << "  tension sup-norm: " << format_double(sup_tension) << " (tolerance "
       << format_double(tolerances.tension) << ")";
    if (!nodes.empty()) {
      os << " at u=" << format_double(nodes[worst_tension_node].u)
         << " v=" << format_double(nodes[worst_tension_node].v);
    }
    os << "\n";
    if (sup_density) {
      os << "  conformal density |2 cond_i - E| sup-norm (derived identity): "
         << format_double(*sup_density) << " (tolerance " << format_double(tolerances.density)
         << ")\n";
    }
    for (const auto& r : reasons) os << "  reason: " << r << "\n";
    return os.str();
  }

  /// Columns: u, v, E, F, G, char, |T|.
  void write_csv(std::ostream& os) const {
    os << "u,v,E,F,G,char,|T|\n";
    for (const auto& n : nodes) {
      os << format_double(n.u) << ',' << format_double(n.v) << ',' << format_double(n.ff.E)
         << ',' << format_double(n.ff.F) << ',' << format_double(n.ff.G) << ','
         << to_string(n.character) << ',' << format_double(n.tension) << "\n";
    }
  }
};

/// Runs every mesh check. With data supplied, also compares the conformal
/// density 2 * condition_i against E node by node.
inline MeshReport verify_mesh(const SpaceModel& s, const SurfaceMesh& m,
                              const WeierstrassData* data = nullptr,
                              const VerifyTolerances& tol = {}) {
  const DomainGrid& g = m.grid;
  MeshReport rep;
  rep.tolerances = tol;
  rep.expected = m.causal_character;
  const auto ff = pullback(s, m);
  const auto T = tension_residual(s, m);
  const double sg = m.causal_character == Causal::Timelike ? 1.0 : -1.0;
  bool first = true;
  rep.character_uniform = true;
  double density = 0.0;
  std::size_t density_failures = 0;
  rep.nodes.reserve(g.size());
  for (int i = 0; i < g.nu(); ++i) {
    for (int j = 0; j < g.nv(); ++j) {
      const std::size_t n = g.index(i, j);
      MeshNodeReport r;
      r.u = g.u_at(i);
      r.v = g.v_at(j);
      r.ff = ff[n];
      r.character = causal_character(ff[n]);
      if (g.interior(i, j)) {
        r.tension = T[n].norm();
        if (std::isnan(r.tension) || r.tension > rep.sup_tension) {
          rep.sup_tension = r.tension;
          rep.worst_tension_node = n;
        }
        const double defect = std::max(std::abs(r.ff.F), std::abs(r.ff.E + sg * r.ff.G));
        rep.sup_conformality = std::max(rep.sup_conformality, defect);
        if (first) {
          rep.observed = r.character;
          first = false;
        } else if (r.character != rep.observed) {
          rep.character_uniform = false;
        }
        if (data) {
          try {
            r.density_defect = std::abs(2.0 * condition_i(s, *data, r.u, r.v) - r.ff.E);
            density = std::max(density, r.density_defect);
          } catch (const Error&) {
            ++density_failures;
          }
        }
      }
      rep.nodes.push_back(r);
    }
  }
  if (data) rep.sup_density = density;

  if (!rep.character_uniform) rep.reasons.push_back("causal character changes across the mesh");
  if (rep.observed != rep.expected) {
    rep.reasons.push_back("surface is " + to_string(rep.observed) + ", expected " +
                          to_string(rep.expected));
  }
  if (!(rep.sup_conformality <= tol.conformality)) {
    rep.reasons.push_back("not conformal: defect " + format_double(rep.sup_conformality));
  }
  if (!(rep.sup_tension <= tol.tension)) {
    const auto& w = rep.nodes[rep.worst_tension_node];
    rep.reasons.push_back("tension spike " + format_double(rep.sup_tension) +
                          " at u=" + format_double(w.u) + " v=" + format_double(w.v));
  }
  if (density_failures > 0) {
    rep.reasons.push_back("data not evaluable at " + std::to_string(density_failures) +
                          " node(s)");
  }
  if (rep.sup_density && !(*rep.sup_density <= tol.density)) {
    rep.reasons.push_back("conformal density mismatch " + format_double(*rep.sup_density));
  }
  rep.pass = rep.reasons.empty();
  return rep;
}

/// Stores E, F, G and |T| on the mesh itself.
inline void annotate(const SpaceModel& s, SurfaceMesh& m) {
  const auto ff = pullback(s, m);
  const auto T = tension_residual(s, m);
  m.pullback.resize(ff.size());
  m.tension_norm.resize(T.size());
  for (std::size_t n = 0; n < ff.size(); ++n) {
    m.pullback[n] = {ff[n].E, ff[n].F, ff[n].G};
    m.tension_norm[n] = T[n].norm();
  }
}

}  // namespace drms
