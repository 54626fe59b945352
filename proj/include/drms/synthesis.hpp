#pragma once

/// Integration of Weierstrass data into a surface. With phi = A(f) psi the
/// coordinate tangent vector, f solves the overdetermined system
///   f_u = 2 Re(phi),   f_v = 2 Re(unit * phi),
/// which is f = 2 Re of the integral of phi dz with dz = du + unit dv.
/// Classic RK4 marches along the u-row through z0, then along each
/// v-column; path_independence repeats the march in transposed order.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "drms/algebra.hpp"
#include "drms/errors.hpp"
#include "drms/expr.hpp"
#include "drms/spaces.hpp"
#include "drms/weierstrass.hpp"

namespace drms {

enum class Causal { Spacelike, Timelike, Degenerate };

inline std::string to_string(Causal c) {
  switch (c) {
    case Causal::Spacelike: return "spacelike";
    case Causal::Timelike: return "timelike";
    default: return "degenerate";
  }
}

/// Causal character a surface built from data over `k` must have.
constexpr Causal expected_character(Algebra k) {
  return k == Algebra::Complex ? Causal::Spacelike : Causal::Timelike;
}

struct Provenance {
  SpaceKind space = SpaceKind::FirstKind;
  double c = 1.0;
  Algebra algebra = Algebra::Para;
  std::array<std::string, 4> psi;
  Point initial;
  std::string notes;
};

struct SurfaceMesh {
  DomainGrid grid;
  std::vector<Point> nodes;  // index grid.index(i, j)
  Causal causal_character = Causal::Timelike;
  Provenance provenance;
  // Filled by verify::annotate.
  std::vector<std::array<double, 3>> pullback;  // E, F, G
  std::vector<double> tension_norm;

  const Point& at(int i, int j) const { return nodes[grid.index(i, j)]; }
  Point& at(int i, int j) { return nodes[grid.index(i, j)]; }
};

struct Tangent {
  Vec4 fu;
  Vec4 fv;
};

/// Coordinate tangents at parameter (u, v) given the current position p.
inline Tangent tangent_field(const SpaceModel& s, const std::array<Scalar, 4>& psi,
                             const Point& p) {
  const Mat4 A = s.frame_matrix(p);
  const double sg = sigma(psi[0].kind);
  Tangent t;
  for (int i = 0; i < 4; ++i) {
    double re = 0.0, im = 0.0;
    for (int j = 0; j < 4; ++j) {
      re += A(i, j) * psi[j].re;
      im += A(i, j) * psi[j].im;
    }
    t.fu[i] = 2.0 * re;
    t.fv[i] = 2.0 * sg * im;  // Re(unit * phi) = sigma * Im(phi)
  }
  return t;
}

inline Tangent tangent_field(const SpaceModel& s, const WeierstrassData& w, const Point& p,
                             double u, double v) {
  return tangent_field(s, w.eval(u, v), p);
}

enum class MarchOrder { RowThenColumns, ColumnThenRows };

namespace detail {

// One RK4 step along u (dir = 0) or v (dir = 1) from parameter (u, v).
inline Vec4 rk4_step(const SpaceModel& s, const WeierstrassData& w, const Vec4& f, double u,
                     double v, double h, int dir) {
  auto rhs = [&](const Vec4& y, double du, double dv) -> Vec4 {
    const Tangent t = tangent_field(s, w, Point::from(y), u + du, v + dv);
    return dir == 0 ? t.fu : t.fv;
  };
  const double hu = dir == 0 ? h : 0.0;
  const double hv = dir == 1 ? h : 0.0;
  const Vec4 k1 = rhs(f, 0.0, 0.0);
  const Vec4 k2 = rhs(f + 0.5 * h * k1, 0.5 * hu, 0.5 * hv);
  const Vec4 k3 = rhs(f + 0.5 * h * k2, 0.5 * hu, 0.5 * hv);
  const Vec4 k4 = rhs(f + h * k3, hu, hv);
  Vec4 next = f + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) {
    throw StepFailure("non-finite state at u=" + format_double(u) + " v=" + format_double(v));
  }
  return next;
}

// March along index line: dir 0 varies i at fixed j, dir 1 varies j at fixed i.
inline void march_line(const SpaceModel& s, const WeierstrassData& w, const DomainGrid& g,
                       std::vector<Point>& nodes, int fixed, int start, int dir) {
  const int n = dir == 0 ? g.nu() : g.nv();
  auto param = [&](int k) { return dir == 0 ? g.u_at(k) : g.v_at(k); };
  auto idx = [&](int k) { return dir == 0 ? g.index(k, fixed) : g.index(fixed, k); };
  for (int step : {+1, -1}) {
    Vec4 f = nodes[idx(start)].vec();
    for (int k = start; k + step >= 0 && k + step < n; k += step) {
      const double a = param(k);
      const double h = param(k + step) - a;
      const double u = dir == 0 ? a : g.u_at(fixed);
      const double v = dir == 0 ? g.v_at(fixed) : a;
      f = rk4_step(s, w, f, u, v, h, dir);
      nodes[idx(k + step)] = Point::from(f);
    }
  }
}

}  // namespace detail

/// Raw marching without validation. node(z0) is f0 exactly.
inline std::vector<Point> march(const SpaceModel& s, const WeierstrassData& w,
                               const DomainGrid& g, const Point& f0,
                               MarchOrder order = MarchOrder::RowThenColumns) {
  std::vector<Point> nodes(g.size());
  nodes[g.index(g.i0(), g.j0())] = f0;
  if (order == MarchOrder::RowThenColumns) {
    detail::march_line(s, w, g, nodes, g.j0(), g.i0(), 0);
    for (int i = 0; i < g.nu(); ++i) detail::march_line(s, w, g, nodes, i, g.j0(), 1);
  } else {
    detail::march_line(s, w, g, nodes, g.i0(), g.j0(), 1);
    for (int j = 0; j < g.nv(); ++j) detail::march_line(s, w, g, nodes, j, g.i0(), 0);
  }
  return nodes;
}

struct SynthesisOptions {
  bool force = false;
  ValidationTolerances tolerances;
  std::string notes;
};

/// Validates the data (unless forced) and integrates it from f0 at z0.
inline SurfaceMesh synthesize(const SpaceModel& s, const PreparedData& w, const DomainGrid& g,
                              const Point& f0, const SynthesisOptions& opt = {}) {
  if (!opt.force) {
    const ValidationReport rep = validate(s, w, g, opt.tolerances);
    if (!rep.pass) {
      std::string why = "data failed validation";
      for (const auto& r : rep.reasons) why += "; " + r;
      throw ValidationRefused(why);
    }
  }
  SurfaceMesh m{g, march(s, w.data, g, f0), expected_character(w.kind()),
                Provenance{s.kind(), s.c(), w.kind(), w.data.text, f0, opt.notes},
                {},
                {}};
  return m;
}

/// Max coordinate discrepancy between the two marching orders.
inline double path_independence(const SpaceModel& s, const WeierstrassData& w,
                                const DomainGrid& g, const Point& f0) {
  const auto a = march(s, w, g, f0, MarchOrder::RowThenColumns);
  const auto b = march(s, w, g, f0, MarchOrder::ColumnThenRows);
  double worst = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    worst = std::max(worst, (a[n].vec() - b[n].vec()).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace drms
