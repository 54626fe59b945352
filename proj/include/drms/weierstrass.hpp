#pragma once

/// Validation of Weierstrass data: the immersion condition (i), the
/// isotropy condition (ii) and the harmonicity system, in both the
/// L-table form and the written-out form for each model.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "drms/algebra.hpp"
#include "drms/errors.hpp"
#include "drms/expr.hpp"
#include "drms/spaces.hpp"

namespace drms {

/// Rectangular parameter domain sampled on an nu x nv lattice. The base
/// point z0 is snapped to the nearest node.
class DomainGrid {
 public:
  DomainGrid(double u_min, double u_max, double v_min, double v_max, int nu, int nv, double u0,
             double v0)
      : u_min_(u_min), u_max_(u_max), v_min_(v_min), v_max_(v_max), nu_(nu), nv_(nv) {
    if (!(u_max > u_min) || !(v_max > v_min)) throw InputError("degenerate domain rectangle");
    if (nu < 2 || nv < 2) throw InputError("grid needs at least 2 nodes per direction");
    if (u0 < u_min || u0 > u_max || v0 < v_min || v0 > v_max) {
      throw InputError("base point lies outside the domain");
    }
    i0_ = static_cast<int>(std::lround((u0 - u_min) / du()));
    j0_ = static_cast<int>(std::lround((v0 - v_min) / dv()));
    i0_ = std::clamp(i0_, 0, nu - 1);
    j0_ = std::clamp(j0_, 0, nv - 1);
  }

  double u_min() const { return u_min_; }
  double u_max() const { return u_max_; }
  double v_min() const { return v_min_; }
  double v_max() const { return v_max_; }
  int nu() const { return nu_; }
  int nv() const { return nv_; }
  double du() const { return (u_max_ - u_min_) / (nu_ - 1); }
  double dv() const { return (v_max_ - v_min_) / (nv_ - 1); }
  double u_at(int i) const { return i == nu_ - 1 ? u_max_ : u_min_ + i * du(); }
  double v_at(int j) const { return j == nv_ - 1 ? v_max_ : v_min_ + j * dv(); }
  int i0() const { return i0_; }
  int j0() const { return j0_; }
  double u0() const { return u_at(i0_); }
  double v0() const { return v_at(j0_); }
  std::size_t size() const { return static_cast<std::size_t>(nu_) * nv_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * nv_ + j; }
  bool interior(int i, int j) const { return i > 0 && j > 0 && i < nu_ - 1 && j < nv_ - 1; }

  /// Same rectangle and base point at a different resolution.
  DomainGrid resized(int nu, int nv) const {
    return DomainGrid(u_min_, u_max_, v_min_, v_max_, nu, nv, u0(), v0());
  }

 private:
  double u_min_, u_max_, v_min_, v_max_;
  int nu_, nv_;
  int i0_ = 0, j0_ = 0;
};

/// Weierstrass data with its d/dzbar trees built once.
struct PreparedData {
  WeierstrassData data;
  std::array<Expr, 4> dbar;

  explicit PreparedData(WeierstrassData w)
      : data(std::move(w)),
        dbar{wirtinger_bar(data.psi[0]), wirtinger_bar(data.psi[1]),
             wirtinger_bar(data.psi[2]), wirtinger_bar(data.psi[3])} {}

  Algebra kind() const { return data.kind; }
};

using Residual = std::array<Scalar, 4>;

inline double condition_i(const SpaceModel& s, const std::array<Scalar, 4>& psi) {
  const auto eps = s.signature();
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) sum += eps[k] * modulus_sq(psi[k]);
  return sum;
}

/// Signed conformal density sum_k eps_k |psi_k|^2; half of g(f_u, f_u) on
/// the synthesized surface.
inline double condition_i(const SpaceModel& s, const WeierstrassData& w, double u, double v) {
  return condition_i(s, w.eval(u, v));
}

inline Scalar condition_ii(const SpaceModel& s, const std::array<Scalar, 4>& psi) {
  const auto eps = s.signature();
  Scalar sum = Scalar::zero(psi[0].kind);
  for (int k = 0; k < 4; ++k) sum = sum + eps[k] * (psi[k] * psi[k]);
  return sum;
}

/// sum_k eps_k psi_k^2; vanishes for conformal data.
inline Scalar condition_ii(const SpaceModel& s, const WeierstrassData& w, double u, double v) {
  return condition_ii(s, w.eval(u, v));
}

/// r_k = dbar_k + 1/2 sum_ij L^k_ij conj(psi_i) psi_j.
inline Residual harmonicity_generic(const LTable& L, const std::array<Scalar, 4>& psi,
                                    const std::array<Scalar, 4>& dbar) {
  Residual r = dbar;
  for (const auto& e : L.entries()) {
    r[e.k - 1] = r[e.k - 1] + (0.5 * e.value) * (conj(psi[e.i - 1]) * psi[e.j - 1]);
  }
  return r;
}

inline Residual harmonicity_residual_generic(const LTable& L, const PreparedData& w, double u,
                                             double v) {
  const auto psi = w.data.eval(u, v);
  std::array<Scalar, 4> dbar;
  for (int k = 0; k < 4; ++k) dbar[k] = eval(w.dbar[k], u, v);
  return harmonicity_generic(L, psi, dbar);
}

/// The written-out four-equation systems for the two models, including
/// the real-part terms.
inline Residual harmonicity_explicit(const SpaceModel& s, const std::array<Scalar, 4>& p,
                                     const std::array<Scalar, 4>& d) {
  const Algebra k = p[0].kind;
  const double c = s.c();
  auto cj = [](const Scalar& x) { return conj(x); };
  auto re = [k](const Scalar& x) { return Scalar::real(x.re, k); };
  const double sgn = s.kind() == SpaceKind::FirstKind ? 1.0 : -1.0;
  Residual r;
  r[0] = d[0] - 0.5 * (cj(p[0]) * p[3]) + (sgn * c) * re(cj(p[1]) * p[2]);
  r[1] = d[1] - 0.5 * (cj(p[1]) * p[3]) - (sgn * c) * re(cj(p[0]) * p[2]);
  r[2] = d[2] - cj(p[2]) * p[3] + (0.5 * c) * (cj(p[0]) * p[1] - cj(p[1]) * p[0]);
  r[3] = d[3] - (sgn * 0.5) * (cj(p[0]) * p[0] + cj(p[1]) * p[1]) - cj(p[2]) * p[2];
  return r;
}

inline Residual harmonicity_residual_explicit(const SpaceModel& s, const PreparedData& w,
                                              double u, double v) {
  const auto psi = w.data.eval(u, v);
  std::array<Scalar, 4> dbar;
  for (int k = 0; k < 4; ++k) dbar[k] = eval(w.dbar[k], u, v);
  return harmonicity_explicit(s, psi, dbar);
}

/// d/dzbar of the data by central differences with step h.
inline std::array<Scalar, 4> dbar_finite_difference(const WeierstrassData& w, double u, double v,
                                                    double h) {
  const auto pu = w.eval(u + h, v), mu = w.eval(u - h, v);
  const auto pv = w.eval(u, v + h), mv = w.eval(u, v - h);
  const Scalar unit_inv = invert(Scalar::unit(w.kind));
  std::array<Scalar, 4> d;
  for (int k = 0; k < 4; ++k) {
    const Scalar fu = (1.0 / (2.0 * h)) * (pu[k] - mu[k]);
    const Scalar fv = (1.0 / (2.0 * h)) * (pv[k] - mv[k]);
    d[k] = 0.5 * (fu - unit_inv * fv);
  }
  return d;
}

inline Residual harmonicity_residual_fd(const LTable& L, const WeierstrassData& w, double u,
                                        double v, double h = 1e-5) {
  return harmonicity_generic(L, w.eval(u, v), dbar_finite_difference(w, u, v, h));
}

enum class DerivativeMode { Symbolic, FiniteDifference };

struct ValidationTolerances {
  double residual = 1e-10;
  double residual_fd = 1e-6;
  double condition_ii = 1e-10;
  double degeneracy_floor = 1e-8;
};

struct NodeValidation {
  double u = 0.0;
  double v = 0.0;
  bool valid = false;
  std::string error;
  double cond_i = std::numeric_limits<double>::quiet_NaN();
  Scalar cond_ii{};
  Residual residual{};
};

struct ValidationReport {
  std::vector<NodeValidation> nodes;
  double sup_residual = 0.0;
  double sup_condition_ii = 0.0;
  double min_abs_condition_i = std::numeric_limits<double>::infinity();
  std::size_t worst_node = 0;
  std::size_t invalid_nodes = 0;
  DerivativeMode mode = DerivativeMode::Symbolic;
  ValidationTolerances tolerances;
  bool pass = false;
  std::vector<std::string> reasons;

  std::string summary() const {
    std::ostringstream os;
    os << "validation: " << (pass ? "PASS" : "FAIL") << "\n";
    os << "  nodes: " << nodes.size() << " (" << invalid_nodes << " not evaluable)\n";
    os << "  derivative path: "
       << (mode == DerivativeMode::Symbolic ? "symbolic" : "finite-difference") << "\n";
    const double tol = mode == DerivativeMode::Symbolic ? tolerances.residual
                                                        : tolerances.residual_fd;
    os << "  harmonicity sup-norm: " << format_double(sup_residual)
       << " (tolerance " << format_double(tol) << ")\n";
    if (!nodes.empty()) {
      os << "  worst node: u=" << format_double(nodes[worst_node].u)
         << " v=" << format_double(nodes[worst_node].v) << "\n";
    }
    os << "  condition (ii) sup-norm: " << format_double(sup_condition_ii) << " (tolerance "
       << format_double(tolerances.condition_ii) << ")\n";
    os << "  condition (i) min |value|: " << format_double(min_abs_condition_i) << " (floor "
       << format_double(tolerances.degeneracy_floor) << ")\n";
    for (const auto& r : reasons) os << "  reason: " << r << "\n";
    return os.str();
  }

  /// Columns: u, v, cond_i, cond_ii_re, cond_ii_im, r1_re, r1_im, ..., r4_im.
  void write_csv(std::ostream& os) const {
    os << "u,v,cond_i,cond_ii_re,cond_ii_im";
    for (int k = 1; k <= 4; ++k) os << ",r" << k << "_re,r" << k << "_im";
    os << "\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& n : nodes) {
      os << format_double(n.u) << ',' << format_double(n.v);
      if (n.valid) {
        os << ',' << format_double(n.cond_i) << ',' << format_double(n.cond_ii.re) << ','
           << format_double(n.cond_ii.im);
        for (const auto& r : n.residual) {
          os << ',' << format_double(r.re) << ',' << format_double(r.im);
        }
      } else {
        for (int c = 0; c < 11; ++c) os << ',' << format_double(nan);
      }
      os << "\n";
    }
  }
};

/// Sweeps the grid with conditions (i), (ii) and the harmonicity system.
/// Nodes that cannot be evaluated are recorded and counted, not fatal.
inline ValidationReport validate(const SpaceModel& s, const PreparedData& w,
                                 const DomainGrid& grid, const ValidationTolerances& tol = {},
                                 DerivativeMode mode = DerivativeMode::Symbolic) {
  ValidationReport rep;
  rep.mode = mode;
  rep.tolerances = tol;
  rep.nodes.reserve(grid.size());
  const LTable L = s.l_table();
  for (int i = 0; i < grid.nu(); ++i) {
    for (int j = 0; j < grid.nv(); ++j) {
      NodeValidation n;
      n.u = grid.u_at(i);
      n.v = grid.v_at(j);
      try {
        const auto psi = w.data.eval(n.u, n.v);
        std::array<Scalar, 4> dbar;
        if (mode == DerivativeMode::Symbolic) {
          for (int k = 0; k < 4; ++k) dbar[k] = eval(w.dbar[k], n.u, n.v);
        } else {
          dbar = dbar_finite_difference(w.data, n.u, n.v, 1e-5);
        }
        n.cond_i = condition_i(s, psi);
        n.cond_ii = condition_ii(s, psi);
        n.residual = harmonicity_generic(L, psi, dbar);
        n.valid = true;
        for (double x : {n.cond_i, n.cond_ii.re, n.cond_ii.im}) {
          if (!std::isfinite(x)) n.valid = false;
        }
        for (const auto& r : n.residual) {
          if (!std::isfinite(r.re) || !std::isfinite(r.im)) n.valid = false;
        }
        if (!n.valid) n.error = "non-finite value";
      } catch (const Error& e) {
        n.error = e.what();
      }
      if (n.valid) {
        double worst = 0.0;
        for (const auto& r : n.residual) worst = std::max(worst, magnitude(r));
        if (worst > rep.sup_residual) {
          rep.sup_residual = worst;
          rep.worst_node = rep.nodes.size();
        }
        rep.sup_condition_ii = std::max(rep.sup_condition_ii, magnitude(n.cond_ii));
        rep.min_abs_condition_i = std::min(rep.min_abs_condition_i, std::abs(n.cond_i));
      } else {
        ++rep.invalid_nodes;
      }
      rep.nodes.push_back(std::move(n));
    }
  }
  const double res_tol = mode == DerivativeMode::Symbolic ? tol.residual : tol.residual_fd;
  if (rep.invalid_nodes > 0) {
    rep.reasons.push_back("data not evaluable at " + std::to_string(rep.invalid_nodes) +
                          " node(s)");
  }
  if (rep.sup_residual > res_tol) {
    const auto& wn = rep.nodes[rep.worst_node];
    rep.reasons.push_back("harmonicity residual " + format_double(rep.sup_residual) +
                          " at u=" + format_double(wn.u) + " v=" + format_double(wn.v));
  }
  if (rep.sup_condition_ii > tol.condition_ii) {
    rep.reasons.push_back("condition (ii) violated: " + format_double(rep.sup_condition_ii));
  }
  if (rep.min_abs_condition_i < tol.degeneracy_floor) {
    rep.reasons.push_back("degenerate (non-immersion): min |condition (i)| = " +
                          format_double(rep.min_abs_condition_i));
  }
  rep.pass = rep.reasons.empty();
  return rep;
}

}  // namespace drms
