#pragma once

/// The two four-dimensional Lorentzian Damek-Ricci models in global
/// coordinates (x, y, z, t):
///
///   first kind   g = e^{-t}(dx^2 + dy^2) + e^{-2t} w^2 - dt^2
///   second kind  g = e^{-t}(dx^2 + dy^2) - e^{-2t} w^2 + dt^2
///
/// with w = dz + (c/2)(y dx - x dy). Both share the left-invariant frame
///   e1 = e^{t/2}(d_x - (c y/2) d_z), e2 = e^{t/2}(d_y + (c x/2) d_z),
///   e3 = e^t d_z,                    e4 = d_t.
/// Frame indices are 1-based in the public API, as in the usual tables.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "drms/errors.hpp"

namespace drms {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double t = 0.0;

  Vec4 vec() const { return {x, y, z, t}; }
  static Point from(const Vec4& p) { return {p[0], p[1], p[2], p[3]}; }
  friend bool operator==(const Point&, const Point&) = default;
};

enum class SpaceKind { FirstKind, SecondKind };

inline std::string to_string(SpaceKind k) { return k == SpaceKind::FirstKind ? "S41" : "S43"; }

/// Sparse table of frame connection constants: nabla_{e_i} e_j = 1/2 sum_k L^k_ij e_k.
class LTable {
 public:
  struct Entry {
    int i, j, k;
    double value;
  };

  LTable() { values_.fill(0.0); }

  void set(int i, int j, int k, double value) {
    check(i, j, k);
    values_[index(i, j, k)] = value;
    entries_.push_back({i, j, k, value});
  }

  /// L^k_ij with 1-based indices.
  double operator()(int i, int j, int k) const {
    check(i, j, k);
    return values_[index(i, j, k)];
  }

  /// Entries as listed; includes entries that vanish for c = 0.
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  static int index(int i, int j, int k) { return ((i - 1) * 4 + (j - 1)) * 4 + (k - 1); }
  static void check(int i, int j, int k) {
    if (i < 1 || i > 4 || j < 1 || j > 4 || k < 1 || k > 4) {
      throw Error("frame index out of range 1..4");
    }
  }

  std::array<double, 64> values_{};
  std::vector<Entry> entries_;
};

/// Gamma^i_{jl} in coordinates, indexed [i][j][l] from 0.
using Christoffel = std::array<std::array<std::array<double, 4>, 4>, 4>;

class SpaceModel {
 public:
  explicit SpaceModel(SpaceKind kind, double c = 1.0) : kind_(kind), c_(c) {}

  SpaceKind kind() const { return kind_; }
  double c() const { return c_; }

  /// eps_i = g(e_i, e_i).
  std::array<double, 4> signature() const {
    if (kind_ == SpaceKind::FirstKind) return {1.0, 1.0, 1.0, -1.0};
    return {1.0, 1.0, -1.0, 1.0};
  }

  double epsilon(int i) const { return signature().at(i - 1); }

  Mat4 metric_at(const Point& p) const {
    const double s = kind_ == SpaceKind::FirstKind ? 1.0 : -1.0;  // sign of w^2
    const double et = std::exp(-p.t);
    const double e2t = std::exp(-2.0 * p.t);
    // w = dz + a dx + b dy
    const double a = 0.5 * c_ * p.y;
    const double b = -0.5 * c_ * p.x;
    Mat4 g = Mat4::Zero();
    g(0, 0) = et + s * e2t * a * a;
    g(1, 1) = et + s * e2t * b * b;
    g(2, 2) = s * e2t;
    g(0, 1) = g(1, 0) = s * e2t * a * b;
    g(0, 2) = g(2, 0) = s * e2t * a;
    g(1, 2) = g(2, 1) = s * e2t * b;
    g(3, 3) = -s;
    return g;
  }

  /// Column j holds the coordinate components of e_{j+1}.
  Mat4 frame_matrix(const Point& p) const {
    const double h = std::exp(0.5 * p.t);
    Mat4 A = Mat4::Zero();
    A(0, 0) = h;
    A(1, 1) = h;
    A(2, 0) = -0.5 * c_ * h * p.y;
    A(2, 1) = 0.5 * c_ * h * p.x;
    A(2, 2) = std::exp(p.t);
    A(3, 3) = 1.0;
    return A;
  }

  /// Nonzero frame connection constants for this model.
  LTable l_table() const {
    LTable L;
    const double c = c_;
    if (kind_ == SpaceKind::FirstKind) {
      L.set(1, 1, 4, -1.0);
      L.set(1, 2, 3, c);
      L.set(1, 3, 2, -c);
      L.set(1, 4, 1, -1.0);
      L.set(2, 1, 3, -c);
      L.set(2, 2, 4, -1.0);
      L.set(2, 3, 1, c);
      L.set(2, 4, 2, -1.0);
      L.set(3, 1, 2, -c);
      L.set(3, 2, 1, c);
      L.set(3, 3, 4, -2.0);
      L.set(3, 4, 3, -2.0);
    } else {
      L.set(1, 1, 4, 1.0);
      L.set(1, 2, 3, c);
      L.set(1, 3, 2, c);
      L.set(1, 4, 1, -1.0);
      L.set(2, 1, 3, -c);
      L.set(2, 2, 4, 1.0);
      L.set(2, 3, 1, -c);
      L.set(2, 4, 2, -1.0);
      L.set(3, 1, 2, c);
      L.set(3, 2, 1, -c);
      L.set(3, 3, 4, -2.0);
      L.set(3, 4, 3, -2.0);
    }
    return L;
  }

  /// Frame components of nabla_{e_i} e_j, written out from the connection
  /// tables rather than derived from the L-table.
  Vec4 frame_connection(int i, int j) const {
    if (i < 1 || i > 4 || j < 1 || j > 4) throw Error("frame index out of range 1..4");
    const double h = 0.5 * c_;
    const double s = kind_ == SpaceKind::FirstKind ? 1.0 : -1.0;
    auto e = [](int k, double a) {
      Vec4 r = Vec4::Zero();
      r[k - 1] = a;
      return r;
    };
    switch ((i - 1) * 4 + (j - 1)) {
      case 0: return e(4, -0.5 * s);   // nabla_1 e1
      case 1: return e(3, h);          // nabla_1 e2
      case 2: return e(2, -s * h);     // nabla_1 e3
      case 3: return e(1, -0.5);       // nabla_1 e4
      case 4: return e(3, -h);         // nabla_2 e1
      case 5: return e(4, -0.5 * s);   // nabla_2 e2
      case 6: return e(1, s * h);      // nabla_2 e3
      case 7: return e(2, -0.5);       // nabla_2 e4
      case 8: return e(2, -s * h);     // nabla_3 e1
      case 9: return e(1, s * h);      // nabla_3 e2
      case 10: return e(4, -1.0);      // nabla_3 e3
      case 11: return e(3, -1.0);      // nabla_3 e4
      default: return Vec4::Zero();    // nabla_4 e_j = 0
    }
  }

  /// Frame components of [e_i, e_j]; identical for both models.
  Vec4 lie_bracket(int i, int j) const {
    if (i == j) return Vec4::Zero();
    if (i > j) return -lie_bracket(j, i);
    Vec4 r = Vec4::Zero();
    if (i == 1 && j == 2) r[2] = c_;
    if (i == 1 && j == 4) r[0] = -0.5;
    if (i == 2 && j == 4) r[1] = -0.5;
    if (i == 3 && j == 4) r[2] = -1.0;
    return r;
  }

  /// Coordinate Christoffel symbols from central differences of metric_at
  /// (step 1e-5 scaled by 1 + |t|). Independent of the frame tables.
  Christoffel christoffel_at(const Point& p) const {
    const double h = 1e-5 * (1.0 + std::abs(p.t));
    std::array<Mat4, 4> dg;  // dg[k](i,j) = d_k g_ij
    for (int k = 0; k < 4; ++k) {
      Vec4 lo = p.vec(), hi = p.vec();
      lo[k] -= h;
      hi[k] += h;
      dg[k] = (metric_at(Point::from(hi)) - metric_at(Point::from(lo))) / (2.0 * h);
    }
    const Mat4 ginv = metric_at(p).inverse();
    Christoffel G{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        for (int l = j; l < 4; ++l) {
          double sum = 0.0;
          for (int k = 0; k < 4; ++k) {
            sum += ginv(i, k) * (dg[j](k, l) + dg[l](k, j) - dg[k](j, l));
          }
          G[i][j][l] = G[i][l][j] = 0.5 * sum;
        }
      }
    }
    return G;
  }

 private:
  SpaceKind kind_;
  double c_;
};

/// Frame components of nabla_{e_i} e_j assembled from coordinate data:
/// A^{-1} (e_i(e_j) + Gamma(e_i, e_j)), with the directional derivative of
/// the frame taken by central differences of frame_matrix.
inline Vec4 frame_connection_from_christoffel(const SpaceModel& s, const Point& p, int i,
                                              int j) {
  const Mat4 A = s.frame_matrix(p);
  const Vec4 ei = A.col(i - 1);
  const Vec4 ej = A.col(j - 1);
  const double h = 1e-5 * (1.0 + std::abs(p.t));
  const Vec4 dej =
      (s.frame_matrix(Point::from(p.vec() + h * ei)).col(j - 1) -
       s.frame_matrix(Point::from(p.vec() - h * ei)).col(j - 1)) /
      (2.0 * h);
  const Christoffel G = s.christoffel_at(p);
  Vec4 cov = dej;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int d = 0; d < 4; ++d) cov[a] += G[a][b][d] * ei[b] * ej[d];
    }
  }
  return A.lu().solve(cov);
}

}  // namespace drms
