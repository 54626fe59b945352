#pragma once

/// Arithmetic over the two-dimensional real algebras used for Weierstrass
/// data: complex numbers (i^2 = -1) and paracomplex numbers (tau^2 = +1).

#include <cmath>
#include <complex>
#include <ostream>
#include <string>
#include <utility>

#include "drms/errors.hpp"

namespace drms {

enum class Algebra { Complex, Para };

/// Square of the imaginary unit.
constexpr double sigma(Algebra k) { return k == Algebra::Complex ? -1.0 : 1.0; }

inline std::string to_string(Algebra k) {
  return k == Algebra::Complex ? "complex" : "para";
}

/// Element re + unit*im of the algebra named by `kind`.
struct Scalar {
  double re = 0.0;
  double im = 0.0;
  Algebra kind = Algebra::Complex;

  constexpr Scalar() = default;
  constexpr Scalar(double r, double i, Algebra k) : re(r), im(i), kind(k) {}

  static constexpr Scalar real(double r, Algebra k) { return {r, 0.0, k}; }
  static constexpr Scalar unit(Algebra k) { return {0.0, 1.0, k}; }
  static constexpr Scalar zero(Algebra k) { return {0.0, 0.0, k}; }

  bool is_zero() const { return re == 0.0 && im == 0.0; }

  friend bool operator==(const Scalar&, const Scalar&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.re << (s.im < 0 ? " - " : " + ") << std::abs(s.im)
            << (s.kind == Algebra::Complex ? "i" : "tau");
}

namespace detail {

inline void require_same_kind(const Scalar& a, const Scalar& b) {
  if (a.kind != b.kind) {
    throw KindMismatch("cannot combine " + to_string(a.kind) + " and " +
                       to_string(b.kind) + " scalars");
  }
}

}  // namespace detail

inline Scalar operator+(const Scalar& a, const Scalar& b) {
  detail::require_same_kind(a, b);
  return {a.re + b.re, a.im + b.im, a.kind};
}

inline Scalar operator-(const Scalar& a, const Scalar& b) {
  detail::require_same_kind(a, b);
  return {a.re - b.re, a.im - b.im, a.kind};
}

inline Scalar operator-(const Scalar& a) { return {-a.re, -a.im, a.kind}; }

inline Scalar operator*(const Scalar& a, const Scalar& b) {
  detail::require_same_kind(a, b);
  return {a.re * b.re + sigma(a.kind) * a.im * b.im, a.re * b.im + a.im * b.re,
          a.kind};
}

inline Scalar operator*(double x, const Scalar& a) {
  return {x * a.re, x * a.im, a.kind};
}

inline Scalar operator*(const Scalar& a, double x) { return x * a; }

inline Scalar conj(const Scalar& s) { return {s.re, -s.im, s.kind}; }

/// s * conj(s); indefinite for paracomplex numbers.
inline double modulus_sq(const Scalar& s) {
  return s.re * s.re - sigma(s.kind) * s.im * s.im;
}

/// Euclidean size of the coefficient pair, used for residual norms.
inline double magnitude(const Scalar& s) { return std::hypot(s.re, s.im); }

/// Paracomplex null-cone test, banded relative to the operand scale.
inline bool is_zero_divisor(const Scalar& s) {
  if (s.kind != Algebra::Para || s.is_zero()) return false;
  const double band = 1e-12 * (1.0 + std::abs(s.re) + std::abs(s.im));
  return std::abs(s.re - s.im) <= band || std::abs(s.re + s.im) <= band;
}

inline Scalar invert(const Scalar& s) {
  if (s.is_zero()) throw ZeroOperand("inverse of zero");
  if (is_zero_divisor(s)) throw ZeroDivisor("inverse of a zero divisor");
  const double n = modulus_sq(s);
  return {s.re / n, -s.im / n, s.kind};
}

inline Scalar operator/(const Scalar& a, const Scalar& b) {
  detail::require_same_kind(a, b);
  return a * invert(b);
}

/// The paracomplex isomorphism a + tau b -> (a+b, a-b)/2.
inline std::pair<double, double> split_iso(const Scalar& s) {
  if (s.kind != Algebra::Para) {
    throw KindMismatch("split_iso is defined for paracomplex scalars only");
  }
  return {0.5 * (s.re + s.im), 0.5 * (s.re - s.im)};
}

/// Inverse of split_iso: (p, q) -> (p+q) + tau (p-q).
inline Scalar split_compose(double p, double q) {
  return {p + q, p - q, Algebra::Para};
}

namespace detail {

// Paraholomorphic extension of a real function: on the idempotent
// components a+b and a-b the function acts independently.
template <class F>
Scalar para_apply(const Scalar& s, F&& f) {
  const double fp = f(s.re + s.im);
  const double fq = f(s.re - s.im);
  return {0.5 * (fp + fq), 0.5 * (fp - fq), Algebra::Para};
}

inline Scalar from_std(const std::complex<double>& z) {
  return {z.real(), z.imag(), Algebra::Complex};
}

inline std::complex<double> to_std(const Scalar& s) { return {s.re, s.im}; }

}  // namespace detail

inline Scalar exp_scalar(const Scalar& s) {
  if (s.kind == Algebra::Complex) return detail::from_std(std::exp(detail::to_std(s)));
  const double ea = std::exp(s.re);
  return {ea * std::cosh(s.im), ea * std::sinh(s.im), Algebra::Para};
}

/// Principal logarithm (complex) or the inverse of exp on re > |im| (para).
inline Scalar ln_scalar(const Scalar& s) {
  if (s.kind == Algebra::Complex) {
    if (s.is_zero()) throw DomainError("ln of zero");
    return detail::from_std(std::log(detail::to_std(s)));
  }
  if (!(s.re > std::abs(s.im))) {
    throw DomainError("paracomplex ln requires re > |im|");
  }
  return detail::para_apply(s, [](double x) { return std::log(x); });
}

inline Scalar sin_scalar(const Scalar& s) {
  if (s.kind == Algebra::Complex) return detail::from_std(std::sin(detail::to_std(s)));
  return detail::para_apply(s, [](double x) { return std::sin(x); });
}

inline Scalar cos_scalar(const Scalar& s) {
  if (s.kind == Algebra::Complex) return detail::from_std(std::cos(detail::to_std(s)));
  return detail::para_apply(s, [](double x) { return std::cos(x); });
}

inline Scalar sinh_scalar(const Scalar& s) {
  if (s.kind == Algebra::Complex) return detail::from_std(std::sinh(detail::to_std(s)));
  return detail::para_apply(s, [](double x) { return std::sinh(x); });
}

inline Scalar cosh_scalar(const Scalar& s) {
  if (s.kind == Algebra::Complex) return detail::from_std(std::cosh(detail::to_std(s)));
  return detail::para_apply(s, [](double x) { return std::cosh(x); });
}

/// Integer power by repeated squaring; negative exponents go through invert.
inline Scalar pow_int(const Scalar& s, int n) {
  Scalar base = n < 0 ? invert(s) : s;
  unsigned long long e = n < 0 ? -static_cast<long long>(n) : n;
  Scalar acc = Scalar::real(1.0, s.kind);
  while (e) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

}  // namespace drms
