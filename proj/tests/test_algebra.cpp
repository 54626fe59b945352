#include <cmath>

#include <gtest/gtest.h>

#include "drms/algebra.hpp"
#include "generators.hpp"

namespace drms {
namespace {

constexpr Algebra P = Algebra::Para;
constexpr Algebra C = Algebra::Complex;

void expect_scalar(const Scalar& s, double re, double im, double tol = 1e-15) {
  EXPECT_NEAR(s.re, re, tol);
  EXPECT_NEAR(s.im, im, tol);
}

TEST(Algebra, SigmaMatchesTag) {
  EXPECT_EQ(sigma(C), -1.0);
  EXPECT_EQ(sigma(P), 1.0);
}

TEST(Algebra, FieldOps) {
  expect_scalar(Scalar(1, 1, P) * Scalar(1, -1, P), 0, 0);
  expect_scalar(Scalar::unit(C) * Scalar::unit(C), -1, 0);
  expect_scalar(Scalar(2, 1, P) * Scalar(3, 1, P), 7, 5);
  expect_scalar(Scalar(2, 1, P) + Scalar(3, -4, P), 5, -3);
  expect_scalar(Scalar(2, 1, C) - Scalar(3, -4, C), -1, 5);
}

TEST(Algebra, KindMismatchIsAnError) {
  EXPECT_THROW(Scalar(1, 0, P) + Scalar(1, 0, C), KindMismatch);
  EXPECT_THROW(Scalar(1, 0, P) * Scalar(1, 0, C), KindMismatch);
  EXPECT_THROW(Scalar(1, 0, P) / Scalar(1, 0, C), KindMismatch);
}

TEST(Algebra, Conjugation) {
  // conj(tau/u) at u = 2
  expect_scalar(conj(Scalar(0, 0.5, P)), 0, -0.5);
  expect_scalar(conj(Scalar(3, 4, C)), 3, -4);
  expect_scalar(Scalar(2, 1, P) * conj(Scalar(2, 1, P)), 3, 0);
}

TEST(Algebra, ModulusSquared) {
  EXPECT_EQ(modulus_sq(Scalar(1, 1, P)), 0.0);
  EXPECT_EQ(modulus_sq(Scalar(3, 4, C)), 25.0);
  EXPECT_EQ(modulus_sq(Scalar::unit(P)), -1.0);
}

TEST(Algebra, Invert) {
  EXPECT_THROW(invert(Scalar(1, 1, P)), ZeroDivisor);
  EXPECT_THROW(invert(Scalar(-2, 2, P)), ZeroDivisor);
  EXPECT_THROW(invert(Scalar::zero(P)), ZeroOperand);
  EXPECT_THROW(invert(Scalar::zero(C)), ZeroOperand);
  expect_scalar(invert(Scalar::real(2, P)), 0.5, 0);
  expect_scalar(invert(Scalar::real(2, C)), 0.5, 0);
  expect_scalar(invert(Scalar(3, 1, P)), 3.0 / 8.0, -1.0 / 8.0);
  // complex numbers on the lines re = +-im are ordinary units
  expect_scalar(invert(Scalar(1, 1, C)), 0.5, -0.5);
}

TEST(Algebra, ZeroDivisorBandIsScaleAware) {
  EXPECT_TRUE(is_zero_divisor(Scalar(1e6, 1e6 + 1e-7, P)));
  EXPECT_FALSE(is_zero_divisor(Scalar(1.0, 1.0 + 1e-9, P)));
  EXPECT_FALSE(is_zero_divisor(Scalar(1, 1, C)));
}

TEST(Algebra, SplitIso) {
  auto [a, b] = split_iso(Scalar(1, 1, P));
  EXPECT_EQ(a, 1.0);
  EXPECT_EQ(b, 0.0);
  auto [c, d] = split_iso(Scalar::real(1, P));
  EXPECT_EQ(c, 0.5);
  EXPECT_EQ(d, 0.5);
  EXPECT_THROW(split_iso(Scalar(1, 1, C)), KindMismatch);

  // s = 2+tau, t = 3-tau: s*t = 5+tau, split = (3, 2). The halved map
  // satisfies split(st) = 2 split(s) . split(t).
  const Scalar s(2, 1, P), t(3, -1, P);
  auto [p, q] = split_iso(s * t);
  EXPECT_DOUBLE_EQ(p, 3.0);
  EXPECT_DOUBLE_EQ(q, 2.0);
  auto [sp, sq] = split_iso(s);
  auto [tp, tq] = split_iso(t);
  EXPECT_DOUBLE_EQ(2 * sp * tp, p);
  EXPECT_DOUBLE_EQ(2 * sq * tq, q);
}

TEST(Algebra, ExpLn) {
  expect_scalar(exp_scalar(Scalar::zero(P)), 1, 0);
  expect_scalar(exp_scalar(Scalar::zero(C)), 1, 0);
  expect_scalar(exp_scalar(Scalar(0, 0.7, P)) * exp_scalar(Scalar(0, -0.7, P)), 1, 0, 1e-15);
  expect_scalar(ln_scalar(exp_scalar(Scalar(0.3, 0.1, P))), 0.3, 0.1, 1e-15);
  expect_scalar(exp_scalar(Scalar(0.3, 0.1, P)), std::exp(0.3) * std::cosh(0.1),
                std::exp(0.3) * std::sinh(0.1), 1e-15);
  EXPECT_THROW(ln_scalar(Scalar(1, 1, P)), DomainError);
  EXPECT_THROW(ln_scalar(Scalar(-1, 0, P)), DomainError);
  EXPECT_THROW(ln_scalar(Scalar::zero(C)), DomainError);
  expect_scalar(ln_scalar(Scalar(-1, 0, C)), 0, M_PI);
}

TEST(Algebra, ParaFunctionsActOnComponents) {
  const Scalar s(0.4, -0.9, P);
  for (auto [f, g] : {std::pair{&sin_scalar, +[](double x) { return std::sin(x); }},
                      std::pair{&cos_scalar, +[](double x) { return std::cos(x); }},
                      std::pair{&sinh_scalar, +[](double x) { return std::sinh(x); }},
                      std::pair{&cosh_scalar, +[](double x) { return std::cosh(x); }}}) {
    auto [p, q] = split_iso(f(s));
    EXPECT_NEAR(2 * p, g(s.re + s.im), 1e-15);
    EXPECT_NEAR(2 * q, g(s.re - s.im), 1e-15);
  }
}

TEST(Algebra, PowInt) {
  const Scalar s(2, 1, P);
  expect_scalar(pow_int(s, 0), 1, 0);
  expect_scalar(pow_int(s, 3), 14, 13);
  expect_scalar(pow_int(s, -1) * s, 1, 0);
  EXPECT_THROW(pow_int(Scalar(1, -1, P), -2), ZeroDivisor);
}

// Property suite, 10^4 random samples per algebra.

double tol(double scale) { return 1e-12 * (1.0 + scale); }

TEST(AlgebraProperties, RingAxioms) {
  testing::Gen gen(20261015);
  for (Algebra k : {P, C}) {
    for (int n = 0; n < 10000; ++n) {
      const Scalar a = gen.scalar(k), b = gen.scalar(k), c = gen.scalar(k);
      const double sc = magnitude(a) * magnitude(b) * magnitude(c);
      const Scalar assoc = (a * b) * c - a * (b * c);
      const Scalar dist = a * (b + c) - (a * b + a * c);
      const Scalar comm = a * b - b * a;
      EXPECT_LE(magnitude(assoc), tol(sc));
      EXPECT_LE(magnitude(dist), tol(sc));
      EXPECT_LE(magnitude(comm), tol(sc));
    }
  }
}

TEST(AlgebraProperties, ConjugationIsAnAutomorphism) {
  testing::Gen gen(7);
  for (Algebra k : {P, C}) {
    for (int n = 0; n < 10000; ++n) {
      const Scalar a = gen.scalar(k), b = gen.scalar(k);
      EXPECT_EQ(conj(conj(a)), a);
      EXPECT_LE(magnitude(conj(a * b) - conj(a) * conj(b)), tol(magnitude(a) * magnitude(b)));
      EXPECT_LE(magnitude(conj(a + b) - (conj(a) + conj(b))), tol(magnitude(a) + magnitude(b)));
      const Scalar n2 = a * conj(a);
      EXPECT_EQ(n2.im, 0.0);
      EXPECT_NEAR(n2.re, modulus_sq(a), tol(magnitude(a) * magnitude(a)));
    }
  }
}

TEST(AlgebraProperties, ModulusIsMultiplicative) {
  testing::Gen gen(11);
  for (Algebra k : {P, C}) {
    for (int n = 0; n < 10000; ++n) {
      const Scalar a = gen.scalar(k), b = gen.scalar(k);
      const double sc = std::pow(magnitude(a) * magnitude(b), 2);
      EXPECT_NEAR(modulus_sq(a * b), modulus_sq(a) * modulus_sq(b), tol(sc));
    }
  }
}

TEST(AlgebraProperties, SplitIsABijectiveRingMap) {
  testing::Gen gen(13);
  for (int n = 0; n < 10000; ++n) {
    const Scalar a = gen.scalar(P), b = gen.scalar(P);
    auto [ap, aq] = split_iso(a);
    auto [bp, bq] = split_iso(b);
    const Scalar back = split_compose(ap, aq);
    EXPECT_NEAR(back.re, a.re, tol(magnitude(a)));
    EXPECT_NEAR(back.im, a.im, tol(magnitude(a)));
    // additive
    auto [sp, sq] = split_iso(a + b);
    EXPECT_NEAR(sp, ap + bp, tol(magnitude(a) + magnitude(b)));
    EXPECT_NEAR(sq, aq + bq, tol(magnitude(a) + magnitude(b)));
    // multiplicative on the idempotent components 2*split
    auto [mp, mq] = split_iso(a * b);
    const double sc = magnitude(a) * magnitude(b);
    EXPECT_NEAR(2 * mp, (2 * ap) * (2 * bp), tol(sc));
    EXPECT_NEAR(2 * mq, (2 * aq) * (2 * bq), tol(sc));
  }
}

TEST(AlgebraProperties, InvertFailsExactlyOnTheNullCone) {
  testing::Gen gen(17);
  for (int n = 0; n < 10000; ++n) {
    const double a = gen.real(-10, 10);
    const double sign = gen.integer(0, 1) ? 1.0 : -1.0;
    EXPECT_THROW(invert(Scalar(a, sign * a, P)), ZeroDivisor) << a;
    const Scalar s = gen.scalar(P);
    if (std::abs(std::abs(s.re) - std::abs(s.im)) < 1e-3) continue;
    const Scalar one = s * invert(s);
    const double cond = magnitude(s) * magnitude(s) / std::abs(modulus_sq(s));
    EXPECT_LE(magnitude(one - Scalar::real(1, P)), 1e-12 * cond);
  }
  for (int n = 0; n < 10000; ++n) {
    const Scalar s = gen.scalar(C);
    EXPECT_LE(magnitude(s * invert(s) - Scalar::real(1, C)), 1e-12);
  }
}

}  // namespace
}  // namespace drms
