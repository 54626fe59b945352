#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "drms/expr.hpp"
#include "generators.hpp"

namespace drms {
namespace {

constexpr Algebra P = Algebra::Para;
constexpr Algebra C = Algebra::Complex;

void expect_scalar(const Scalar& s, double re, double im, double tol = 1e-14) {
  EXPECT_NEAR(s.re, re, tol);
  EXPECT_NEAR(s.im, im, tol);
}

TEST(Parse, DivisionStructure) {
  const Expr e = parse("tau/u", P);
  ASSERT_EQ(e.root().op, Op::Div);
  EXPECT_EQ(e.root().lhs->op, Op::Unit);
  EXPECT_EQ(e.root().rhs->op, Op::VarU);
  EXPECT_EQ(to_string(e), "(tau / u)");
}

TEST(Parse, UnaryMinusBindsLooserThanPower) {
  const Expr e = parse("-u^2", P);
  ASSERT_EQ(e.root().op, Op::Neg);
  ASSERT_EQ(e.root().lhs->op, Op::Pow);
  EXPECT_EQ(e.root().lhs->exponent, 2);
  expect_scalar(eval(e, 3, 0), -9, 0);
}

TEST(Parse, PrecedenceAndAssociativity) {
  expect_scalar(eval(parse("1 - 2 - 3", P), 0, 0), -4, 0);
  expect_scalar(eval(parse("8/2/2", C), 0, 0), 2, 0);
  expect_scalar(eval(parse("2 + 3*u^2", C), 2, 0), 14, 0);
  expect_scalar(eval(parse("u^-2", C), 2, 0), 0.25, 0);
  expect_scalar(eval(parse("1.5e1 + .5", P), 0, 0), 15.5, 0);
}

TEST(Parse, FunctionsAndUnits) {
  expect_scalar(eval(parse("exp(u) + conj(i)", C), 0, 0), 1, -1);
  expect_scalar(eval(parse("cosh(0)*sinh(0) + cos(0) + sin(0) + ln(1)", P), 0, 0), 1, 0);
}

TEST(Parse, UnitOfTheWrongAlgebraIsAKindError) {
  EXPECT_THROW(parse("i/u", P), KindError);
  EXPECT_THROW(parse("tau/u", C), KindError);
  try {
    parse("1 + 2*i", P);
    FAIL();
  } catch (const KindError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(Parse, MalformedInputIsASyntaxError) {
  try {
    parse("tau//u", P);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  for (const char* bad : {"", "(u", "u)", "u +", "foo(u)", "u^", "u^1.5", "sqrt(u)", "2 3", "u $"}) {
    EXPECT_THROW(parse(bad, P), SyntaxError) << bad;
  }
}

TEST(Eval, Examples) {
  expect_scalar(eval(parse("tau/u", P), 2, 0), 0, 0.5);
  expect_scalar(eval(parse("i/u", C), 4, 7), 0, 0.25);
  // (u + tau v)^2 at (1, 2) = 1 + 4 + 4 tau
  expect_scalar(eval(parse("(u + tau*v)^2", P), 1, 2), 5, 4);
  expect_scalar(eval(parse("(u + i*v)^2", C), 1, 2), -3, 4);
}

TEST(Eval, FailuresNameTheNode) {
  try {
    eval(parse("1/(u - tau*v)", P), 1, 1);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_NE(std::string(e.what()).find("@1"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("(1 / (u - (tau * v)))"), std::string::npos);
  }
  EXPECT_THROW(eval(parse("ln(u - 2)", P), 1, 0), EvalError);
  EXPECT_THROW(eval(parse("1/u", C), 0, 0), EvalError);
}

// Central-difference oracle for the exact derivative trees.
Scalar fd(const Expr& e, Variable wrt, double u, double v, double h = 1e-5) {
  const double du = wrt == Variable::U ? h : 0.0;
  const double dv = wrt == Variable::V ? h : 0.0;
  return (1.0 / (2 * h)) * (eval(e, u + du, v + dv) - eval(e, u - du, v - dv));
}

TEST(Diff, KnownDerivatives) {
  const Expr e = parse("tau/u", P);
  expect_scalar(eval(diff(e, Variable::U), 2, 0), 0, -0.25);
  expect_scalar(eval(diff(e, Variable::V), 2, 0), 0, 0);
  const Expr g = parse("u^3*v - exp(v)", C);
  expect_scalar(eval(diff(g, Variable::U), 2, 3), 36, 0);
  expect_scalar(eval(diff(g, Variable::V), 2, 0.5), 8 - std::exp(0.5), 0);
}

TEST(Diff, MatchesFiniteDifferences) {
  testing::Gen gen(101);
  for (const char* text : {"tau/u", "u^2*v - sinh(tau*v)", "exp(u*tau)/(1 + v^2)", "ln(u + 3)",
                           "cosh(u - v)*conj(tau*u)", "(u + tau*v)^-3"}) {
    const Expr e = parse(text, P);
    for (int n = 0; n < 20; ++n) {
      const double u = gen.real(0.5, 1.5), v = gen.real(-0.5, 0.5);
      for (Variable w : {Variable::U, Variable::V}) {
        const Scalar exact = eval(diff(e, w), u, v);
        EXPECT_LE(magnitude(exact - fd(e, w, u, v)), 1e-7 * (1 + magnitude(exact))) << text;
      }
    }
  }
}

TEST(Diff, RandomExpressionsMatchFiniteDifferences) {
  testing::Gen gen(202);
  for (int n = 0; n < 400; ++n) {
    const Algebra k = gen.algebra();
    const std::string text = gen.expression(k);
    const Expr e = parse(text, k);
    const double u = gen.real(0.5, 1.5), v = gen.real(0.5, 1.5);
    for (Variable w : {Variable::U, Variable::V}) {
      const Scalar exact = eval(diff(e, w), u, v);
      EXPECT_LE(magnitude(exact - fd(e, w, u, v)), 1e-6 * (1 + magnitude(exact))) << text;
    }
  }
}

TEST(Wirtinger, Examples) {
  // d/dzbar of tau/u = 1/2 d/du (tau/u) = -tau/(2u^2)
  expect_scalar(eval(wirtinger_bar(parse("tau/u", P)), 1, 0), 0, -0.5);
  expect_scalar(eval(wirtinger_bar(parse("1/u", P)), 2, 0), -0.125, 0);
  // z and conj(z) in both algebras
  expect_scalar(eval(wirtinger_bar(parse("u + tau*v", P)), 1, 1), 0, 0);
  expect_scalar(eval(wirtinger_bar(parse("u - tau*v", P)), 1, 1), 1, 0);
  expect_scalar(eval(wirtinger(parse("u + tau*v", P)), 1, 1), 1, 0);
  expect_scalar(eval(wirtinger_bar(parse("u + i*v", C)), 1, 1), 0, 0);
  expect_scalar(eval(wirtinger_bar(parse("u - i*v", C)), 1, 1), 1, 0);
  expect_scalar(eval(wirtinger(parse("u + i*v", C)), 1, 1), 1, 0);
}

TEST(Wirtinger, HolomorphicFunctionsOfZAreAnnihilated) {
  testing::Gen gen(303);
  for (Algebra k : {P, C}) {
    const std::string z = k == P ? "(u + tau*v)" : "(u + i*v)";
    for (const std::string& f : {"exp(" + z + ")", z + "^3", "sin(" + z + ")", "1/(3 + " + z + ")",
                                "cosh(" + z + ")*" + z}) {
      const Expr e = parse(f, k);
      for (int n = 0; n < 20; ++n) {
        const double u = gen.real(-0.5, 0.5), v = gen.real(-0.5, 0.5);
        EXPECT_LE(magnitude(eval(wirtinger_bar(e), u, v)), 1e-13) << f;
      }
    }
  }
}

// A para-holomorphic f = a + tau b satisfies a_u = b_v, a_v = b_u, and
// conversely; its components solve the wave equation a_uu = a_vv.
TEST(Wirtinger, ParaCauchyRiemann) {
  testing::Gen gen(404);
  const Expr f = parse("exp(u + tau*v)*(u + tau*v)^2", P);
  const Expr fu = diff(f, Variable::U), fv = diff(f, Variable::V);
  const Expr fuu = diff(fu, Variable::U), fvv = diff(fv, Variable::V);
  for (int n = 0; n < 50; ++n) {
    const double u = gen.real(-1, 1), v = gen.real(-1, 1);
    const Scalar a = eval(fu, u, v), b = eval(fv, u, v);
    EXPECT_NEAR(a.re, b.im, 1e-12 * (1 + magnitude(a)));
    EXPECT_NEAR(a.im, b.re, 1e-12 * (1 + magnitude(a)));
    const Scalar w = eval(fuu, u, v) - eval(fvv, u, v);
    EXPECT_LE(magnitude(w), 1e-11 * (1 + magnitude(a)));
  }
  // converse: build g = a + tau b from a pair satisfying the equations
  // (a = u^2 + v^2, b = 2uv) and check the Wirtinger derivative vanishes.
  const Expr g = parse("u^2 + v^2 + tau*2*u*v", P);
  for (int n = 0; n < 20; ++n) {
    EXPECT_LE(magnitude(eval(wirtinger_bar(g), gen.real(-1, 1), gen.real(-1, 1))), 1e-14);
  }
  // and a pair violating them is not annihilated
  EXPECT_GT(magnitude(eval(wirtinger_bar(parse("u^2 - v^2 + tau*2*u*v", P)), 1, 1)), 0.5);
}

TEST(Print, RoundTripPreservesValues) {
  testing::Gen gen(505);
  for (int n = 0; n < 500; ++n) {
    const Algebra k = gen.algebra();
    const Expr e = parse(gen.expression(k), k);
    const std::string once = to_string(e);
    const Expr back = parse(once, k);
    EXPECT_EQ(to_string(back), once);
    const double u = gen.real(0.5, 1.5), v = gen.real(0.5, 1.5);
    const Scalar a = eval(e, u, v), b = eval(back, u, v);
    EXPECT_EQ(a.re, b.re) << once;
    EXPECT_EQ(a.im, b.im) << once;
  }
}

TEST(Print, ParsedTreesPrintStructurally) {
  const Expr e = parse("tau/u", P);
  EXPECT_TRUE(structurally_equal(e.root(), parse(to_string(e), P).root()));
  EXPECT_FALSE(structurally_equal(parse("u*v", P).root(), parse("v*u", P).root()));
  EXPECT_EQ(to_string(parse("-u^2", P)), "(-u^2)");
  EXPECT_EQ(to_string(parse("(-u)^2", P)), "(-u)^2");
  EXPECT_EQ(to_string(parse("((u + 1)^2)^3", P)), "((u + 1)^2)^3");
}

TEST(WeierstrassDataParse, RejectsWrongUnit) {
  EXPECT_THROW(WeierstrassData::parse({"i/u", "0", "0", "1/u"}, P), KindError);
  const auto w = WeierstrassData::parse({"tau/u", "0", "0", "1/u"}, P);
  const auto psi = w.eval(2, 0);
  expect_scalar(psi[0], 0, 0.5);
  expect_scalar(psi[3], 0.5, 0);
}

}  // namespace
}  // namespace drms
