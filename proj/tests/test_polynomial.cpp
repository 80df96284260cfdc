#include <gtest/gtest.h>

#include "support.hpp"

using namespace bsv;

namespace {

const IntegerRing ZZ;

IntPoly P(const std::string& text) { return parse_polynomial<IntegerRing>(text); }
FpPoly Fp(const std::string& text, std::uint64_t p) { return parse_polynomial(text, PrimeField(p)); }

const VarId X = VarId::x(1, 1);
const VarId Y = VarId::x(1, 2);
const VarId Z = VarId::x(2, 2);

}  // namespace

TEST(VarId, NamesRoundTrip) {
  EXPECT_EQ(VarId::g(2, 1).name(), "u21");
  EXPECT_EQ(VarId::x(1, 2).name(), "x12");
  EXPECT_EQ(VarId::parse("u32"), VarId::g(3, 2));
  EXPECT_EQ(VarId::parse("x13"), VarId::x(1, 3));
  EXPECT_THROW(VarId::parse("u12"), DomainError);
  EXPECT_THROW(VarId::parse("x21"), DomainError);
  EXPECT_THROW(VarId::parse("y11"), DomainError);
  EXPECT_LT(VarId::g(3, 2), VarId::x(1, 1));
}

TEST(Monomial, DivisionAndOrder) {
  const Monomial a = Monomial::of(X, 2) * Monomial::of(Y);
  const Monomial b = Monomial::of(X);
  EXPECT_TRUE(divides(b, a));
  EXPECT_FALSE(divides(a, b));
  EXPECT_EQ(quotient(a, b), Monomial::of(X) * Monomial::of(Y));
  EXPECT_EQ(a.degree(), 3U);
  EXPECT_GT(a, b);
  EXPECT_EQ(a.to_string(), "x11^2*x12");
  EXPECT_EQ(Monomial().to_string(), "1");
}

TEST(Polynomial, DifferenceOfSquares) {
  EXPECT_EQ(P("(x11+1)*(x11-1)"), P("x11^2 - 1"));
  EXPECT_EQ(P("(x11+1)*(x11-1)").to_string(), "x11^2 - 1");
}

TEST(Polynomial, FrobeniusInCharacteristicTwo) {
  EXPECT_EQ(pow(Fp("x11 + x12", 2), 2), Fp("x11^2 + x12^2", 2));
}

TEST(Polynomial, ZeroAbsorbs) {
  const IntPoly f = P("3*x11*x12 - u21");
  const IntPoly z = f * IntPoly(ZZ);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.size(), 0U);
  EXPECT_EQ(z.to_string(), "0");
}

TEST(Polynomial, RingMismatchIsDomainError) {
  EXPECT_THROW((void)(Fp("x11", 2) + Fp("x11", 3)), DomainError);
}

TEST(Polynomial, DegreeIn) {
  const IntPoly f = P("x11^2*x12 + x12^3");
  EXPECT_EQ(f.degree_in(X).value(), 2U);
  EXPECT_EQ(f.degree_in(Z).value(), 0U);
  EXPECT_TRUE(IntPoly(ZZ).degree_in(X).is_neg_infinity());
  EXPECT_EQ(IntPoly(ZZ).degree_in(X).to_string(), "-inf");
  EXPECT_EQ(IntPoly::constant(ZZ, 5).degree_in(X).value(), 0U);
}

TEST(Polynomial, Substitute) {
  EXPECT_EQ(substitute(P("x11*x12 + x12"), X, 0), P("x12"));
  EXPECT_TRUE(substitute(P("(x11+1)*x12"), X, -1).is_zero());
  EXPECT_EQ(substitute(Fp("x11^2 + x11 + 1", 2), X, 1), Fp("1", 2));
}

TEST(Polynomial, DivideByVariable) {
  EXPECT_EQ(divide_by_variable(P("x11^2*x12 + x11*x12^2"), X), P("x11*x12 + x12^2"));
  EXPECT_EQ(divide_by_variable(P("x11*x22"), X), P("x22"));
  try {
    (void)divide_by_variable(P("x11 + x12"), X);
    FAIL() << "expected NotDivisible";
  } catch (const NotDivisible& e) {
    EXPECT_EQ(e.witness(), "x12");
  }
}

TEST(Polynomial, Evaluate) {
  EXPECT_EQ(evaluate(P("x11^2 - 1"), {{X, 3}}, 7), 1U);
  EXPECT_EQ(evaluate(parse_polynomial<RationalField>("1/2*x11"), {{X, 1}}, 5), 3U);
  EXPECT_THROW((void)evaluate(parse_polynomial<RationalField>("1/5*x11"), {{X, 1}}, 5), EvaluationError);
  const IntPoly f = P("7*x11*x12 - 4*u21 + 9");
  EXPECT_EQ(evaluate(f, {{X, 0}, {Y, 0}, {VarId::g(2, 1), 0}}, 11), 9U);
}

TEST(Polynomial, ReduceModP) {
  EXPECT_EQ(reduce_mod_p(P("2*x11*x12 + 3*x12"), 2), Fp("x12", 2));
  EXPECT_EQ(reduce_mod_p(P("x11^2 - 1"), 3), Fp("x11^2 + 2", 3));
  EXPECT_TRUE(reduce_mod_p(P("6*x11"), 2).is_zero());
}

TEST(Polynomial, CanonicalText) {
  EXPECT_EQ(P("-x11 + 3*x12*u21^2").to_string(), "3*u21^2*x12 - x11");
  EXPECT_EQ(P("0*x11").to_string(), "0");
  EXPECT_EQ(P("-x11 + 2").to_string(), "-x11 + 2");
}

TEST(Polynomial, ParserRejectsGarbage) {
  EXPECT_THROW(P("x11 +"), DomainError);
  EXPECT_THROW(P("x11 ** 2"), DomainError);
  EXPECT_THROW(P("q7"), DomainError);
  EXPECT_THROW(P("(x11"), DomainError);
}

TEST(Polynomial, ExactDivide) {
  const IntPoly a = P("x11*x22 - x12*u21 + 3");
  const IntPoly b = P("u21^2 - x11 + 1");
  EXPECT_EQ(exact_divide(a * b, b), a);
  EXPECT_THROW((void)exact_divide(a, P("x11 + x22")), NotDivisible);
}

// ---- properties ----

class PolyProperty : public ::testing::TestWithParam<int> {};

TEST_P(PolyProperty, RingAxioms) {
  gen::Rng rng(1000 + GetParam());
  const auto vars = gen::random_universe(rng, 4);
  const auto f = gen::random_int_poly(rng, vars);
  const auto g = gen::random_int_poly(rng, vars);
  const auto h = gen::random_int_poly(rng, vars);
  EXPECT_EQ(f + g, g + f);
  EXPECT_EQ(f * g, g * f);
  EXPECT_EQ((f + g) + h, f + (g + h));
  EXPECT_EQ((f * g) * h, f * (g * h));
  EXPECT_EQ(f * (g + h), f * g + f * h);
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ(f * IntPoly::constant(ZZ, 1), f);
}

TEST_P(PolyProperty, SubstituteIsHomomorphism) {
  gen::Rng rng(2000 + GetParam());
  const auto vars = gen::random_universe(rng, 4);
  const auto f = gen::random_int_poly(rng, vars);
  const auto g = gen::random_int_poly(rng, vars);
  const VarId v = vars[rng() % vars.size()];
  const long c = static_cast<long>(rng() % 9) - 4;
  EXPECT_EQ(substitute(f * g, v, c), substitute(f, v, c) * substitute(g, v, c));
  EXPECT_EQ(substitute(f + g, v, c), substitute(f, v, c) + substitute(g, v, c));
  EXPECT_LE(substitute(f, v, c).degree_in(v), Degree(0));
}

TEST_P(PolyProperty, DivideByVariableInvertsMultiplication) {
  gen::Rng rng(3000 + GetParam());
  const auto vars = gen::random_universe(rng, 5);
  const auto f = gen::random_int_poly(rng, vars);
  const VarId v = vars[rng() % vars.size()];
  EXPECT_EQ(divide_by_variable(f * IntPoly::variable(ZZ, v), v), f);
}

TEST_P(PolyProperty, EvaluateCommutesWithOpsAndReduction) {
  gen::Rng rng(4000 + GetParam());
  const auto vars = gen::random_universe(rng, 5);
  const auto f = gen::random_int_poly(rng, vars);
  const auto g = gen::random_int_poly(rng, vars);
  for (std::uint64_t p : {2ULL, 3ULL, 101ULL, 2147483647ULL}) {
    const auto pt = gen::random_point(rng, vars, p);
    const PrimeField fp(p);
    const auto ef = evaluate(f, pt, p);
    const auto eg = evaluate(g, pt, p);
    EXPECT_EQ(evaluate(f * g, pt, p), fp.mul(ef, eg));
    EXPECT_EQ(evaluate(f + g, pt, p), fp.add(ef, eg));
    EXPECT_EQ(evaluate(f - g, pt, p), fp.sub(ef, eg));
    EXPECT_EQ(evaluate(reduce_mod_p(f, p), pt, p), ef);
  }
}

TEST_P(PolyProperty, TextRoundTripIsCanonical) {
  gen::Rng rng(5000 + GetParam());
  const auto vars = gen::random_universe(rng, 6);
  const auto f = gen::random_int_poly(rng, vars, 8);
  const auto g = P(f.to_string());
  EXPECT_EQ(g, f);
  EXPECT_EQ(g.to_string(), f.to_string());
  const auto shuffled = f + gen::random_int_poly(rng, vars) - gen::random_int_poly(rng, {});
  EXPECT_EQ(shuffled == f, shuffled.to_string() == f.to_string());
}

INSTANTIATE_TEST_SUITE_P(Random, PolyProperty, ::testing::Range(0, 40));
