#include <doctest.h>

#include "errors.hpp"
#include "scalar.hpp"

using namespace invconn;

TEST_CASE("exact arithmetic stays exact and is field arithmetic") {
  Scalar a(Rational(1, 3)), b(Rational(1, 6));
  Scalar s = a + b;
  CHECK(s.exact());
  CHECK(s == Scalar(Rational(1, 2)));

  Scalar p = a * b;
  CHECK(p == Scalar(Rational(1, 18)));
  CHECK(p / b == a);

  // i^2 = -1, exactly
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK((Scalar::i() * Scalar::i() + Scalar(1)).is_zero());

  // conjugation and parts
  Scalar z(Rational(2), Rational(-3));
  CHECK(z.conj() == Scalar(Rational(2), Rational(3)));
  CHECK(z.real_part() == Scalar(2));
  CHECK(z.imag_part() == Scalar(-3));
  CHECK(-z == Scalar(Rational(-2), Rational(3)));
}

TEST_CASE("a floating operand demotes the result") {
  Scalar a(Rational(1, 3));
  Scalar f = Scalar::floating(0.5);
  CHECK(!(a + f).exact());
  CHECK(!(a * f).exact());
  CHECK((a + f).approx().real() == doctest::Approx(1.0 / 3.0 + 0.5));
  // exact accessors refuse to invent rationals from doubles
  CHECK_THROWS_AS((void)f.exact_re(), Error);
}

TEST_CASE("division by zero is rejected") {
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
}

TEST_CASE("rational literals parse and reject junk") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0") == 0);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("no drift over many exact operations") {
  // 1000 alternating additions/subtractions of 1/7 must land back on 0
  Scalar acc(0), step(Rational(1, 7));
  for (int k = 0; k < 1000; ++k) acc += (k % 2 == 0) ? step : -step;
  CHECK(acc.is_zero());
}
