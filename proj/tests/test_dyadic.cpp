#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "unipotent/dyadic.hpp"

using namespace unipotent;

namespace {

std::vector<int> unit_digits(const Dyadic& x, int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i) out.push_back(x.digit(x.valuation() + i));
  return out;
}

}  // namespace

TEST_CASE("ring operations") {
  CHECK((Dyadic::from_int(1) + Dyadic::from_int(-1)).is_zero());
  const Dyadic ten = Dyadic::from_int(2) * Dyadic::from_int(5);
  CHECK(ten.valuation() == 1);
  CHECK(ten.unit() == 5);
  const Dyadic seven = Dyadic::from_int(7);
  CHECK(seven * seven.inverse() == Dyadic::from_int(1));
  CHECK((seven * seven.inverse()).unit() == 1);
  CHECK_THROWS_AS(Dyadic().inverse(), DivisionByZero);
  CHECK(Dyadic::from_rational(-2, 14) == Dyadic::from_rational(-1, 7));
  CHECK(Dyadic::parse("\xE2\x88\x92" "5/3") == Dyadic::from_rational(-5, 3));
  CHECK_THROWS_AS(Dyadic::parse("5/x"), ParseError);
}

TEST_CASE("inexact arithmetic tracks precision") {
  const Dyadic a = Dyadic::from_unit(0, 0b1011, 4);  // 11 mod 16
  const Dyadic b = Dyadic::from_unit(0, 0b0101, 4);  // 5 mod 16
  const Dyadic s = a + b;                             // 16 mod 16 -> O(2^4)
  CHECK(s.is_zero());
  CHECK(s.absolute_precision() == 4);
  CHECK_THROWS_AS(s.unit_mod(1), PrecisionExhausted);
  const Dyadic d = a - b;  // 6 = 2 * 3, unit known mod 2^3
  CHECK(d.valuation() == 1);
  CHECK(d.precision() == 3);
  CHECK(d.unit_mod(3) == 3);
}

TEST_CASE("exact values survive cancellation") {
  const Dyadic big = Dyadic::from_int(1LL << 40);
  const Dyadic x = (big + Dyadic::from_int(3)) - big;
  CHECK(x.rational() == std::make_pair(std::int64_t{3}, std::int64_t{1}));
  CHECK(x.precision() == 64);
}

TEST_CASE("square roots") {
  const Dyadic r = sqrt_hensel(Dyadic::from_int(-7));
  CHECK(digit_expansion(r, 6) == "1+2^2+2^4+2^5+...");
  CHECK(unit_digits(r, 6) == std::vector<int>{1, 0, 1, 0, 1, 1});
  CHECK(r * r == Dyadic::from_int(-7));

  const Dyadic three = sqrt_hensel(Dyadic::from_int(9));
  CHECK(three.rational() == std::make_pair(std::int64_t{-3}, std::int64_t{1}));
  CHECK(three.unit_mod(2) == 1);

  CHECK_THROWS_AS(sqrt_hensel(Dyadic::from_int(2)), NotASquare);
  CHECK_THROWS_AS(sqrt_hensel(Dyadic::from_int(5)), NotASquare);
  CHECK_THROWS_AS(sqrt_hensel(Dyadic::from_unit(0, 1, 2)), PrecisionExhausted);

  const Dyadic s = sqrt_hensel(Dyadic::from_rational(-1, 7));
  CHECK(digit_expansion(s, 8) == "1+2^2+2^3+2^4+2^7+...");

  const Dyadic q = sqrt_hensel(Dyadic::from_rational(36, 25));
  CHECK(q.is_exact());
  CHECK(q * q == Dyadic::from_rational(36, 25));
}

TEST_CASE("random squares") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t u = rng() | 1;
    const int v = static_cast<int>(rng() % 21) - 10;
    const Dyadic x = Dyadic::from_unit(v, u, 64);
    const Dyadic sq = x * x;
    const Dyadic r = sqrt_hensel(sq);
    REQUIRE(r * r == sq);
    CHECK((r * r).absolute_precision() >= sq.absolute_precision() - 1);
    CHECK(r.unit_mod(2) == 1);
    CHECK((r == x || r == -x));
  }
}

TEST_CASE("square membership and classes") {
  CHECK(is_square(Dyadic::from_int(-7)));
  CHECK_FALSE(is_square(Dyadic::from_int(5)));
  CHECK(is_square(Dyadic::from_int(4)));
  CHECK(square_class(Dyadic::from_int(10)) == SquareClass::from_exponents(0, 1, 1));
  CHECK(square_class(Dyadic::from_int(-7)).is_trivial());
  CHECK(square_class(Dyadic::from_int(3)) == SquareClass::from_exponents(1, 0, 1));
  for (unsigned bits = 0; bits < 8; ++bits) {
    const SquareClass c(bits);
    CHECK(square_class(c.representative_dyadic()) == c);
  }
  std::mt19937_64 rng(777);
  for (int i = 0; i < 500; ++i) {
    const Dyadic x = Dyadic::from_unit(static_cast<int>(rng() % 7) - 3, rng() | 1, 64);
    const Dyadic y = Dyadic::from_unit(static_cast<int>(rng() % 7) - 3, rng() | 1, 64);
    CHECK(square_class(x * y) == square_class(x) * square_class(y));
  }
  CHECK(to_string(SquareClass(1)) == "[-1]");
  CHECK(to_string(SquareClass(6)) == "[10]");
}

TEST_CASE("hilbert symbol") {
  const SquareClass m1 = square_class(Dyadic::from_int(-1));
  const SquareClass two = square_class(Dyadic::from_int(2));
  CHECK(hilbert(m1, m1) == 1);
  CHECK(hilbert(m1, two) == 0);
  CHECK(hilbert(two, m1) == 0);
  for (unsigned a = 0; a < 8; ++a) {
    const SquareClass ca(a);
    CHECK(hilbert(ca, ca * m1) == 0);
    for (unsigned b = 0; b < 8; ++b) {
      const SquareClass cb(b);
      CHECK(hilbert(ca, cb) == oracle::hilbert_conic(ca.representative(), cb.representative()));
      CHECK(hilbert(ca, cb) == hilbert(cb, ca));
      for (unsigned c = 0; c < 8; ++c)
        CHECK(hilbert(ca * SquareClass(c), cb) == (hilbert(ca, cb) ^ hilbert(SquareClass(c), cb)));
    }
    if (a != 0) {
      bool nondegenerate = false;
      for (unsigned b = 0; b < 8; ++b) nondegenerate |= hilbert(ca, SquareClass(b)) == 1;
      CHECK(nondegenerate);
    }
  }
}

TEST_CASE("rendering") {
  CHECK(render(Dyadic::from_rational(-5, 3)) == "-5/3");
  CHECK(render(Dyadic::from_unit(0, 0b1011, 4)) == "(1+2+2^3+O(2^4))");
  CHECK(render(Dyadic::zero(5)) == "O(2^5)");
}
