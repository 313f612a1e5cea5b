#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "oracles.hpp"
#include "unipotent/quadext.hpp"

using namespace unipotent;

namespace {

Dyadic I(long long v) { return Dyadic::from_int(v); }
Dyadic Q(long long n, long long d) { return Dyadic::from_rational(n, d); }

BiquadElement random_biquad(std::mt19937_64& rng, long long a, long long c, int h) {
  auto r = [&] { return I(static_cast<long long>(rng() % (2 * h + 1)) - h); };
  return make_biquad(I(a), I(c), r(), r(), r(), r());
}

// Radicand pairs spanning the four admissible V over Q2.
const std::vector<std::pair<long long, long long>> kFields = {{2, 10}, {2, -10}, {-2, -10}, {-2, -5}};

}  // namespace

TEST_CASE("quadratic norms") {
  CHECK(norm_quad(make_quad(I(2), I(1), I(1))) == I(-1));
  CHECK(norm_quad(make_quad(I(5), I(2), I(1))) == I(-1));
  CHECK(norm_quad(make_quad(I(7), I(1), Dyadic())) == I(1));
  const QuadElement e = make_quad(I(-10), Q(3, 7), I(5));
  CHECK(norm_quad(e) == norm_to_base(e));
  CHECK(e * e.inverse() == QuadElement::constant(e.radicands(), I(1)));
}

TEST_CASE("partial and full norms") {
  const BiquadElement d = make_biquad(I(2), I(10), I(4), I(1), I(1), Dyadic());
  const QuadElement na = norm_partial(d, Keep::A);
  CHECK(na[0] == I(8));
  CHECK(na[1] == I(8));
  const QuadElement nc = norm_partial(d, Keep::C);
  CHECK(nc[0] == I(24));
  CHECK(nc[1] == I(8));
  CHECK(norm_full(d) == I(-64));
  CHECK(square_class(norm_full(d)) == SquareClass(1));

  const BiquadElement one = BiquadElement::constant(d.radicands(), I(1));
  CHECK(norm_full(one) == I(1));
  CHECK(norm_full(BiquadElement::monomial(d.radicands(), 3)) == I(400));
  CHECK(square_class(I(400)).is_trivial());

  const BiquadElement pure = make_biquad(I(2), I(10), I(3), I(5), Dyadic(), Dyadic());
  const QuadElement sq = norm_partial(pure, Keep::A);
  const QuadElement p = make_quad(I(2), I(3), I(5));
  CHECK(sq == p * p);

  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    const auto [a, c] = kFields[t % 4];
    const BiquadElement x = random_biquad(rng, a, c, 6);
    const BiquadElement y = random_biquad(rng, a, c, 6);
    CHECK(norm_full(x * y) == norm_full(x) * norm_full(y));
    CHECK(norm_full(x) == norm_quad(norm_partial(x, Keep::A)));
    CHECK(norm_full(x) == norm_quad(norm_partial(x, Keep::C)));
    CHECK(norm_full(x) == norm_quad(norm_partial(x, Keep::AC)));
    CHECK(x.conjugate(1).conjugate(2) == x.conjugate(3));
    if (!norm_full(x).is_zero()) CHECK(x * x.inverse() == BiquadElement::constant(x.radicands(), I(1)));
  }
}

TEST_CASE("rendering") {
  CHECK(render(make_biquad(I(2), I(10), I(4), I(1), I(1), Dyadic())) == "4 + \xE2\x88\x9A" "2 + \xE2\x88\x9A" "10");
  CHECK(render(make_quad(I(-10), Q(1, 3), I(-3))) == "1/3 - 3\xE2\x88\x9A(-10)");
  CHECK(render(make_quad(I(2), Dyadic(), Dyadic())) == "0");
}

TEST_CASE("field invariants") {
  const auto& e = field_of<2>({I(2), I(10)});
  CHECK(e.residue_degree() == 2);
  CHECK(e.ramification() == 2);
  CHECK(e.valuation(e.uniformizer()) == 1);
  CHECK(e.valuation(e.constant(I(2))) == e.ramification());
  CHECK(e.unit_representatives().size() == 48);
  const auto& r = field_of<2>({I(-1), I(2)});
  CHECK(r.residue_degree() == 1);
  CHECK(r.ramification() == 4);
  CHECK(r.unit_representatives().size() == 16);
  CHECK_THROWS_AS(MultiquadField<2>({I(2), I(8)}), PreconditionViolation);
}

TEST_CASE("squares in E") {
  const BiquadElement five = make_biquad(I(2), I(10), I(5), Dyadic(), Dyadic(), Dyadic());
  CHECK(is_square_in_E(five));
  const BiquadElement minus_one = make_biquad(I(2), I(10), I(-1), Dyadic(), Dyadic(), Dyadic());
  CHECK_FALSE(is_square_in_E(minus_one));

  std::mt19937_64 rng(2024);
  for (int t = 0; t < 120; ++t) {
    const auto [a, c] = kFields[t % 4];
    const BiquadElement x = random_biquad(rng, a, c, 5);
    if (norm_full(x).is_zero()) continue;
    CHECK(is_square_in_E(x * x));
    if (a == 2 && c == 10) CHECK_FALSE(is_square_in_E(x * x * minus_one));
    CHECK(is_square_in_E(x) == oracle::is_square_biquad(x));
  }
  // every small element of every admissible E, against the descent oracle
  for (const auto& [a, c] : kFields) {
    int disagreements = 0;
    for (long long x0 = -2; x0 <= 2; ++x0)
      for (long long x1 = -2; x1 <= 2; ++x1)
        for (long long x2 = -1; x2 <= 1; ++x2)
          for (long long x3 = -1; x3 <= 1; ++x3) {
            const BiquadElement x = make_biquad(I(a), I(c), I(x0), I(x1), I(x2), I(x3));
            if (norm_full(x).is_zero()) continue;
            disagreements += is_square_in_E(x) != oracle::is_square_biquad(x);
          }
    CHECK(disagreements == 0);
  }
  // quadratic fields
  for (long long a : {-1, 2, 5, -2, -5, 10, -10}) {
    for (long long x = -6; x <= 6; ++x)
      for (long long y = -6; y <= 6; ++y) {
        const QuadElement e = make_quad(I(a), I(x), I(y));
        if (e.is_zero()) continue;
        CHECK(is_square_in(e) == oracle::is_square_quad(e));
      }
  }
}

TEST_CASE("norm equations") {
  const QuadElement d1 = solve_norm_quad(SquareClass(2), SquareClass(1));
  CHECK(render(d1) == "1 + \xE2\x88\x9A" "2");
  const QuadElement d2 = solve_norm_quad(SquareClass(4), SquareClass(1));
  CHECK(render(d2) == "2 + \xE2\x88\x9A" "5");
  const QuadElement d3 = solve_norm_quad(SquareClass(2), SquareClass(0));
  CHECK(d3 == QuadElement::constant(d3.radicands(), I(1)));
  CHECK_THROWS_AS(solve_norm_quad(SquareClass(2), SquareClass(4)), NotSolvable);
  for (unsigned a = 1; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b) {
      if (hilbert(SquareClass(a), SquareClass(b))) continue;
      CHECK(square_class(norm_quad(solve_norm_quad(SquareClass(a), SquareClass(b)))) == SquareClass(b));
    }

  const BiquadElement d = solve_norm_biquad(SquareClass(2), SquareClass(6), SquareClass(1));
  CHECK(square_class(norm_full(d)) == SquareClass(1));
  const BiquadElement e = solve_norm_biquad(SquareClass(2), SquareClass(7), SquareClass(3));
  CHECK(square_class(norm_full(e)) == SquareClass(3));
  CHECK_THROWS_AS(solve_norm_biquad(SquareClass(2), SquareClass(6), SquareClass(0)),
                  PreconditionViolation);
}

TEST_CASE("second D8 generator") {
  const QuadElement g1 = d8_second_generator(make_quad(I(2), I(1), I(1)), SquareClass(1), I(1));
  CHECK(g1[0] == I(2));
  CHECK(g1[1] == I(2));
  CHECK(norm_quad(g1) == I(8));
  CHECK(square_class(norm_quad(g1)) == SquareClass(2));
  const QuadElement g2 = d8_second_generator(make_quad(I(5), I(2), I(1)), SquareClass(1), I(1));
  CHECK(norm_quad(g2) == I(20));
  CHECK(square_class(norm_quad(g2)) == SquareClass(4));
  CHECK_THROWS_AS(d8_second_generator(make_quad(I(10), Dyadic(), I(1)), SquareClass(7), I(1)),
                  PreconditionViolation);
  CHECK_THROWS_AS(d8_second_generator(make_quad(I(2), I(1), I(1)), SquareClass(1), I(3)),
                  PreconditionViolation);
  // [delta1]_E = [delta2]_E
  const BiquadElement a = make_biquad(I(2), I(-1), I(1), I(1), Dyadic(), Dyadic());
  const BiquadElement b = make_biquad(I(2), I(-1), I(2), Dyadic(), I(2), Dyadic());
  CHECK(is_square_in_E(a * b));
}

TEST_CASE("norm kernel") {
  for (const auto& [a, c] : kFields) {
    const SquareClass ca = square_class(I(a)), cc = square_class(I(c));
    const auto classes = kernel_norm_classes(ca, cc);
    REQUIRE(classes.size() == 32);
    CHECK(classes.size() <= (std::size_t{1} << square_class_dim(4)));
    for (const auto& k : classes) CHECK(is_square(norm_full(k.element)));
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = i + 1; j < classes.size(); ++j)
        CHECK_FALSE(is_square_in_E(classes[i].element / classes[j].element));
    CHECK(is_square_in_E(classes[0].element));

    // small kernel elements all fall in the span
    const auto kernel = norm_kernel<2>({I(a), I(c)}, 5);
    int outside = 0;
    for (long long x0 = -1; x0 <= 1; ++x0)
      for (long long x1 = -1; x1 <= 1; ++x1)
        for (long long x2 = -1; x2 <= 1; ++x2)
          for (long long x3 = -1; x3 <= 1; ++x3) {
            const BiquadElement x = make_biquad(I(a), I(c), I(x0), I(x1), I(x2), I(x3));
            const Dyadic n = norm_full(x);
            if (n.is_zero() || !is_square(n)) continue;
            outside += kernel.index_of(x) < 0;
          }
    CHECK(outside == 0);
  }
  // constants from Q2: only <[2],[10]> dies, leaving two classes
  const auto classes = kernel_norm_classes(SquareClass(2), SquareClass(6));
  std::set<int> tags;
  for (long long v : {1, -1, 2, -2, 5, -5, 10, -10}) {
    const BiquadElement x = make_biquad(I(2), I(10), I(v), Dyadic(), Dyadic(), Dyadic());
    for (const auto& k : classes)
      if (is_square_in_E(x / k.element)) tags.insert(k.tag);
  }
  CHECK(tags.size() == 2);
  CHECK(square_class_dim(1) == 3);
  CHECK(square_class_dim(2) == 4);
  CHECK(square_class_dim(4) == 6);
}

TEST_CASE("rebase between radicand choices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const BiquadElement x = random_biquad(rng, 2, 10, 4);
    if (norm_full(x).is_zero()) continue;
    const BiquadElement y = rebase(x, {I(2), I(5)});
    CHECK(norm_full(y) == norm_full(x));
    CHECK(is_square_in_E(y) == is_square_in_E(x));
    CHECK(is_square_in_E(y * y));
    CHECK(rebase(y, {I(2), I(10)}) == x);
  }
  const BiquadElement s = rebase(BiquadElement::monomial({I(2), I(10)}, 2), {I(2), I(5)});
  CHECK(s == BiquadElement::monomial({I(2), I(5)}, 3));
  CHECK_THROWS_AS(rebase(make_quad(I(2), I(1), I(1)), {I(5)}), PreconditionViolation);
}
