#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "unipotent/builder2.hpp"
#include "unipotent/catalog.hpp"

using namespace unipotent;

namespace {

Dyadic I(long long v) { return Dyadic::from_int(v); }

}  // namespace

TEST_CASE("element parser") {
  const QuadElement x = parse_element<1>("1+sqrt(2)", {I(2)});
  CHECK(x == make_quad(I(2), I(1), I(1)));
  CHECK(parse_element<1>("2√2 − 3", {I(2)}) == make_quad(I(2), I(-3), I(2)));
  CHECK(parse_element<1>("-(1+√2)*(1-√2)", {I(2)}) == parse_element<1>("1", {I(2)}));
  CHECK(parse_element<1>("(1+sqrt(2))/3", {I(2)}) == make_quad(I(2), Dyadic::from_rational(1, 3), Dyadic::from_rational(1, 3)));

  // √ of a rational square uses the rational root; √(r a) uses the monomial
  const QuadElement r = parse_element<1>("sqrt(-7)", {I(2)});
  CHECK(r.lies_in(0));
  CHECK(r[0] * r[0] == I(-7));
  CHECK(r[0] == sqrt_hensel(I(-7)));
  const QuadElement s = parse_element<1>("sqrt(-14)", {I(2)});
  CHECK(s[0].is_zero());
  CHECK(s * s == parse_element<1>("-14", {I(2)}));

  const BiquadElement e = parse_element<2>("√2√5 + √10", {I(2), I(5)});
  CHECK(e == make_biquad(I(2), I(5), Dyadic(), Dyadic(), Dyadic(), I(2)));

  CHECK_THROWS_AS(parse_element<1>("sqrt(3)", {I(2)}), ParseError);
  CHECK_THROWS_AS(parse_element<1>("sqrt(sqrt(2))", {I(2)}), ParseError);
  CHECK_THROWS_AS(parse_element<1>("1+", {I(2)}), ParseError);
  CHECK_THROWS_AS(parse_element<1>("(1", {I(2)}), ParseError);
  CHECK_THROWS_AS(parse_element<1>("1/(1-1)", {I(2)}), ParseError);
  CHECK_THROWS_AS(parse_element<1>("x", {I(2)}), ParseError);
}

TEST_CASE("rationals and classes") {
  CHECK(parse_rational("-5/3") == Dyadic::from_rational(-5, 3));
  CHECK(parse_rational("-5/3").rational() == std::optional<std::pair<std::int64_t, std::int64_t>>({-5, 3}));
  CHECK(parse_class("[-10]") == square_class(I(-10)));
  CHECK(parse_class("-2/14") == square_class(I(-7)));
  CHECK_THROWS_AS(parse_class("0"), ParseError);
  CHECK_THROWS_AS(parse_rational("sqrt(2)"), ParseError);
}

TEST_CASE("printed expansions") {
  const auto p = parse_printed_expansion("1+2+2^4+2^5+26+2^7+2^9");
  CHECK(p.exponents == std::vector<int>{0, 1, 4, 5, 6, 7, 9});
  REQUIRE(p.flags.size() == 1);
  CHECK(p.flags[0].find("26") != std::string::npos);

  const auto q = parse_printed_expansion("1+2+2^5+2^6+2^9+2^12");
  CHECK(q.last() == 12);
  CHECK(q.flags.size() == 1);

  const auto b = parse_printed_expansion("1+2^3+2^6+2^7+2^{10}+...");
  CHECK(b.exponents.back() == 10);
  CHECK(b.flags.empty());

  CHECK_THROWS_AS(parse_printed_expansion("1+3^2"), ParseError);
  CHECK_THROWS_AS(parse_printed_expansion("1+2^4+2^2"), ParseError);

  const Dyadic r = sqrt_hensel(Dyadic::from_rational(-5, 3));
  CHECK_FALSE(matches_printed(r, p));
  CHECK(matches_printed(-r, p));

  const auto chooser = printed_roots({{Dyadic::from_rational(-5, 3), p}});
  CHECK(chooser(Dyadic::from_rational(-5, 3)) == -r);
  CHECK(chooser(I(-7)) == sqrt_hensel(I(-7)));
}

TEST_CASE("catalogs") {
  const Catalog u2 = build_catalog("u2");
  const Catalog u3 = build_catalog("u3");
  const Catalog u4 = build_catalog("u4");
  CHECK(u2.entries.size() == 7);
  CHECK(u3.entries.size() == 18);
  CHECK(u4.entries.size() == 16);
  CHECK_THROWS_AS(build_catalog("u5"), PreconditionViolation);

  for (const Catalog* c : {&u2, &u3, &u4}) {
    CHECK(catalog_from_json(catalog_to_json(*c)) == *c);
    CHECK(catalog_from_text(catalog_to_text(*c)) == *c);
    CHECK(catalog_to_json(build_catalog(c->group)) == catalog_to_json(*c));
    CHECK(catalog_to_text(build_catalog(c->group)) == catalog_to_text(*c));
  }

  // u4 generators parse back to the enumerated elements
  std::size_t i = 0;
  for (const auto& pair : enumerate_admissible_pairs())
    for (const auto& t : enumerate_triples(pair)) {
      const CatalogEntry& e = u4.entries.at(i++);
      const auto rad = entry_radicands(u4, e);
      REQUIRE(rad.size() == 2);
      const BiquadElement::Radicands r{rad[0], rad[1]};
      CHECK(parse_element<2>(e.generators[0], r) == triple_A(t.delta));
      CHECK(parse_element<2>(e.generators[1], r) == triple_C(t.delta));
      CHECK(parse_element<2>(e.generators[2], r) == t.delta);
      CHECK(e.w_fingerprint == t.fingerprint);
      CHECK(e.b == pair.b);
    }

  for (const auto& e : u3.entries) {
    const auto rad = entry_radicands(u3, e);
    REQUIRE(rad.size() == 2);
    const QuadElement d = parse_element<1>(e.generators[0], {rad[0]});
    CHECK(square_class(norm_quad(d)) == e.b);
    CHECK(e.w_fingerprint.size() == 2);
  }

  CHECK_THROWS_AS(catalog_from_json("{\"group\": 1}"), ParseError);
  CHECK_THROWS_AS(catalog_from_text("b [-1]"), ParseError);
  CHECK_THROWS_AS(catalog_from_text("group u2\nbogus 1"), ParseError);
}

TEST_CASE("fixtures") {
  const FixtureSet f = load_fixtures(default_fixture_dir());
  CHECK(f.printed_roots.size() == 9);
  CHECK(f.d8.size() == 9);
  CHECK(f.u4.size() == 16);

  const Report digits = verify_digit_expansions(f);
  CHECK(digits.lines.size() == 9);
  CHECK(digits.all_pass());

  const Report d8 = verify_d8_fixtures(f);
  CHECK(d8.lines.size() == 27);
  CHECK(d8.all_pass());

  const Report u4 = verify_u4_fixtures(f);
  CHECK(u4.lines.size() == 20);
  CHECK(u4.all_pass());

  // class-level checks do not depend on the root signs
  FixtureSet canonical = f;
  canonical.printed_roots.clear();
  CHECK(verify_u4_fixtures(canonical).all_pass());

  // a wrong entry is reported, not hidden
  FixtureSet bad = f;
  bad.u4.resize(1);
  bad.u4[0].alpha = "1";
  bad.u4[0].gamma = "1";
  const Report r = verify_u4_fixtures(bad);
  CHECK_FALSE(r.all_pass());
  CHECK(r.to_json().find("\"fail\"") != std::string::npos);

  CHECK_THROWS_AS(load_fixtures("/nonexistent"), Error);
  const auto dir = std::filesystem::temp_directory_path() / "unipotent_bad_fixtures";
  std::filesystem::create_directories(dir);
  for (const char* name : {"roots.json", "d8.json", "u4.json"}) std::ofstream(dir / name) << "{\"roots\": [";
  CHECK_THROWS_AS(load_fixtures(dir.string()), ParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("count table") {
  for (bool q2 : {true, false}) {
    const auto rows = count_table(0, 1, q2);
    CHECK(rows.size() == 8);
    for (const auto& row : rows) {
      if (q2) {
        REQUIRE(row.enumerated.has_value());
        REQUIRE(row.formula.has_value());
        CHECK_MESSAGE(*row.formula == *row.enumerated, row.name);
      } else {
        CHECK_FALSE(row.enumerated.has_value());
      }
    }
  }
  const auto c2 = count_table(2, 3, true);
  CHECK(c2.at(0).formula == 28);
  CHECK(c2.at(0).enumerated == 28);
  CHECK(c2.at(2).formula == count_u4_char2({3}));
  CHECK_THROWS_AS(count_table(3, 1, true), PreconditionViolation);
}
