#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unipotent/admiss.hpp"
#include "unipotent/dyadic.hpp"
#include "unipotent/quadext.hpp"

namespace unipotent {

/// A printed 2-adic expansion such as "1+2+2^4+2^5+26+2^7": the exponents of
/// the set digits, plus notes on tokens read with a presumed meaning.
struct PrintedExpansion {
  std::string text;
  std::vector<int> exponents;
  std::vector<std::string> flags;
  int last() const { return exponents.empty() ? -1 : exponents.back(); }
};

/// Accepts 1, 2, 2^k and 2^{k}; a bare "2k" is read as 2^k and an unbraced
/// multi-digit exponent as that exponent, both flagged.
PrintedExpansion parse_printed_expansion(std::string_view text);

/// Whether x agrees with the printed digits up to the last printed position.
bool matches_printed(const Dyadic& x, const PrintedExpansion& p);

/// Chooses one of the two square roots of a rational square.
using RootChooser = std::function<Dyadic(const Dyadic&)>;
RootChooser canonical_roots();
/// For listed values, the root matching the printed digits; canonical otherwise.
RootChooser printed_roots(std::vector<std::pair<Dyadic, PrintedExpansion>> table);

/// Parses integers, fractions, + - * /, parentheses, implicit products and
/// √x or sqrt(x) into the field with the given radicands. √x of a rational
/// x maps to the matching monomial times a rational root. Throws ParseError.
template <std::size_t K>
Multiquad<K> parse_element(std::string_view text, const typename Multiquad<K>::Radicands& radicands,
                           const RootChooser& roots = canonical_roots(), int precision = Dyadic::kDefaultPrecision);

/// A rational such as "-5/3" or "10".
Dyadic parse_rational(std::string_view text, int precision = Dyadic::kDefaultPrecision);

/// "[-1]" or "-1" to a square class.
SquareClass parse_class(std::string_view text);

struct CatalogEntry {
  std::vector<std::string> generators;
  SquareClass b;
  std::vector<SquareClass> V;
  std::vector<int> w_fingerprint;
  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct Catalog {
  std::string group;
  std::string base = "Q2";
  std::vector<CatalogEntry> entries;
  friend bool operator==(const Catalog&, const Catalog&) = default;
};

/// group is u2, u3 or u4.
Catalog build_catalog(const std::string& group, int cap = kDefaultSearchCap);
/// The radicands a generator of the entry is written over.
std::vector<Dyadic> entry_radicands(const Catalog& catalog, const CatalogEntry& entry);

std::string catalog_to_json(const Catalog& c);
Catalog catalog_from_json(std::string_view text);
std::string catalog_to_text(const Catalog& c);
Catalog catalog_from_text(std::string_view text);

struct D8FixtureGroup {
  SquareClass field;  // delta lies in Q2(√field)
  SquareClass b;      // the other class of the pair
  std::string radicand;
  std::vector<std::string> deltas;
};

struct U4Fixture {
  std::string label;
  SquareClass b;
  std::string radicand_a;
  std::string radicand_c;
  std::string alpha;  // in Q2(√radicand_a)
  std::string gamma;  // in Q2(√radicand_c)
};

struct FixtureSet {
  std::vector<std::pair<std::string, PrintedExpansion>> printed_roots;
  std::vector<D8FixtureGroup> d8;
  std::vector<U4Fixture> u4;
  RootChooser roots(int precision = Dyadic::kDefaultPrecision) const;
};

std::string default_fixture_dir();
/// Reads d8.json, u4.json and roots.json from the directory.
FixtureSet load_fixtures(const std::string& dir);

struct CheckLine {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::vector<CheckLine> lines;
  bool all_pass() const;
  std::string to_text() const;
  std::string to_json() const;
};

Report verify_d8_fixtures(const FixtureSet& f, int cap = kDefaultSearchCap, int precision = Dyadic::kDefaultPrecision);
Report verify_u4_fixtures(const FixtureSet& f, int cap = kDefaultSearchCap, int precision = Dyadic::kDefaultPrecision);
/// Canonical roots against the printed digits; a match by the other root passes and is noted.
Report verify_digit_expansions(const FixtureSet& f, int precision = Dyadic::kDefaultPrecision);

struct CountRow {
  std::string name;
  std::optional<std::int64_t> formula;
  std::optional<std::int64_t> enumerated;
};

/// Closed forms for the given characteristic (0 or 2), with enumeration
/// counts where available: n = 1, q = 2 over Q2 and n <= 5 for char-2 pairs.
std::vector<CountRow> count_table(int characteristic, int n, bool q_is_2, int cap = kDefaultSearchCap);

}  // namespace unipotent
