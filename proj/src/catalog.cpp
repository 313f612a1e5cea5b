#include "unipotent/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "unipotent/builder2.hpp"
#include "unipotent/ugroup.hpp"

#ifndef UNIPOTENT_FIXTURE_DIR
#define UNIPOTENT_FIXTURE_DIR "data/fixtures"
#endif

namespace unipotent {

using nlohmann::json;

namespace {

constexpr std::string_view kSqrt = "\xE2\x88\x9A";
constexpr std::string_view kMinus = "\xE2\x88\x92";

template <std::size_t K>
class ElementParser {
 public:
  using Element = Multiquad<K>;

  ElementParser(std::string_view s, const typename Element::Radicands& r, const RootChooser& roots, int precision)
      : s_(s), radicands_(r), roots_(roots), precision_(precision) {}

  Element run() {
    Element v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool eat_minus() { return eat("-") || eat(kMinus); }
  bool eat_sqrt() { return eat(kSqrt) || eat("sqrt"); }
  bool at_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char ch = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == '(' || s_.substr(pos_, kSqrt.size()) == kSqrt ||
           s_.substr(pos_, 4) == "sqrt";
  }

  Element constant(const Dyadic& x) const { return Element::constant(radicands_, x); }

  Element expr() {
    Element v = unary();
    while (true) {
      if (eat("+"))
        v = v + unary();
      else if (eat_minus())
        v = v - unary();
      else
        return v;
    }
  }
  Element unary() {
    if (eat_minus()) return -unary();
    if (eat("+")) return unary();
    return term();
  }
  Element term() {
    Element v = atom();
    while (true) {
      if (eat("*")) {
        v = v * factor();
      } else if (eat("/")) {
        const Element d = factor();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else if (at_atom()) {
        v = v * atom();
      } else {
        return v;
      }
    }
  }
  Element factor() {
    if (eat_minus()) return -factor();
    return atom();
  }
  Element number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return constant(Dyadic::from_int(std::stoll(std::string(s_.substr(start, pos_ - start))), precision_));
  }
  Element atom() {
    if (eat("(")) {
      Element v = expr();
      if (!eat(")")) fail("expected ')'");
      return v;
    }
    if (eat_sqrt()) {
      if (eat("(")) {
        Element v = expr();
        if (!eat(")")) fail("expected ')'");
        return root(v);
      }
      return root(number());
    }
    return number();
  }
  Element root(const Element& x) {
    if (!x.lies_in(0)) fail("square root of an element outside Q2");
    const Dyadic q = x[0];
    if (q.is_zero()) return x;
    for (std::size_t m = 0; m < Element::kDim; ++m) {
      Dyadic prod = Dyadic::from_int(1, precision_);
      for (std::size_t i = 0; i < K; ++i)
        if ((m >> i) & 1) prod *= radicands_[i];
      const Dyadic r = q / prod;
      if (is_square(r)) return Element::monomial(radicands_, m) * roots_(r);
    }
    fail("square root of " + render(q) + " is outside the field");
  }

  std::string_view s_;
  typename Element::Radicands radicands_;
  const RootChooser& roots_;
  int precision_;
  std::size_t pos_ = 0;
};

std::vector<int> class_bits(SquareClass c) { return {c.minus_one(), c.two(), c.five()}; }

SquareClass class_from_bits(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("square class must be three bits");
  return SquareClass::from_exponents(j[0].get<int>(), j[1].get<int>(), j[2].get<int>());
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string pair_label(SquareClass a, SquareClass b) { return "{" + to_string(a) + "," + to_string(b) + "}"; }

BiquadElement lift(const QuadElement& x, const Dyadic& other) {
  return make_biquad(x.radicands()[0], other, x[0], x[1], Dyadic(), Dyadic());
}

std::string brief(const Dyadic& x) { return x.is_exact() || x.is_zero() ? render(x) : digit_expansion(x, 8); }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

}  // namespace

PrintedExpansion parse_printed_expansion(std::string_view text) {
  PrintedExpansion p;
  p.text = std::string(text);
  std::string cleaned;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) cleaned += ch;
  for (std::string suffix : {"+\\cdots", "+...", "\\cdots", "..."})
    if (cleaned.size() >= suffix.size() && cleaned.compare(cleaned.size() - suffix.size(), suffix.size(), suffix) == 0)
      cleaned.resize(cleaned.size() - suffix.size());
  std::stringstream ss(cleaned);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    if (tok == "1") {
      p.exponents.push_back(0);
    } else if (tok == "2") {
      p.exponents.push_back(1);
    } else if (tok.rfind("2^{", 0) == 0 && tok.back() == '}') {
      p.exponents.push_back(std::stoi(tok.substr(3, tok.size() - 4)));
    } else if (tok.rfind("2^", 0) == 0 && tok.size() > 2 &&
               std::all_of(tok.begin() + 2, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int e = std::stoi(tok.substr(2));
      p.exponents.push_back(e);
      if (tok.size() > 3) p.flags.push_back("\"" + tok + "\" read as 2^{" + tok.substr(2) + "} (unbraced exponent)");
    } else if (tok.size() > 1 && tok[0] == '2' &&
               std::all_of(tok.begin() + 1, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      p.exponents.push_back(std::stoi(tok.substr(1)));
      p.flags.push_back("\"" + tok + "\" read as 2^" + tok.substr(1) + " (missing caret)");
    } else {
      throw ParseError("cannot read term \"" + tok + "\" of a 2-adic expansion");
    }
  }
  if (!std::is_sorted(p.exponents.begin(), p.exponents.end()) ||
      std::adjacent_find(p.exponents.begin(), p.exponents.end()) != p.exponents.end())
    throw ParseError("exponents of \"" + p.text + "\" are not increasing");
  return p;
}

bool matches_printed(const Dyadic& x, const PrintedExpansion& p) {
  if (x.is_zero() || p.exponents.empty()) return false;
  std::set<int> set(p.exponents.begin(), p.exponents.end());
  for (int i = std::min(0, x.valuation()); i <= p.last(); ++i) {
    const int digit = i < x.valuation() ? 0 : x.digit(i);
    if (digit != static_cast<int>(set.count(i))) return false;
  }
  return true;
}

RootChooser canonical_roots() {
  return [](const Dyadic& q) { return sqrt_hensel(q); };
}

RootChooser printed_roots(std::vector<std::pair<Dyadic, PrintedExpansion>> table) {
  return [table = std::move(table)](const Dyadic& q) {
    const Dyadic r = sqrt_hensel(q);
    const auto exact = q.rational();
    for (const auto& [value, printed] : table) {
      if (!exact || value.rational() != exact) continue;
      if (!matches_printed(r, printed) && matches_printed(-r, printed)) return -r;
      break;
    }
    return r;
  };
}

template <std::size_t K>
Multiquad<K> parse_element(std::string_view text, const typename Multiquad<K>::Radicands& radicands,
                           const RootChooser& roots, int precision) {
  return ElementParser<K>(text, radicands, roots, precision).run();
}

template Multiquad<1> parse_element<1>(std::string_view, const Multiquad<1>::Radicands&, const RootChooser&, int);
template Multiquad<2> parse_element<2>(std::string_view, const Multiquad<2>::Radicands&, const RootChooser&, int);

Dyadic parse_rational(std::string_view text, int precision) {
  const auto x = ElementParser<1>(text, {Dyadic::from_int(-1)}, canonical_roots(), precision).run();
  if (!x.lies_in(0)) throw ParseError("\"" + std::string(text) + "\" is not rational");
  return x[0];
}

SquareClass parse_class(std::string_view text) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  const Dyadic x = parse_rational(s);
  if (x.is_zero()) throw ParseError("zero has no square class");
  return square_class(x);
}

Catalog build_catalog(const std::string& group, int cap) {
  Catalog c;
  c.group = group;
  if (group == "u2") {
    for (SquareClass b : enumerate_u2()) c.entries.push_back({{std::to_string(b.representative())}, b, {}, {}});
  } else if (group == "u3") {
    for (const auto& p : enumerate_unordered_pairs())
      for (const auto& w : enumerate_d8(p, cap))
        c.entries.push_back({{render(w.delta), std::to_string(p.b.representative())}, p.b, {p.a, p.b}, w.fingerprint});
  } else if (group == "u4") {
    for (const auto& pair : enumerate_admissible_pairs())
      for (const auto& t : enumerate_triples(pair, cap))
        c.entries.push_back({{render(triple_A(t.delta)), render(triple_C(t.delta)), render(t.delta)},
                             pair.b,
                             {pair.V.a(), pair.V.c()},
                             t.fingerprint});
  } else {
    throw PreconditionViolation("unknown group \"" + group + "\" (expected u2, u3 or u4)");
  }
  return c;
}

std::vector<Dyadic> entry_radicands(const Catalog& catalog, const CatalogEntry& entry) {
  std::vector<Dyadic> out;
  if (catalog.group == "u2") return out;
  for (SquareClass v : entry.V) out.push_back(v.representative_dyadic());
  return out;
}

std::string catalog_to_json(const Catalog& c) {
  json j;
  j["group"] = c.group;
  j["base"] = c.base;
  j["entries"] = json::array();
  for (const auto& e : c.entries) {
    json v = json::array();
    for (SquareClass s : e.V) v.push_back(class_bits(s));
    j["entries"].push_back(
        {{"generators", e.generators}, {"b_class", class_bits(e.b)}, {"V", v}, {"w_fingerprint", e.w_fingerprint}});
  }
  return j.dump(2);
}

Catalog catalog_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    Catalog c;
    c.group = j.at("group").get<std::string>();
    c.base = j.at("base").get<std::string>();
    for (const auto& e : j.at("entries")) {
      CatalogEntry entry;
      entry.generators = e.at("generators").get<std::vector<std::string>>();
      entry.b = class_from_bits(e.at("b_class"));
      for (const auto& v : e.at("V")) entry.V.push_back(class_from_bits(v));
      entry.w_fingerprint = e.at("w_fingerprint").get<std::vector<int>>();
      c.entries.push_back(std::move(entry));
    }
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("catalog json: ") + e.what());
  }
}

std::string catalog_to_text(const Catalog& c) {
  std::ostringstream out;
  out << "group " << c.group << "\nbase " << c.base << "\n";
  for (const auto& e : c.entries) {
    out << "\nentry\n  b " << to_string(e.b) << "\n  V";
    for (SquareClass v : e.V) out << " " << to_string(v);
    out << "\n  W";
    for (int t : e.w_fingerprint) out << " " << t;
    out << "\n";
    for (const auto& g : e.generators) out << "  gen " << g << "\n";
  }
  return out.str();
}

Catalog catalog_from_text(std::string_view text) {
  Catalog c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto space = t.find(' ');
    const std::string key = t.substr(0, space);
    const std::string rest = space == std::string::npos ? "" : trim(t.substr(space + 1));
    auto need_entry = [&] {
      if (c.entries.empty()) throw ParseError("line " + std::to_string(lineno) + ": field outside an entry");
      return &c.entries.back();
    };
    std::istringstream words(rest);
    std::string w;
    if (key == "group") {
      c.group = rest;
    } else if (key == "base") {
      c.base = rest;
    } else if (key == "entry") {
      c.entries.emplace_back();
    } else if (key == "b") {
      need_entry()->b = parse_class(rest);
    } else if (key == "V") {
      auto* e = need_entry();
      while (words >> w) e->V.push_back(parse_class(w));
    } else if (key == "W") {
      auto* e = need_entry();
      while (words >> w) e->w_fingerprint.push_back(std::stoi(w));
    } else if (key == "gen") {
      need_entry()->generators.push_back(rest);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key \"" + key + "\"");
    }
  }
  return c;
}

RootChooser FixtureSet::roots(int precision) const {
  std::vector<std::pair<Dyadic, PrintedExpansion>> table;
  for (const auto& [value, printed] : printed_roots) table.push_back({parse_rational(value, precision), printed});
  return unipotent::printed_roots(std::move(table));
}

std::string default_fixture_dir() { return UNIPOTENT_FIXTURE_DIR; }

FixtureSet load_fixtures(const std::string& dir) {
  FixtureSet f;
  try {
    const json roots = read_json(dir + "/roots.json");
    const json d8 = read_json(dir + "/d8.json");
    const json u4 = read_json(dir + "/u4.json");
    for (const auto& r : roots.at("roots"))
      f.printed_roots.push_back(
          {r.at("value").get<std::string>(), parse_printed_expansion(r.at("printed").get<std::string>())});
    for (const auto& g : d8.at("groups")) {
      D8FixtureGroup d;
      d.radicand = g.at("field").get<std::string>();
      d.field = parse_class(d.radicand);
      d.b = parse_class(g.at("b").get<std::string>());
      d.deltas = g.at("deltas").get<std::vector<std::string>>();
      f.d8.push_back(std::move(d));
    }
    for (const auto& g : u4.at("fields")) {
      const auto rad = g.at("radicands").get<std::vector<std::string>>();
      if (rad.size() != 2) throw ParseError("u4 fixture needs two radicands");
      for (const auto& e : g.at("entries"))
        f.u4.push_back({e.at("label").get<std::string>(), parse_class(g.at("b").get<std::string>()), rad[0], rad[1],
                        e.at("alpha").get<std::string>(), e.at("gamma").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("fixtures: ") + e.what());
  }
  return f;
}

bool Report::all_pass() const {
  return !lines.empty() && std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& l : lines) out += std::string(l.pass ? "PASS " : "FAIL ") + l.label + ": " + l.detail + "\n";
  return out;
}

std::string Report::to_json() const {
  json j;
  j["status"] = all_pass() ? "pass" : "fail";
  j["checks"] = json::array();
  for (const auto& l : lines) j["checks"].push_back({{"label", l.label}, {"pass", l.pass}, {"detail", l.detail}});
  return j.dump(2);
}

Report verify_d8_fixtures(const FixtureSet& f, int cap, int precision) {
  Report report;
  const RootChooser roots = f.roots(precision);
  for (const auto& g : f.d8) {
    const std::string label = pair_label(g.field, g.b);
    if (!is_admissible_unordered(g.field, g.b)) {
      report.lines.push_back({label, false, "pair is not admissible"});
      continue;
    }
    const Dyadic ra = parse_rational(g.radicand, precision);
    const Dyadic rb = g.b.representative_dyadic(precision);
    const UnorderedPair ours = g.field.bits() < g.b.bits() ? UnorderedPair{g.field, g.b} : UnorderedPair{g.b, g.field};
    const auto ws = enumerate_d8(ours, cap);
    const BiquadElement::Radicands our_rad{ours.a.representative_dyadic(precision),
                                           ours.b.representative_dyadic(precision)};
    std::vector<BiquadElement> lifts;
    std::vector<int> matched;
    for (const auto& text : g.deltas) {
      CheckLine line{label + " " + kSqrt.data() + "(" + text + ")", false, ""};
      try {
        const QuadElement d = parse_element<1>(text, {ra}, roots, precision);
        const Dyadic n = norm_quad(d);
        const bool norm_ok = !n.is_zero() && square_class(n) == g.b;
        const BiquadElement e = lift(d, rb);
        lifts.push_back(e);
        const BiquadElement in_ours = rebase(e, our_rad);
        int which = -1;
        for (std::size_t j = 0; j < ws.size(); ++j)
          if (is_square_in_E(in_ours / rebase(lift(ws[j].delta, ours.b.representative_dyadic(precision)), our_rad)))
            which = static_cast<int>(j);
        matched.push_back(which);
        line.pass = norm_ok && which >= 0;
        line.detail = "Nm = " + brief(n) + " in " + to_string(square_class(n)) + (norm_ok ? " = " : " != ") +
                      to_string(g.b) + "; " +
                      (which >= 0 ? "W #" + std::to_string(which + 1) + " of the enumeration, ours " +
                                        kSqrt.data() + "(" + render(ws[which].delta) + ")"
                                  : std::string("no enumerated W matches"));
      } catch (const Error& e) {
        line.detail = e.what();
      }
      report.lines.push_back(line);
    }
    bool distinct = lifts.size() == g.deltas.size();
    for (std::size_t i = 0; distinct && i < lifts.size(); ++i)
      for (std::size_t j = i + 1; j < lifts.size(); ++j)
        if (is_square_in_E(lifts[i] / lifts[j]) || matched[i] == matched[j]) distinct = false;
    report.lines.push_back({label + " distinct", distinct,
                            distinct ? "entries lie in pairwise distinct W" : "two entries share a W"});
  }
  return report;
}

Report verify_u4_fixtures(const FixtureSet& f, int cap, int precision) {
  Report report;
  const RootChooser roots = f.roots(precision);
  const auto pairs = enumerate_admissible_pairs();
  std::map<unsigned, std::vector<std::pair<std::vector<int>, BiquadElement>>> seen;
  for (const auto& fx : f.u4) {
    CheckLine line{fx.label, false, ""};
    try {
      const auto it = std::find_if(pairs.begin(), pairs.end(), [&](const AdmissiblePair& p) { return p.b == fx.b; });
      if (it == pairs.end()) throw Error(to_string(fx.b) + " is not an admissible b");
      const AdmissiblePair& pair = *it;
      const Dyadic ra = parse_rational(fx.radicand_a, precision);
      const Dyadic rc = parse_rational(fx.radicand_c, precision);
      if (!(ClassPlane::of(square_class(ra), square_class(rc)) == pair.V)) throw Error("radicands do not span V");
      const BiquadElement alpha = parse_element<2>(fx.alpha, {ra, rc}, roots, precision);
      const BiquadElement gamma = parse_element<2>(fx.gamma, {ra, rc}, roots, precision);
      if (!alpha.lies_in(1) || !gamma.lies_in(2)) throw Error("alpha or gamma outside its quadratic subfield");
      const BiquadElement delta = alpha + gamma;
      const Dyadic n = norm_full(delta);
      const bool norm_ok = !n.is_zero() && square_class(n) == fx.b;
      const auto fp = orbit_fingerprint(pair, delta, cap);
      const auto triples = enumerate_triples(pair, cap);
      int which = -1;
      for (std::size_t k = 0; k < triples.size(); ++k)
        if (triples[k].fingerprint == fp) which = static_cast<int>(k);
      const BiquadElement ours = rebase(delta, pair.V.radicands());
      const bool relations = norm_ok && verify_triple(pair, ours, sqrt_hensel(n / fx.b.representative_dyadic(precision))).all();
      seen[fx.b.bits()].push_back({fp, ours});
      line.pass = norm_ok && which >= 0 && relations;
      line.detail = "Nm(alpha+gamma) = " + brief(n) + " in " + to_string(square_class(n)) +
                    (norm_ok ? " = " : " != ") + to_string(fx.b) + "; relations " + (relations ? "hold" : "fail") + "; " +
                    (which >= 0 ? "W #" + std::to_string(which + 1) + " [" + join(fp) + "], ours " + kSqrt.data() + "(" +
                                      render(triples[which].delta) + ")"
                                : std::string("no enumerated W matches"));
    } catch (const Error& e) {
      line.detail = e.what();
    }
    report.lines.push_back(line);
  }
  for (const auto& [bits, entries] : seen) {
    bool distinct = true;
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j)
        if (entries[i].first == entries[j].first || is_square_in_E(entries[i].second / entries[j].second))
          distinct = false;
    report.lines.push_back({"b=" + to_string(SquareClass(bits)) + " distinct", distinct,
                            std::to_string(entries.size()) + (distinct ? " entries in pairwise distinct W"
                                                                       : " entries, some sharing a W")});
  }
  return report;
}

Report verify_digit_expansions(const FixtureSet& f, int precision) {
  Report report;
  for (const auto& [value, printed] : f.printed_roots) {
    CheckLine line{kSqrt.data() + ("(" + value + ")"), false, ""};
    try {
      const Dyadic r = sqrt_hensel(parse_rational(value, precision));
      const bool canonical = matches_printed(r, printed);
      const bool other = !canonical && matches_printed(-r, printed);
      line.pass = canonical || other;
      const Dyadic shown = other ? -r : r;
      line.detail = "printed " + printed.text + "; computed " + digit_expansion(shown, printed.last() + 1) +
                    (canonical ? " (canonical root)" : other ? " (the root = 3 mod 4)" : " (neither root matches)");
      for (const auto& flag : printed.flags) line.detail += "; flagged: " + flag;
    } catch (const Error& e) {
      line.detail = e.what();
    }
    report.lines.push_back(line);
  }
  return report;
}

std::vector<CountRow> count_table(int characteristic, int n, bool q_is_2, int cap) {
  std::vector<CountRow> rows;
  if (characteristic == 0) {
    const CountingParams p{n, q_is_2};
    const bool q2 = n == 1 && q_is_2;
    auto en = [&](auto f) -> std::optional<std::int64_t> {
      if (!q2) return std::nullopt;
      return static_cast<std::int64_t>(f());
    };
    rows.push_back({"U2", count_u2(p), en([] { return enumerate_u2().size(); })});
    rows.push_back({"unordered pairs", count_d8_pairs(p), en([] { return enumerate_unordered_pairs().size(); })});
    rows.push_back({"W per unordered pair", count_d8_w(p), en([&] { return enumerate_d8(enumerate_unordered_pairs().at(0), cap).size(); })});
    rows.push_back({"D8", count_d8(p), en([&] {
                      std::size_t total = 0;
                      for (const auto& up : enumerate_unordered_pairs()) total += enumerate_d8(up, cap).size();
                      return total;
                    })});
    rows.push_back({"admissible pairs", count_pairs(p), en([] { return enumerate_admissible_pairs().size(); })});
    rows.push_back({"triples per pair", count_triples_per_pair(p),
                    en([&] { return enumerate_triples(enumerate_admissible_pairs().at(0), cap).size(); })});
    rows.push_back({"U4", count_u4(p), en([&] {
                      std::size_t total = 0;
                      for (const auto& pair : enumerate_admissible_pairs()) total += enumerate_triples(pair, cap).size();
                      return total;
                    })});
    const bool none = max_unipotent_level(square_class_dim(n)) < 5;
    rows.push_back({"U_m, m>=5", none ? std::optional<std::int64_t>(0) : std::nullopt,
                    en([] { return max_unipotent_level(square_class_dim(1)) < 5 ? 0 : -1; })});
  } else if (characteristic == 2) {
    const Char2CountingParams p{n};
    rows.push_back({"admissible pairs", count_pairs_char2(p),
                    n <= 5 ? std::optional<std::int64_t>(brute_count_pairs(n)) : std::nullopt});
    if (n >= 3) {
      rows.push_back({"triples per pair", count_triples_char2(p), std::nullopt});
      rows.push_back({"U4", count_u4_char2(p), std::nullopt});
    } else {
      rows.push_back({"triples per pair", std::optional<std::int64_t>(0), std::nullopt});
      rows.push_back({"U4", std::optional<std::int64_t>(0), std::nullopt});
    }
  } else {
    throw PreconditionViolation("characteristic must be 0 or 2");
  }
  return rows;
}

}  // namespace unipotent
