#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "unipotent/catalog.hpp"
#include "unipotent/charp2.hpp"
#include "unipotent/dyadic.hpp"

using namespace unipotent;
using nlohmann::json;

namespace {

struct Options {
  std::string format = "text";
  int precision = Dyadic::kDefaultPrecision;
  int search_cap = kDefaultSearchCap;
};

const char* error_kind(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const NotASquare*>(&e)) return "NotASquare";
  if (dynamic_cast<const PrecisionExhausted*>(&e)) return "PrecisionExhausted";
  if (dynamic_cast<const SearchExhausted*>(&e)) return "SearchExhausted";
  if (dynamic_cast<const PreconditionViolation*>(&e)) return "PreconditionViolation";
  if (dynamic_cast<const NotSolvable*>(&e)) return "NotSolvable";
  if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
  return "Error";
}

int cmd_enumerate(const Options& o, const std::string& group) {
  const Catalog c = build_catalog(group, o.search_cap);
  std::cout << (o.format == "json" ? catalog_to_json(c) + "\n" : catalog_to_text(c));
  return 0;
}

int cmd_verify(const Options& o, const std::string& group, const std::string& dir) {
  const FixtureSet f = load_fixtures(dir);
  Report r;
  auto append = [&](const Report& x) { r.lines.insert(r.lines.end(), x.lines.begin(), x.lines.end()); };
  if (group == "u3" || group == "all") append(verify_d8_fixtures(f, o.search_cap, o.precision));
  if (group == "u4" || group == "all") append(verify_u4_fixtures(f, o.search_cap, o.precision));
  if (group == "digits" || group == "all") append(verify_digit_expansions(f, o.precision));
  const bool ok = r.all_pass();
  if (o.format == "json") {
    std::cout << r.to_json() << "\n";
  } else {
    std::cout << r.to_text();
    if (!ok) std::cerr << r.to_json() << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_count(const Options& o, int characteristic, int n, const std::string& q) {
  if (q != "2" && q != "other") throw PreconditionViolation("--q must be 2 or other");
  const auto rows = count_table(characteristic, n, q == "2", o.search_cap);
  bool ok = true;
  json j = {{"char", characteristic}, {"n", n}, {"q", q}, {"rows", json::array()}};
  for (const auto& row : rows) {
    const bool agree = !row.formula || !row.enumerated || *row.formula == *row.enumerated;
    ok = ok && agree;
    j["rows"].push_back({{"name", row.name},
                         {"formula", row.formula ? json(*row.formula) : json(nullptr)},
                         {"enumerated", row.enumerated ? json(*row.enumerated) : json(nullptr)},
                         {"agree", agree}});
  }
  j["status"] = ok ? "pass" : "fail";
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& row : rows) {
      std::cout << row.name << ": " << (row.formula ? std::to_string(*row.formula) : "-");
      if (row.enumerated) std::cout << " (enumerated " << *row.enumerated << ")";
      std::cout << "\n";
    }
    if (!ok) std::cerr << j.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_sqrt2adic(const Options& o, const std::string& value, int digits, const std::string& which) {
  if (which != "canonical" && which != "other" && which != "both")
    throw PreconditionViolation("--root must be canonical, other or both");
  if (digits < 1) throw PreconditionViolation("--digits must be positive");
  const Dyadic r = sqrt_hensel(parse_rational(value, o.precision));
  json j = {{"value", value}};
  if (which != "other") j["canonical"] = digit_expansion(r, digits);
  if (which != "canonical") j["other"] = digit_expansion(-r, digits);
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    if (which == "both") {
      std::cout << "canonical " << j["canonical"].get<std::string>() << "\nother " << j["other"].get<std::string>()
                << "\n";
    } else {
      std::cout << j[which].get<std::string>() << "\n";
    }
  }
  return 0;
}

int cmd_hilbert(const Options& o, const std::string& a, const std::string& b) {
  const int h = hilbert(parse_class(a), parse_class(b));
  if (o.format == "json")
    std::cout << json({{"a", a}, {"b", b}, {"symbol", h}}).dump(2) << "\n";
  else
    std::cout << h << "\n";
  return 0;
}

int cmd_char2_reduce(const Options& o, const std::string& expr) {
  const APClass c = ap_normal_form(RatFunc2::parse(expr));
  if (o.format == "json")
    std::cout << json({{"input", expr}, {"normal_form", render(c)}}).dump(2) << "\n";
  else
    std::cout << render(c) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unipotent Galois extensions over Q2 and F2(t)"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--precision", o.precision, "2-adic digits carried")->check(CLI::Range(8, 1000));
  app.add_option("--search-cap", o.search_cap, "Height bound for norm-equation searches")->check(CLI::Range(4, 4096));

  std::string group, fixtures = default_fixture_dir(), value, a, b, expr, q = "2", root = "canonical";
  int characteristic = 0, n = 1, digits = 16;

  auto* enumerate = app.add_subcommand("enumerate", "Catalog of U2, U3 = D8 or U4 extensions of Q2");
  enumerate->add_option("group", group, "u2, u3 or u4")->required()->check(CLI::IsMember({"u2", "u3", "u4"}));

  auto* verify = app.add_subcommand("verify-paper-list", "Check the transcribed lists and digit expansions");
  verify->add_option("group", group, "u3, u4, digits or all")->check(CLI::IsMember({"u3", "u4", "digits", "all"}));
  verify->add_option("--fixtures", fixtures, "Fixture directory");

  auto* count = app.add_subcommand("count", "Closed-form counts with enumeration cross-checks");
  count->add_option("--char", characteristic, "Characteristic, 0 or 2")->check(CLI::IsMember({0, 2}));
  count->add_option("--n", n, "Degree over Q2 (char 0) or dim F/wp(F) (char 2)");
  count->add_option("--q", q, "Residue field size: 2 or other");

  auto* sqrt2 = app.add_subcommand("sqrt2adic", "2-adic square root of a rational");
  sqrt2->add_option("value", value, "Rational such as -10/6")->required();
  sqrt2->add_option("--digits", digits, "Number of digit positions");
  sqrt2->add_option("--root", root, "canonical (1 mod 4), other or both");

  auto* hil = app.add_subcommand("hilbert", "Additive Hilbert symbol (a,b) over Q2");
  hil->add_option("a", a)->required();
  hil->add_option("b", b)->required();

  auto* reduce = app.add_subcommand("char2-reduce", "Normal form in F2(t)/wp(F2(t))");
  reduce->add_option("expr", expr, "Rational function such as t^2+1/t")->required();

  CLI11_PARSE(app, argc, argv);
  if (group.empty()) group = "all";

  try {
    if (*enumerate) return cmd_enumerate(o, group);
    if (*verify) return cmd_verify(o, group, fixtures);
    if (*count) return cmd_count(o, characteristic, n, q);
    if (*sqrt2) return cmd_sqrt2adic(o, value, digits, root);
    if (*hil) return cmd_hilbert(o, a, b);
    if (*reduce) return cmd_char2_reduce(o, expr);
  } catch (const Error& e) {
    const json j = {{"status", "error"}, {"error", error_kind(e)}, {"message", e.what()}};
    (o.format == "json" ? std::cout : std::cerr) << j.dump(2) << "\n";
    return 2;
  }
  return 0;
}
