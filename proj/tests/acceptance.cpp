#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "unipotent/admiss.hpp"
#include "unipotent/builder2.hpp"
#include "unipotent/catalog.hpp"
#include "unipotent/ugroup.hpp"

using namespace unipotent;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body, double budget_s) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.check(secs < budget_s, "over the time budget");
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " (" << std::fixed;
  std::cout.precision(2);
  std::cout << secs << " s)" << o.detail.str() << "\n";
}

RatFunc2 random_rat(std::mt19937_64& rng, int max_degree) {
  auto poly = [&] {
    Poly2 p;
    const int d = static_cast<int>(rng() % (max_degree + 1));
    for (int i = 0; i <= d; ++i) p.set_coeff(i, rng() & 1);
    return p;
  };
  Poly2 den;
  while (den.is_zero()) den = poly();
  return RatFunc2(poly(), den);
}

SquareClass cls(long long r) { return square_class(Dyadic::from_int(r)); }

}  // namespace

int main() {
  criterion(1, "enumeration counts over Q2", [](Outcome& o) {
    const auto u2 = build_catalog("u2").entries.size();
    const auto u3 = build_catalog("u3").entries.size();
    const auto u4 = build_catalog("u4").entries.size();
    o.detail << " u2=" << u2 << " u3=" << u3 << " u4=" << u4;
    o.check(u2 == 7 && u3 == 18 && u4 == 16, "catalog sizes");
    o.check(enumerate_unordered_pairs().size() == 9, "9 D8 groups");
    for (const auto& p : enumerate_unordered_pairs()) o.check(enumerate_d8(p).size() == 2, "2 per D8 group");
    const int level = max_unipotent_level(square_class_dim(1));
    o.detail << " U_m(m>=5)=" << (level < 5 ? 0 : -1);
    o.check(level == 4, "no U_m with m >= 5");
  }, 60);

  criterion(2, "admissible pairs over Q2", [](Outcome& o) {
    const auto pairs = enumerate_admissible_pairs();
    std::set<long long> bs;
    for (const auto& p : pairs) bs.insert(p.b.representative());
    o.check(pairs.size() == 4, "four pairs");
    o.check(bs == std::set<long long>{-1, -2, -5, -10}, "b classes");
    for (const auto& p : pairs) {
      int count = 0;
      for (const auto& V : F2Subspace::all_of_dim(3, 2)) count += is_admissible_pair(p.b, V);
      o.check(count == 1, "unique V for " + to_string(p.b));
      if (p.b == cls(-1)) {
        std::set<long long> v;
        for (auto e : p.V.space.elements()) v.insert(SquareClass(e).representative());
        o.check(v == std::set<long long>{1, 2, 5, 10}, "V for b = -1");
      }
    }
    o.detail << " b in {-1,-2,-5,-10}";
  }, 60);

  criterion(3, "transcribed D8 and U4 lists", [](Outcome& o) {
    const FixtureSet f = load_fixtures(default_fixture_dir());
    const Report d8 = verify_d8_fixtures(f);
    const Report u4 = verify_u4_fixtures(f);
    o.check(f.d8.size() == 9 && f.u4.size() == 16, "fixture sizes");
    o.check(d8.all_pass(), "D8 fixtures");
    o.check(u4.all_pass(), "U4 fixtures");
    const QuadElement x = parse_element<1>("1+sqrt(2)", {Dyadic::from_int(2)});
    o.check(norm_quad(x) == Dyadic::from_int(-1), "Nm(1+sqrt2) = -1");
    const BiquadElement l1 = parse_element<2>("4+sqrt(2)+sqrt(10)", {Dyadic::from_int(2), Dyadic::from_int(10)});
    o.check(norm_full(l1) == Dyadic::from_int(-64), "Nm(4+sqrt2+sqrt10) = -64");
    for (const auto& l : d8.lines) o.check(l.pass, l.label + ": " + l.detail);
    for (const auto& l : u4.lines) o.check(l.pass, l.label + ": " + l.detail);
    o.detail << " " << d8.lines.size() << " D8 checks, " << u4.lines.size() << " U4 checks";
  }, 300);

  criterion(4, "printed 2-adic digit expansions", [](Outcome& o) {
    const FixtureSet f = load_fixtures(default_fixture_dir());
    const Report r = verify_digit_expansions(f);
    o.check(r.lines.size() == 9, "nine expansions");
    int flagged = 0, other = 0;
    for (const auto& l : r.lines) {
      o.check(l.pass, l.label + ": " + l.detail);
      flagged += l.detail.find("flagged") != std::string::npos;
      other += l.detail.find("3 mod 4") != std::string::npos;
    }
    o.check(flagged == 2, "two flagged tokens");
    o.detail << " 9 matched, " << flagged << " flagged, " << other << " printed with the root = 3 mod 4";
  }, 60);

  criterion(5, "Hilbert symbol", [](Outcome& o) {
    for (unsigned a = 0; a < 8; ++a) {
      bool nondegenerate = a == 0;
      for (unsigned b = 0; b < 8; ++b) {
        const SquareClass ca(a), cb(b);
        o.check(hilbert(ca, cb) == oracle::hilbert_conic(ca.representative(), cb.representative()), "oracle");
        o.check(hilbert(ca, cb) == hilbert(cb, ca), "symmetry");
        for (unsigned c = 0; c < 8; ++c)
          o.check(hilbert(ca * SquareClass(c), cb) == (hilbert(ca, cb) ^ hilbert(SquareClass(c), cb)), "bilinearity");
        nondegenerate |= hilbert(ca, cb) == 1;
      }
      o.check(nondegenerate, "nondegeneracy");
    }
    o.detail << " 64 pairs";
  }, 60);

  criterion(6, "unipotent group theory", [](Outcome& o) {
    o.check(generate(standard_generators(4)).size() == 64, "|U4| = 64");
    const auto d4 = commutator_decomposition(4);
    o.check(d4.subgroup.size() == 8 && d4.basis.size() == 3, "commutator subgroup");
    for (const auto& x : d4.subgroup) o.check((x * x).is_identity(), "exponent 2");
    for (const auto& x : d4.subgroup)
      for (const auto& y : d4.subgroup) o.check(x * y == y * x, "abelian");
    const auto s4 = standard_generators(4);
    const auto autos4 = automorphisms(4);
    for (const auto& images : autos4) o.check(congruent_mod(images[1], s4[1], d4.subgroup), "E23 fixed mod Phi");
    const auto s3 = standard_generators(3);
    const auto phi3 = commutator_decomposition(3).subgroup;
    const auto autos3 = automorphisms(3);
    for (const auto& images : autos3) {
      const bool same = congruent_mod(images[0], s3[0], phi3) && congruent_mod(images[1], s3[1], phi3);
      const bool swapped = congruent_mod(images[0], s3[1], phi3) && congruent_mod(images[1], s3[0], phi3);
      o.check(same || swapped, "D8 pair swap");
    }
    o.check(ideal_contains_norm(1) && ideal_contains_norm(2), "norm element in every ideal");
    o.detail << " |Aut U4| = " << autos4.size() << ", |Aut D8| = " << autos3.size();
  }, 600);

  criterion(7, "norm kernel and generator orbits", [](Outcome& o) {
    std::size_t total = 0;
    for (const auto& p : enumerate_admissible_pairs()) {
      const auto classes = kernel_norm_classes(p.V.a(), p.V.c());
      o.check(classes.size() == 32, "32 kernel classes for " + to_string(p.b));
      const auto triples = enumerate_triples(p);
      o.check(triples.size() == 4, "4 W for " + to_string(p.b));
      std::set<int> covered;
      for (const auto& t : triples) {
        o.check(t.fingerprint.size() == 8, "orbit of 8");
        covered.insert(t.fingerprint.begin(), t.fingerprint.end());
      }
      o.check(covered.size() == 32, "orbits partition the kernel");
      total += triples.size();
    }
    const std::int64_t formula = count_triples_per_pair({1, true});
    o.check(formula == 4, "2^(3n-1) with n = 1");
    o.detail << " 4 x 32 classes, " << total << " W";
  }, 120);

  criterion(8, "characteristic 2", [](Outcome& o) {
    std::mt19937_64 rng(20240601);
    int bad = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const RatFunc2 f = random_rat(rng, 4), g = random_rat(rng, 3);
      bad += !(ap_normal_form(f + wp(g)) == ap_normal_form(f));
    }
    o.check(bad == 0, "normal form invariance");
    int identity_bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const RatFunc2 a = random_rat(rng, 3), b = random_rat(rng, 3), d = random_rat(rng, 2), x = random_rat(rng, 3);
      try {
        d8_second_generator_char2(ASTowerElement(1, {x, b + wp(d)}, a), b, d);
      } catch (const Error&) {
        ++identity_bad;
      }
    }
    o.check(identity_bad == 0, "D8 identity");
    int built = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const Char2Pair p{random_rat(rng, 3), random_rat(rng, 3), random_rat(rng, 3)};
      if (!is_admissible_char2(p)) continue;
      ++built;
      o.check(verify_u4_relations(make_delta(p)).all(), "U4 relations");
    }
    o.check(built > 0, "some admissible pairs");
    for (int n : {3, 4, 5}) o.check(brute_count_pairs(n) == count_pairs_char2({n}), "pairs n=" + std::to_string(n));
    o.detail << " 500 shifts, 100 identities, " << built << " triples, pairs 28/420/4340";
  }, 120);

  criterion(9, "counting formula consistency", [](Outcome& o) {
    for (int n = 1; n <= 6; ++n)
      for (bool q : {true, false}) {
        const CountingParams p{n, q};
        o.check(count_u4(p) == count_pairs(p) * count_triples_per_pair(p), "U4 n=" + std::to_string(n));
        o.check(count_d8(p) == count_d8_pairs(p) * count_d8_w(p), "D8 n=" + std::to_string(n));
      }
    for (int n = 3; n <= 8; ++n)
      o.check(count_u4_char2({n}) == count_pairs_char2({n}) * count_triples_char2({n}), "char 2 n=" + std::to_string(n));
    o.check(count_d8({2, true}) == 196, "D8 n=2");
    o.detail << " n=1..6 both q, char 2 n=3..8";
  }, 60);

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}
