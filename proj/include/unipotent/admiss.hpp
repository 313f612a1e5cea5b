#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unipotent/dyadic.hpp"
#include "unipotent/f2space.hpp"
#include "unipotent/quadext.hpp"

namespace unipotent {

/// A two-dimensional subspace of Q2^x/(Q2^x)^2 with its canonical basis.
struct ClassPlane {
  F2Subspace space;

  static ClassPlane of(SquareClass v, SquareClass w);
  SquareClass a() const { return SquareClass(space.basis().at(0)); }
  SquareClass c() const { return SquareClass(space.basis().at(1)); }
  bool contains(SquareClass x) const { return space.contains(x.bits()); }
  /// The radicands (a, c) of E = Q2(√V).
  BiquadElement::Radicands radicands() const;
  friend bool operator==(const ClassPlane&, const ClassPlane&) = default;
};

/// ([b], V) with dim V = 2, dim <V, b> = 3 and (b, v) = 0 on V.
struct AdmissiblePair {
  SquareClass b;
  ClassPlane V;
};

bool is_admissible_pair(SquareClass b, const F2Subspace& V);
inline bool is_admissible_pair(SquareClass b, const ClassPlane& V) { return is_admissible_pair(b, V.space); }

/// All admissible pairs over Q2, ordered by the bits of b.
std::vector<AdmissiblePair> enumerate_admissible_pairs();

/// ([b], V, W) with W generated by [delta], Nm(delta) = b d^2.
struct AdmissibleTriple {
  AdmissiblePair pair;
  BiquadElement delta;
  Dyadic d;
  /// Sorted kernel tags of the eight generators delta A^i C^j b^k relative to
  /// the seed delta of the pair; identifies W independently of delta.
  std::vector<int> fingerprint;
};

/// A = delta sigma_c(delta), lying in Q2(√a).
BiquadElement triple_A(const BiquadElement& delta);
/// C = delta sigma_a(delta), lying in Q2(√c).
BiquadElement triple_C(const BiquadElement& delta);

struct TripleRelations {
  bool norm_class = false;      // [Nm(delta)] = b
  bool sigma_c_delta = false;   // sigma_c(delta) = delta A delta^-2
  bool sigma_a_delta = false;   // sigma_a(delta) = delta C delta^-2
  bool sigma_a_A = false;       // sigma_a(A) = A b d^2 / A^2
  bool c_over_a = false;        // C/A = (sigma_a(delta)/delta)(delta/sigma_c(delta))
  bool free_module = false;     // [delta], [A], [C], [b] independent in E^x/(E^x)^2
  bool all() const { return norm_class && sigma_c_delta && sigma_a_delta && sigma_a_A && c_over_a && free_module; }
};

TripleRelations verify_triple(const AdmissiblePair& pair, const BiquadElement& delta, const Dyadic& d);

/// The eight generators delta A^eA C^eC b^eb, index eA + 2 eC + 4 eb.
std::vector<BiquadElement> generator_orbit(const AdmissibleTriple& t);
std::vector<BiquadElement> generator_orbit(const AdmissiblePair& pair, const BiquadElement& delta);

/// Seeds delta0 by a norm search, multiplies through the 32 kernel classes
/// and groups the products into W-orbits. Throws Error if any orbit or triple
/// invariant fails.
std::vector<AdmissibleTriple> enumerate_triples(const AdmissiblePair& pair, int cap = kDefaultSearchCap);

/// Kernel tags of the orbit of delta relative to the seed of the pair,
/// sorted. Empty if delta does not have norm class [b].
std::vector<int> orbit_fingerprint(const AdmissiblePair& pair, const BiquadElement& delta,
                                   int cap = kDefaultSearchCap);

/// {[a], [b]} with (a, b) = 0 and dim <a, b> = 2; stored with a < b.
struct UnorderedPair {
  SquareClass a;
  SquareClass b;
  friend bool operator==(const UnorderedPair&, const UnorderedPair&) = default;
};

bool is_admissible_unordered(SquareClass a, SquareClass b);
std::vector<UnorderedPair> enumerate_unordered_pairs();

/// One compatible W for an unordered pair: W = <[delta]_E>, delta in Q2(√a).
struct D8Extension {
  UnorderedPair pair;
  QuadElement delta;
  /// Sorted kernel tags (in Q2(√a)) of the members of the E-class.
  std::vector<int> fingerprint;
};

/// The compatible W for the pair, found from a norm seed times the kernel of
/// Nm on Q2(√a) modulo E-squares.
std::vector<D8Extension> enumerate_d8(const UnorderedPair& pair, int cap = kDefaultSearchCap);

/// The seven nontrivial classes.
std::vector<SquareClass> enumerate_u2();

/// n = [F:Q2]; q_is_2 when F contains no primitive 4th root of unity.
struct CountingParams {
  int n = 1;
  bool q_is_2 = true;
};

std::int64_t count_pairs(const CountingParams& p);
std::int64_t count_triples_per_pair(const CountingParams& p);
/// Closed form for U4(F2)-extensions.
std::int64_t count_u4(const CountingParams& p);
std::int64_t count_d8_pairs(const CountingParams& p);
std::int64_t count_d8_w(const CountingParams& p);
/// Closed form for D8-extensions.
std::int64_t count_d8(const CountingParams& p);
std::int64_t count_u2(const CountingParams& p);

}  // namespace unipotent
