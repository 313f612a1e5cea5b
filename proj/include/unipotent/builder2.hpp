#pragma once

#include <cstdint>
#include <vector>

#include "unipotent/charp2.hpp"

namespace unipotent {

/// ([b], V = <[a], [c]>) over F2(t).
struct Char2Pair {
  RatFunc2 b;
  RatFunc2 a;
  RatFunc2 c;
};

/// dim V = 2 and dim <V, [b]> = 3.
bool is_admissible_char2(const Char2Pair& pair);

/// W generated by [delta]_E with Tr_{E/F}(delta) = b + wp(d).
struct Char2Triple {
  Char2Pair pair;
  ASTowerElement delta;
  RatFunc2 d;
};

/// Tr_{E/F(theta_a)}(delta) = delta + sigma_c(delta).
ASTowerElement char2_A(const ASTowerElement& delta);
/// Tr_{E/F(theta_c)}(delta) = delta + sigma_a(delta).
ASTowerElement char2_C(const ASTowerElement& delta);
/// Tr_{E/F}(delta) as an element of F.
RatFunc2 char2_trace(const ASTowerElement& delta);

/// delta = b theta_a theta_c with d = 0; throws PreconditionViolation for an
/// inadmissible pair and Error if the invariants fail.
Char2Triple make_delta(const Char2Pair& pair);

/// delta2 = x + a theta_b + ab + a d^2 over F(theta_b) for delta1 = x + y theta_a
/// with y = b + wp(d); the identity delta1 + delta2 = wp(theta_a theta_b) + wp(d theta_a)
/// is checked in F(theta_a, theta_b).
ASTowerElement d8_second_generator_char2(const ASTowerElement& d1, const RatFunc2& b, const RatFunc2& d);

struct Char2Relations {
  bool trace_class = false;    // [Tr_{E/F}(delta)] = [b]
  bool sigma_c_delta = false;  // sigma_c(delta) = delta + A
  bool sigma_a_delta = false;  // sigma_a(delta) = delta + C
  bool sigma_a_A = false;      // sigma_a(A) = A + b + wp(d), up to wp(F)
  bool sigma_c_C = false;      // sigma_c(C) = C + b + wp(d), up to wp(F)
  bool free_module = false;    // [b]_E != 0, i.e. [b] outside <[a], [c]>
  bool all() const { return trace_class && sigma_c_delta && sigma_a_delta && sigma_a_A && sigma_c_C && free_module; }
};

Char2Relations verify_u4_relations(const Char2Triple& t);

/// delta + eA A + eC C + eb b, index eA + 2 eC + 4 eb.
std::vector<ASTowerElement> generator_orbit_char2(const Char2Triple& t);

/// n = dim F/wp(F).
struct Char2CountingParams {
  int n = 3;
};

/// Gaussian binomial coefficient over F2.
std::int64_t gaussian_binomial2(int n, int k);
std::int64_t count_pairs_char2(const Char2CountingParams& p);
/// Exhaustive count of (V, b) in F2^n, n <= 5.
std::int64_t brute_count_pairs(int n);
/// Requires n >= 3.
std::int64_t count_triples_char2(const Char2CountingParams& p);
std::int64_t count_u4_char2(const Char2CountingParams& p);

}  // namespace unipotent
