#include "unipotent/builder2.hpp"

#include <limits>

#include "unipotent/f2space.hpp"

namespace unipotent {

namespace {

ASTowerElement in_E(const Char2Pair& p, const RatFunc2& x) { return ASTowerElement::constant(2, x, p.a, p.c); }

bool zero_class(const ASTowerElement& x) { return x.lies_in(0) && ap_normal_form(x[0]).is_zero(); }

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v < 0 || v > std::numeric_limits<std::int64_t>::max()) throw PreconditionViolation("count exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

Wide p2(int k) {
  if (k < 0 || k > 100) throw PreconditionViolation("exponent out of range");
  return Wide{1} << k;
}

void check_n(int n, int lo) {
  if (n < lo) throw PreconditionViolation("n must be at least " + std::to_string(lo));
  if (n > 20) throw PreconditionViolation("n too large for 64-bit counts");
}

}  // namespace

bool is_admissible_char2(const Char2Pair& pair) { return classes_independent({pair.a, pair.c, pair.b}); }

ASTowerElement char2_A(const ASTowerElement& delta) { return delta + delta.conjugate(2); }
ASTowerElement char2_C(const ASTowerElement& delta) { return delta + delta.conjugate(1); }

RatFunc2 char2_trace(const ASTowerElement& delta) {
  if (delta.level() != 2) throw PreconditionViolation("trace to F needs a level-2 element");
  return trace_down(trace_down(delta))[0];
}

Char2Triple make_delta(const Char2Pair& pair) {
  if (!is_admissible_char2(pair)) throw PreconditionViolation("pair is not admissible");
  const ASTowerElement delta =
      pair.b * (ASTowerElement::theta_a(2, pair.a, pair.c) * ASTowerElement::theta_c(pair.a, pair.c));
  Char2Triple t{pair, delta, RatFunc2()};
  if (!(char2_trace(delta) == pair.b)) throw Error("trace of b theta_a theta_c differs from b");
  if (!verify_u4_relations(t).all()) throw Error("triple relations fail");
  return t;
}

ASTowerElement d8_second_generator_char2(const ASTowerElement& d1, const RatFunc2& b, const RatFunc2& d) {
  if (d1.level() != 1) throw PreconditionViolation("delta1 must lie in F(theta_a)");
  const RatFunc2& a = d1.a();
  const RatFunc2& x = d1[0];
  const RatFunc2& y = d1[1];
  if (!(y == b + wp(d))) throw PreconditionViolation("y - b is not wp(d)");
  const ASTowerElement d2(1, {x + a * b + a * d * d, a}, b);

  const ASTowerElement l1(2, {x, y, RatFunc2(), RatFunc2()}, a, b);
  const ASTowerElement l2(2, {d2[0], RatFunc2(), d2[1], RatFunc2()}, a, b);
  const auto ta = ASTowerElement::theta_a(2, a, b);
  const auto tb = ASTowerElement::theta_c(a, b);
  if (!(l1 + l2 == wp(ta * tb) + wp(d * ta))) throw Error("identity delta1 + delta2 = wp(..) + wp(..) fails");
  return d2;
}

Char2Relations verify_u4_relations(const Char2Triple& t) {
  Char2Relations r;
  const Char2Pair& p = t.pair;
  const ASTowerElement& delta = t.delta;
  const ASTowerElement A = char2_A(delta);
  const ASTowerElement C = char2_C(delta);
  const ASTowerElement shift = in_E(p, p.b + wp(t.d));
  r.trace_class = ap_normal_form(char2_trace(delta) + p.b).is_zero();
  r.sigma_c_delta = delta.conjugate(2) == delta + A && A.lies_in(1);
  r.sigma_a_delta = delta.conjugate(1) == delta + C && C.lies_in(2);
  r.sigma_a_A = zero_class(A.conjugate(1) + A + shift);
  r.sigma_c_C = zero_class(C.conjugate(2) + C + shift);
  r.free_module = is_admissible_char2(p);
  return r;
}

std::vector<ASTowerElement> generator_orbit_char2(const Char2Triple& t) {
  const ASTowerElement A = char2_A(t.delta);
  const ASTowerElement C = char2_C(t.delta);
  const ASTowerElement b = in_E(t.pair, t.pair.b);
  std::vector<ASTowerElement> out;
  for (unsigned m = 0; m < 8; ++m) {
    ASTowerElement g = t.delta;
    if (m & 1) g = g + A;
    if (m & 2) g = g + C;
    if (m & 4) g = g + b;
    out.push_back(g);
  }
  return out;
}

std::int64_t gaussian_binomial2(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Wide num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= p2(n - i) - 1;
    den *= p2(i + 1) - 1;
  }
  return narrow(num / den);
}

std::int64_t count_pairs_char2(const Char2CountingParams& p) {
  check_n(p.n, 1);
  return narrow(Wide{gaussian_binomial2(p.n, 3)} * gaussian_binomial2(3, 2) * 4);
}

std::int64_t brute_count_pairs(int n) {
  if (n < 1 || n > 5) throw PreconditionViolation("brute force supports 1 <= n <= 5");
  std::int64_t count = 0;
  for (const auto& V : F2Subspace::all_of_dim(n, 2))
    for (std::uint32_t b = 0; b < (1u << n); ++b)
      if (V.with(b).dim() == 3) ++count;
  return count;
}

std::int64_t count_triples_char2(const Char2CountingParams& p) {
  check_n(p.n, 3);
  return narrow(p2(3 * p.n - 6));
}

std::int64_t count_u4_char2(const Char2CountingParams& p) {
  check_n(p.n, 3);
  const int n = p.n;
  return narrow((p2(n) - 1) * (p2(n - 1) - 1) * (p2(n - 2) - 1) * p2(3 * n - 4) / 3);
}

}  // namespace unipotent
