#include "unipotent/admiss.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace unipotent {

namespace {

struct PairContext {
  BiquadElement seed;
  NormKernel<2> kernel;
};

const PairContext& context_of(const AdmissiblePair& pair, int cap) {
  static std::mutex mutex;
  static std::map<std::tuple<unsigned, std::vector<std::uint32_t>, int>, PairContext> cache;
  const auto key = std::make_tuple(pair.b.bits(), pair.V.space.basis(), cap);
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const BiquadElement seed = solve_norm_biquad(pair.V.a(), pair.V.c(), pair.b, cap);
  auto kernel = norm_kernel<2>(pair.V.radicands(), square_class_dim(4) - 1, cap);
  return cache.emplace(key, PairContext{seed, std::move(kernel)}).first->second;
}

bool same_radicands(const BiquadElement& x, const BiquadElement::Radicands& r) {
  return x.radicands()[0] == r[0] && x.radicands()[1] == r[1];
}

BiquadElement over(const BiquadElement& x, const BiquadElement::Radicands& r) {
  return same_radicands(x, r) ? x : rebase(x, r);
}

Dyadic recover_d(const AdmissiblePair& pair, const BiquadElement& delta) {
  return sqrt_hensel(norm_full(delta) / pair.b.representative_dyadic());
}

std::vector<int> tags_of(const PairContext& ctx, const std::vector<BiquadElement>& orbit) {
  const BiquadElement seed_inv = ctx.seed.inverse();
  std::vector<int> tags;
  for (const auto& g : orbit) tags.push_back(ctx.kernel.index_of(g * seed_inv));
  std::sort(tags.begin(), tags.end());
  return tags;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

using Wide = __int128;

Wide p2(int k) {
  if (k < 0 || k > 100) throw PreconditionViolation("exponent out of range");
  return Wide{1} << k;
}

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < 0) throw PreconditionViolation("count exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

void check_params(const CountingParams& p) {
  if (p.n < 1) throw PreconditionViolation("n must be at least 1");
  if (p.n > 18) throw PreconditionViolation("n too large for 64-bit counts");
}

}  // namespace

ClassPlane ClassPlane::of(SquareClass v, SquareClass w) {
  ClassPlane p{F2Subspace::span({v.bits(), w.bits()})};
  if (p.space.dim() != 2) throw PreconditionViolation("classes do not span a plane");
  return p;
}

BiquadElement::Radicands ClassPlane::radicands() const {
  return {a().representative_dyadic(), c().representative_dyadic()};
}

bool is_admissible_pair(SquareClass b, const F2Subspace& V) {
  if (V.dim() != 2 || V.with(b.bits()).dim() != 3) return false;
  for (std::uint32_t v : V.elements())
    if (hilbert(b, SquareClass(v))) return false;
  return true;
}

std::vector<AdmissiblePair> enumerate_admissible_pairs() {
  std::vector<AdmissiblePair> out;
  const auto planes = F2Subspace::all_of_dim(3, 2);
  for (unsigned b = 1; b < 8; ++b)
    for (const auto& V : planes)
      if (is_admissible_pair(SquareClass(b), V)) out.push_back({SquareClass(b), ClassPlane{V}});
  return out;
}

BiquadElement triple_A(const BiquadElement& delta) { return delta * delta.conjugate(2); }
BiquadElement triple_C(const BiquadElement& delta) { return delta * delta.conjugate(1); }

TripleRelations verify_triple(const AdmissiblePair& pair, const BiquadElement& delta, const Dyadic& d) {
  TripleRelations r;
  const Dyadic n = norm_full(delta);
  const Dyadic br = pair.b.representative_dyadic();
  r.norm_class = !n.is_zero() && square_class(n) == pair.b && n == br * d * d;
  if (n.is_zero()) return r;
  const BiquadElement A = triple_A(delta);
  const BiquadElement C = triple_C(delta);
  const BiquadElement inv = delta.inverse();
  const BiquadElement sc = delta.conjugate(2);
  const BiquadElement sa = delta.conjugate(1);
  r.sigma_c_delta = sc == delta * A * inv * inv && A.lies_in(1);
  r.sigma_a_delta = sa == delta * C * inv * inv && C.lies_in(2);
  r.sigma_a_A = A.conjugate(1) == A * (br * d * d) / (A * A);
  r.c_over_a = C / A == (sa * inv) * (delta / sc);

  const BiquadElement b = BiquadElement::constant(delta.radicands(), br);
  const std::array<BiquadElement, 4> gens{delta, A, C, b};
  r.free_module = true;
  for (unsigned m = 1; m < 16 && r.free_module; ++m) {
    BiquadElement prod = BiquadElement::constant(delta.radicands(), Dyadic::from_int(1));
    for (unsigned i = 0; i < 4; ++i)
      if ((m >> i) & 1) prod = prod * gens[i];
    if (is_square_in_E(prod)) r.free_module = false;
  }
  return r;
}

std::vector<BiquadElement> generator_orbit(const AdmissiblePair& pair, const BiquadElement& delta) {
  const BiquadElement A = triple_A(delta);
  const BiquadElement C = triple_C(delta);
  const Dyadic br = pair.b.representative_dyadic();
  std::vector<BiquadElement> out;
  for (unsigned m = 0; m < 8; ++m) {
    BiquadElement g = delta;
    if (m & 1) g = g * A;
    if (m & 2) g = g * C;
    if (m & 4) g = g * br;
    out.push_back(g);
  }
  return out;
}

std::vector<BiquadElement> generator_orbit(const AdmissibleTriple& t) { return generator_orbit(t.pair, t.delta); }

std::vector<int> orbit_fingerprint(const AdmissiblePair& pair, const BiquadElement& delta, int cap) {
  const BiquadElement x = over(delta, pair.V.radicands());
  const Dyadic n = norm_full(x);
  if (n.is_zero() || square_class(n) != pair.b) return {};
  return tags_of(context_of(pair, cap), generator_orbit(pair, x));
}

std::vector<AdmissibleTriple> enumerate_triples(const AdmissiblePair& pair, int cap) {
  if (!is_admissible_pair(pair.b, pair.V)) throw PreconditionViolation("pair is not admissible");
  const PairContext& ctx = context_of(pair, cap);
  const std::size_t classes = ctx.kernel.span.size();
  std::vector<bool> seen(classes, false);
  std::vector<AdmissibleTriple> out;
  for (std::size_t m = 0; m < classes; ++m) {
    if (seen[m]) continue;
    const BiquadElement delta = ctx.seed * ctx.kernel.span[m];
    const Dyadic d = recover_d(pair, delta);
    require(verify_triple(pair, delta, d).all(), "triple relations fail for " + render(delta));
    const auto orbit = generator_orbit(pair, delta);
    for (const auto& g : orbit) require(square_class(norm_full(g)) == pair.b, "orbit member leaves the norm class");
    auto tags = tags_of(ctx, orbit);
    require(tags.front() == static_cast<int>(m), "orbit representative is not minimal");
    require(std::adjacent_find(tags.begin(), tags.end()) == tags.end(), "orbit members coincide");
    for (int t : tags) {
      require(t >= 0 && !seen[t], "orbits overlap or leave the kernel");
      seen[t] = true;
    }
    out.push_back({pair, delta, d, std::move(tags)});
  }
  require(out.size() * 8 == classes, "orbits do not partition the kernel");
  return out;
}

bool is_admissible_unordered(SquareClass a, SquareClass b) {
  return !a.is_trivial() && !b.is_trivial() && a != b && hilbert(a, b) == 0;
}

std::vector<UnorderedPair> enumerate_unordered_pairs() {
  std::vector<UnorderedPair> out;
  for (unsigned a = 1; a < 8; ++a)
    for (unsigned b = a + 1; b < 8; ++b)
      if (is_admissible_unordered(SquareClass(a), SquareClass(b))) out.push_back({SquareClass(a), SquareClass(b)});
  return out;
}

std::vector<D8Extension> enumerate_d8(const UnorderedPair& pair, int cap) {
  if (!is_admissible_unordered(pair.a, pair.b)) throw PreconditionViolation("unordered pair is not admissible");
  const Dyadic ar = pair.a.representative_dyadic();
  const Dyadic br = pair.b.representative_dyadic();
  const QuadElement seed = solve_norm_quad(pair.a, pair.b, cap);
  const auto kernel = norm_kernel<1>(seed.radicands(), square_class_dim(2) - 2, cap);
  auto lift = [&](const QuadElement& x) { return make_biquad(ar, br, x[0], x[1], Dyadic(), Dyadic()); };

  std::vector<D8Extension> out;
  std::vector<bool> seen(kernel.span.size(), false);
  for (std::size_t m = 0; m < kernel.span.size(); ++m) {
    if (seen[m]) continue;
    const QuadElement delta = seed * kernel.span[m];
    require(square_class(norm_quad(delta)) == pair.b, "norm class changed");
    const BiquadElement e = lift(delta);
    require(!is_square_in_E(e), "delta is a square in E");
    std::vector<int> tags;
    for (std::size_t k = m; k < kernel.span.size(); ++k)
      if (is_square_in_E(e * lift(seed * kernel.span[k]).inverse())) {
        require(!seen[k], "E-classes overlap");
        seen[k] = true;
        tags.push_back(static_cast<int>(k));
      }
    out.push_back({pair, delta, std::move(tags)});
  }
  for (const auto& w : out) require(w.fingerprint.size() == 2, "E-class does not contain two kernel classes");
  return out;
}

std::vector<SquareClass> enumerate_u2() {
  std::vector<SquareClass> out;
  for (unsigned b = 1; b < 8; ++b) out.push_back(SquareClass(b));
  return out;
}

std::int64_t count_pairs(const CountingParams& p) {
  check_params(p);
  const int n = p.n;
  if (!p.q_is_2) return narrow(4 * (p2(n + 2) - 1) * (p2(n) - 1) * (p2(n - 1) - 1) / 3);
  return narrow(4 * (p2(n + 1) - 1) * (p2(n) - 1) * (p2(n) - 1) / 3);
}

std::int64_t count_triples_per_pair(const CountingParams& p) {
  check_params(p);
  return narrow(p2(3 * p.n - 1));
}

std::int64_t count_u4(const CountingParams& p) {
  check_params(p);
  const int n = p.n;
  if (!p.q_is_2) return narrow((p2(n + 2) - 1) * (p2(n) - 1) * (p2(n - 1) - 1) * p2(3 * n + 1) / 3);
  return narrow((p2(n + 1) - 1) * (p2(n) - 1) * (p2(n) - 1) * p2(3 * n + 1) / 3);
}

std::int64_t count_d8_pairs(const CountingParams& p) {
  check_params(p);
  const int n = p.n;
  if (!p.q_is_2) return narrow((p2(n + 2) - 1) * (p2(n) - 1));
  return narrow((p2(n + 1) - 1) * (p2(n + 1) - 1));
}

std::int64_t count_d8_w(const CountingParams& p) {
  check_params(p);
  return narrow(p2(p.n));
}

std::int64_t count_d8(const CountingParams& p) {
  check_params(p);
  const int n = p.n;
  if (!p.q_is_2) return narrow(p2(n) * (p2(n + 2) - 1) * (p2(n) - 1));
  return narrow(p2(n) * (p2(n + 1) - 1) * (p2(n + 1) - 1));
}

std::int64_t count_u2(const CountingParams& p) {
  check_params(p);
  return narrow(p2(p.n + 2) - 1);
}

}  // namespace unipotent
