#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "unipotent/dyadic.hpp"

namespace unipotent {

/// An element of the multiquadratic extension Q2(sqrt r_0, ..., sqrt r_{K-1}).
///
/// Coordinates are indexed by bitmasks: coordinate m multiplies the monomial
/// prod_{i in m} sqrt(r_i). Multiquad<1> is x + y sqrt(a); Multiquad<2> is
/// x0 + x1 sqrt(a) + x2 sqrt(c) + x3 sqrt(a) sqrt(c).
template <std::size_t K>
class Multiquad {
 public:
  static constexpr std::size_t kDim = std::size_t{1} << K;
  using Radicands = std::array<Dyadic, K>;
  using Coords = std::array<Dyadic, kDim>;

  Multiquad(const Radicands& radicands, const Coords& coords);
  static Multiquad constant(const Radicands& radicands, const Dyadic& x);
  /// The monomial prod_{i in mask} sqrt(r_i).
  static Multiquad monomial(const Radicands& radicands, std::size_t mask);

  const Radicands& radicands() const noexcept { return radicands_; }
  const Coords& coords() const noexcept { return coords_; }
  const Dyadic& operator[](std::size_t mask) const { return coords_.at(mask); }

  /// Negates sqrt(r_i) for every i in `flip`; coordinate m changes sign when
  /// |m & flip| is odd.
  Multiquad conjugate(std::size_t flip) const;
  bool is_zero() const;
  /// True when every coordinate outside the masks contained in `sub` vanishes.
  bool lies_in(std::size_t sub) const;

  /// Product of the conjugates other than the identity.
  Multiquad adjugate() const;
  Multiquad inverse() const;

  Multiquad operator-() const;
  friend Multiquad operator+(const Multiquad& x, const Multiquad& y) { return x.combine(y, false); }
  friend Multiquad operator-(const Multiquad& x, const Multiquad& y) { return x.combine(y, true); }
  friend Multiquad operator*(const Multiquad& x, const Multiquad& y) { return x.multiply(y); }
  friend Multiquad operator*(const Multiquad& x, const Dyadic& s) { return x.scale(s); }
  friend Multiquad operator*(const Dyadic& s, const Multiquad& x) { return x.scale(s); }
  friend Multiquad operator/(const Multiquad& x, const Multiquad& y) { return x * y.inverse(); }
  friend bool operator==(const Multiquad& x, const Multiquad& y) { return (x - y).is_zero(); }

 private:
  void require_same_field(const Multiquad& o) const;
  Multiquad combine(const Multiquad& o, bool subtract) const;
  Multiquad multiply(const Multiquad& o) const;
  Multiquad scale(const Dyadic& s) const;

  Radicands radicands_;
  Coords coords_;
};

using QuadElement = Multiquad<1>;
using BiquadElement = Multiquad<2>;

QuadElement make_quad(const Dyadic& a, const Dyadic& x, const Dyadic& y);
BiquadElement make_biquad(const Dyadic& a, const Dyadic& c, const Dyadic& x0, const Dyadic& x1,
                          const Dyadic& x2, const Dyadic& x3);

/// The same element written over other radicands generating the same field:
/// each sqrt(r_i) maps to t * prod_{j in T} sqrt(r'_j) with t^2 rational.
/// Throws PreconditionViolation if the fields differ.
template <std::size_t K>
Multiquad<K> rebase(const Multiquad<K>& x, const typename Multiquad<K>::Radicands& target);

/// Renders "x0 + x1√a + x2√c + x3√a√c" with exact rationals when available.
template <std::size_t K>
std::string render(const Multiquad<K>& x);

/// Norm down to Q2: the product of all 2^K conjugates.
template <std::size_t K>
Dyadic norm_to_base(const Multiquad<K>& x);

/// x^2 - a y^2.
Dyadic norm_quad(const QuadElement& e);
Dyadic norm_full(const BiquadElement& e);

/// Which quadratic subfield of E = F(√a, √c) the partial norm lands in.
enum class Keep { A, C, AC };

/// e * sigma(e) with sigma the conjugation fixing the kept subfield. For
/// Keep::AC the result is expressed over the radicand a*c.
QuadElement norm_partial(const BiquadElement& e, Keep keep);

/// Local data of a multiquadratic field over Q2 used to decide squares.
template <std::size_t K>
class MultiquadField {
 public:
  using Element = Multiquad<K>;

  /// Throws PreconditionViolation unless the radicand classes are independent.
  explicit MultiquadField(const typename Element::Radicands& radicands);

  const typename Element::Radicands& radicands() const noexcept { return radicands_; }
  int degree() const noexcept { return 1 << K; }
  int residue_degree() const noexcept { return f_; }
  int ramification() const noexcept { return e_; }
  const Element& uniformizer() const noexcept { return pi_; }
  /// Representatives of the units modulo pi^(e+1).
  const std::vector<Element>& unit_representatives() const noexcept { return units_; }

  Element constant(const Dyadic& x) const { return Element::constant(radicands_, x); }
  Element from_ints(const std::array<long long, Element::kDim>& coords, long long den = 1) const;

  /// Normalized valuation v_E.
  int valuation(const Element& x) const;
  /// Whether v_E(x) >= k, also for x known only to some precision.
  bool valuation_at_least(const Element& x, int k) const;
  bool is_square(const Element& x) const;

 private:
  typename Element::Radicands radicands_;
  int f_ = 1;
  int e_ = 1;
  Element pi_;
  Element pi_inv_;
  std::vector<Element> units_;
  std::vector<Element> unit_squares_;
};

/// Shared cached field for the given radicands.
template <std::size_t K>
const MultiquadField<K>& field_of(const typename Multiquad<K>::Radicands& radicands);

template <std::size_t K>
bool is_square_in(const Multiquad<K>& x) {
  return field_of<K>(x.radicands()).is_square(x);
}

/// Membership in (E^x)^2 for E = Q2(√a, √c).
bool is_square_in_E(const BiquadElement& e);

/// Default bound on coordinate heights in searches.
inline constexpr int kDefaultSearchCap = 32;

/// delta in Q2(√a) with [Nm(delta)] = b: the candidate of least |Nm|, then
/// least height, with coordinates up to the current height bound (4, 8, ...,
/// cap). Throws NotSolvable when (a, b) = 1.
QuadElement solve_norm_quad(SquareClass a, SquareClass b, int cap = kDefaultSearchCap);

/// delta2 = 2(x + d√b) for delta1 = x + y√a with Nm(delta1) = b d^2; the
/// identity (x + y√a + d√b)^2 = 2(x + y√a)(x + d√b) is checked in Q2(√a, √b).
QuadElement d8_second_generator(const QuadElement& d1, SquareClass b, const Dyadic& d);

/// delta in Q2(√a, √c) with [Nm(delta)] = b; shape x0 + x1√a + x2√c first,
/// then all four coordinates. Throws SearchExhausted.
BiquadElement solve_norm_biquad(SquareClass a, SquareClass c, SquareClass b,
                                int cap = kDefaultSearchCap);

/// An F2-basis of the kernel of Nm on square classes, with the full span.
template <std::size_t K>
struct NormKernel {
  std::vector<Multiquad<K>> basis;
  std::vector<Multiquad<K>> span;      // span[m] = product of basis[i], i in m
  std::vector<Multiquad<K>> inverses;  // inverses of span

  /// Index m with x / span[m] a square, or -1.
  int index_of(const Multiquad<K>& x) const;
};

/// Grows a kernel basis of the requested dimension from small-height
/// candidates, shell by shell up to `cap`. Throws SearchExhausted.
template <std::size_t K>
NormKernel<K> norm_kernel(const typename Multiquad<K>::Radicands& radicands, int dim,
                          int cap = kDefaultSearchCap);

struct EClassRep {
  BiquadElement element;
  int tag;
};

/// The 32 kernel classes of Nm: E^x/(E^x)^2 -> Q2^x/(Q2^x)^2 for
/// E = Q2(√a, √c), tagged by their coordinates in the kernel basis.
std::vector<EClassRep> kernel_norm_classes(SquareClass a, SquareClass c,
                                           int cap = kDefaultSearchCap);

/// dim of E^x/(E^x)^2 for [E:Q2] = degree.
int square_class_dim(int degree);

}  // namespace unipotent
