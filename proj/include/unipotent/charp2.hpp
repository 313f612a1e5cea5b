#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unipotent/errors.hpp"

namespace unipotent {

/// A polynomial over F2 in t; bit i of the packed words is the coefficient of t^i.
class Poly2 {
 public:
  Poly2() = default;
  static Poly2 monomial(int degree);
  static Poly2 from_bits(std::uint64_t bits);
  static Poly2 one() { return from_bits(1); }
  static Poly2 t() { return from_bits(2); }

  /// -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return words_.empty(); }
  bool is_one() const { return degree() == 0; }
  bool coeff(int i) const;
  void set_coeff(int i, bool v);
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend Poly2 operator+(const Poly2& x, const Poly2& y);
  friend Poly2 operator*(const Poly2& x, const Poly2& y);
  Poly2& operator+=(const Poly2& o) { return *this = *this + o; }
  Poly2& operator*=(const Poly2& o) { return *this = *this * o; }
  /// Quotient and remainder; throws DivisionByZero.
  friend std::pair<Poly2, Poly2> divmod(const Poly2& x, const Poly2& y);
  friend Poly2 operator/(const Poly2& x, const Poly2& y) { return divmod(x, y).first; }
  friend Poly2 operator%(const Poly2& x, const Poly2& y) { return divmod(x, y).second; }
  friend bool operator==(const Poly2&, const Poly2&) = default;
  /// Degree first, then coefficients from the top.
  friend bool operator<(const Poly2& x, const Poly2& y);

  Poly2 pow(std::uint64_t e) const;
  Poly2 powmod(std::uint64_t e, const Poly2& m) const;
  Poly2 square() const;
  Poly2 derivative() const;
  /// Square root of a polynomial with only even-degree terms.
  Poly2 sqrt() const;

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

Poly2 gcd(Poly2 x, Poly2 y);
/// Inverse of x modulo m; throws DivisionByZero if not coprime.
Poly2 invmod(const Poly2& x, const Poly2& m);
bool is_irreducible(const Poly2& p);
/// Irreducible factors with multiplicity, sorted; the zero polynomial is rejected.
std::vector<std::pair<Poly2, int>> factor(const Poly2& f);
/// "t^2+t+1", "t", "1", "0".
std::string render(const Poly2& p);

/// A rational function over F2 in lowest terms.
class RatFunc2 {
 public:
  RatFunc2() : num_(), den_(Poly2::one()) {}
  RatFunc2(Poly2 num);  // NOLINT: polynomials embed
  RatFunc2(Poly2 num, Poly2 den);
  static RatFunc2 constant(int bit) { return RatFunc2(Poly2::from_bits(bit & 1)); }
  static RatFunc2 t() { return RatFunc2(Poly2::t()); }
  /// Parses expressions in t with + - * / ^ and parentheses; throws ParseError.
  static RatFunc2 parse(std::string_view text);

  const Poly2& num() const { return num_; }
  const Poly2& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc2 operator+(const RatFunc2& x, const RatFunc2& y);
  friend RatFunc2 operator-(const RatFunc2& x, const RatFunc2& y) { return x + y; }
  friend RatFunc2 operator*(const RatFunc2& x, const RatFunc2& y);
  friend RatFunc2 operator/(const RatFunc2& x, const RatFunc2& y) { return x * y.inverse(); }
  RatFunc2& operator+=(const RatFunc2& o) { return *this = *this + o; }
  RatFunc2& operator*=(const RatFunc2& o) { return *this = *this * o; }
  RatFunc2 inverse() const;
  friend bool operator==(const RatFunc2&, const RatFunc2&) = default;

 private:
  Poly2 num_;
  Poly2 den_;
};

/// "(t^3+1)/(t^2+t)", "t^2+1", "1/t".
std::string render(const RatFunc2& f);

/// The Artin-Schreier operator f^2 + f.
RatFunc2 wp(const RatFunc2& f);

/// Canonical representative of a class in F/wp(F), F = F2(t): a constant bit,
/// odd-degree monomials, and for each monic irreducible p the digits h/p^k
/// with k odd and deg h < deg p.
struct APClass {
  bool const_bit = false;
  Poly2 poly_part;
  std::map<Poly2, std::vector<std::pair<int, Poly2>>> pole_parts;

  bool is_zero() const { return !const_bit && poly_part.is_zero() && pole_parts.empty(); }
  RatFunc2 representative() const;
  friend bool operator==(const APClass&, const APClass&) = default;
};

APClass ap_normal_form(const RatFunc2& f);
/// "1 + t + 1/t + 1/(t^2+t+1)^3"; "0" for the zero class.
std::string render(const APClass& c);

/// True iff no nonempty subset sums into wp(F). At most four entries.
bool classes_independent(const std::vector<RatFunc2>& classes);

/// Elements of F, F(theta_a) or E = F(theta_a, theta_c) with theta^2 = theta + radicand.
/// Coordinate m multiplies theta_a^(m & 1) theta_c^(m >> 1).
class ASTowerElement {
 public:
  ASTowerElement(int level, std::vector<RatFunc2> coords, RatFunc2 a = {}, RatFunc2 c = {});
  static ASTowerElement constant(int level, const RatFunc2& x, const RatFunc2& a = {}, const RatFunc2& c = {});
  static ASTowerElement theta_a(int level, const RatFunc2& a, const RatFunc2& c = {});
  /// Requires level 2.
  static ASTowerElement theta_c(const RatFunc2& a, const RatFunc2& c);

  int level() const { return level_; }
  const std::vector<RatFunc2>& coords() const { return coords_; }
  const RatFunc2& operator[](std::size_t m) const { return coords_.at(m); }
  const RatFunc2& a() const { return a_; }
  const RatFunc2& c() const { return c_; }
  bool is_zero() const;
  /// Every coordinate outside the masks contained in `sub` vanishes.
  bool lies_in(std::size_t sub) const;

  /// theta_i -> theta_i + 1 for each bit i of `flip`.
  ASTowerElement conjugate(std::size_t flip) const;

  friend ASTowerElement operator+(const ASTowerElement& x, const ASTowerElement& y);
  friend ASTowerElement operator-(const ASTowerElement& x, const ASTowerElement& y) { return x + y; }
  friend ASTowerElement operator*(const ASTowerElement& x, const ASTowerElement& y);
  friend ASTowerElement operator*(const RatFunc2& s, const ASTowerElement& x);
  friend bool operator==(const ASTowerElement& x, const ASTowerElement& y);

 private:
  void require_same_tower(const ASTowerElement& o) const;

  int level_;
  std::vector<RatFunc2> coords_;
  RatFunc2 a_;
  RatFunc2 c_;
};

ASTowerElement wp(const ASTowerElement& x);

/// e + sigma(e) for the top generator: the theta_top coefficient, one level down.
ASTowerElement trace_down(const ASTowerElement& e);

/// "t*θa*θc + 1/t".
std::string render(const ASTowerElement& e);

}  // namespace unipotent
