#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "unipotent/errors.hpp"

namespace unipotent {

/// A 2-adic number known to finite precision.
///
/// A nonzero value is 2^valuation * unit where the odd unit is known modulo
/// 2^precision (1 <= precision <= 64). A zero value carries the absolute
/// precision to which it is known to vanish, i.e. the value is O(2^v);
/// literal zeros use kExactZero.
///
/// Values built from integers or fractions also remember the exact rational
/// while ring operations keep it inside 64-bit numerator and denominator.
/// Exact values never lose digits to cancellation.
class Dyadic {
 public:
  static constexpr int kMaxPrecision = 64;
  static constexpr int kDefaultPrecision = 64;
  static constexpr int kExactZero = 1 << 28;

  Dyadic() = default;  // exact zero

  static Dyadic zero(int absolute_precision = kExactZero);
  static Dyadic from_int(std::int64_t value, int precision = kDefaultPrecision);
  static Dyadic from_rational(std::int64_t num, std::int64_t den,
                              int precision = kDefaultPrecision);
  /// unit must be odd; it is reduced modulo 2^precision.
  static Dyadic from_unit(int valuation, std::uint64_t unit, int precision);
  /// Parses "7", "-2/14", "+5/3". ASCII minus or U+2212.
  static Dyadic parse(std::string_view text, int precision = kDefaultPrecision);

  bool is_zero() const noexcept { return zero_; }
  /// For zero values this is the absolute precision bound.
  int valuation() const noexcept { return val_; }
  /// Unit modulo 2^precision(); zero for zero values.
  std::uint64_t unit() const noexcept { return unit_; }
  /// Number of known unit digits; 0 for zero values.
  int precision() const noexcept { return zero_ ? 0 : prec_; }
  /// Exponent N such that the value is known modulo 2^N.
  int absolute_precision() const noexcept { return zero_ ? val_ : val_ + prec_; }

  /// Coefficient of 2^i in the expansion (i absolute). Throws if unknown.
  int digit(int i) const;

  /// Unit residue modulo 2^bits; requires bits <= precision().
  std::uint64_t unit_mod(int bits) const;

  Dyadic operator-() const;
  Dyadic inverse() const;
  Dyadic pow(int exponent) const;
  /// Multiplies by 2^k.
  Dyadic shifted(int k) const;
  /// Truncates the known unit digits to at most `precision`.
  Dyadic with_precision(int precision) const;

  friend Dyadic operator+(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator-(const Dyadic& x, const Dyadic& y) { return x + (-y); }
  friend Dyadic operator*(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator/(const Dyadic& x, const Dyadic& y) { return x * y.inverse(); }
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  /// True when the two values agree on every digit known for both.
  friend bool operator==(const Dyadic& x, const Dyadic& y) { return (x - y).is_zero(); }

  bool is_exact() const noexcept { return exact_; }
  /// Exact numerator/denominator (denominator positive) when is_exact().
  std::optional<std::pair<std::int64_t, std::int64_t>> rational() const;

 private:
  static Dyadic exact_from(__int128 num, __int128 den, int precision);

  bool zero_ = true;
  int val_ = kExactZero;
  std::uint64_t unit_ = 0;
  int prec_ = 0;
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& x);

/// Canonical square root: the root whose unit part is 1 mod 4.
/// Throws NotASquare for odd valuation or unit not 1 mod 8, and
/// PrecisionExhausted when fewer than 3 unit digits are known.
Dyadic sqrt_hensel(const Dyadic& x);

/// Membership in (Q2^x)^2: even valuation and unit = 1 mod 8.
bool is_square(const Dyadic& x);

/// Square class in Q2^x/(Q2^x)^2 as a bit vector over the ordered basis
/// ([-1], [2], [5]): bit 0 is the [-1] coordinate, bit 1 is [2], bit 2 is [5].
class SquareClass {
 public:
  constexpr SquareClass() = default;
  constexpr explicit SquareClass(unsigned bits) : bits_(static_cast<std::uint8_t>(bits & 7u)) {}
  /// The class of (-1)^m1 * 2^m2 * 5^m5.
  static constexpr SquareClass from_exponents(int m1, int m2, int m5) {
    return SquareClass(static_cast<unsigned>((m1 & 1) | ((m2 & 1) << 1) | ((m5 & 1) << 2)));
  }

  constexpr unsigned bits() const noexcept { return bits_; }
  constexpr int minus_one() const noexcept { return bits_ & 1; }
  constexpr int two() const noexcept { return (bits_ >> 1) & 1; }
  constexpr int five() const noexcept { return (bits_ >> 2) & 1; }
  constexpr bool is_trivial() const noexcept { return bits_ == 0; }

  /// The representative (-1)^m1 * 2^m2 * 5^m5, one of 1,-1,2,-2,5,-5,10,-10.
  std::int64_t representative() const;
  Dyadic representative_dyadic(int precision = Dyadic::kDefaultPrecision) const;

  friend constexpr SquareClass operator*(SquareClass x, SquareClass y) {
    return SquareClass(x.bits_ ^ y.bits_);
  }
  friend constexpr bool operator==(SquareClass, SquareClass) = default;
  friend constexpr auto operator<=>(SquareClass x, SquareClass y) { return x.bits_ <=> y.bits_; }

 private:
  std::uint8_t bits_ = 0;
};

/// Renders as "[-1]", "[10]", "[1]".
std::string to_string(SquareClass c);
std::ostream& operator<<(std::ostream& os, SquareClass c);

/// Requires at least 3 known unit digits.
SquareClass square_class(const Dyadic& x);

/// Hilbert symbol over Q2 as a bit: 0 when (a,b) splits, 1 otherwise.
int hilbert(SquareClass a, SquareClass b);

/// Digit expansion in the style "1+2^2+2^4+2^5+...", listing set digits at
/// positions valuation .. valuation+ndigits-1.
std::string digit_expansion(const Dyadic& x, int ndigits);

/// Exact rational rendering if available, otherwise "(1+2^3+...+O(2^N))".
std::string render(const Dyadic& x);

}  // namespace unipotent
