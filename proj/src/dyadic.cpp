#include "unipotent/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace unipotent {
namespace {

constexpr std::uint64_t mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

int clamp_abs(long long v) {
  return static_cast<int>(std::min<long long>(v, Dyadic::kExactZero));
}

int check_precision(int precision) {
  if (precision < 1 || precision > Dyadic::kMaxPrecision) {
    throw PreconditionViolation("precision must lie in [1, 64], got " + std::to_string(precision));
  }
  return precision;
}

// Inverse of an odd number modulo 2^64.
std::uint64_t odd_inverse(std::uint64_t u) {
  std::uint64_t inv = u;  // correct modulo 8
  for (int i = 0; i < 5; ++i) inv *= 2 - u * inv;
  return inv;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() + 1 &&
         v <= std::numeric_limits<std::int64_t>::max();
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("not a rational literal: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Dyadic Dyadic::zero(int absolute_precision) {
  Dyadic z;
  z.val_ = std::min(absolute_precision, kExactZero);
  z.exact_ = z.val_ == kExactZero;
  return z;
}

Dyadic Dyadic::exact_from(__int128 num, __int128 den, int precision) {
  if (den == 0) throw DivisionByZero();
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    Dyadic z;
    z.prec_ = precision;
    return z;
  }
  const __int128 g = gcd128(num, den);
  num /= g;
  den /= g;
  int v = 0;
  while ((num & 1) == 0) {
    num >>= 1;
    ++v;
  }
  while ((den & 1) == 0) {
    den >>= 1;
    --v;
  }
  Dyadic x;
  x.zero_ = false;
  x.val_ = v;
  x.prec_ = precision;
  x.unit_ = (static_cast<std::uint64_t>(num) * odd_inverse(static_cast<std::uint64_t>(den))) &
            mask(precision);
  // Keep the rational (with the 2-power folded back in) when it fits.
  __int128 n = num, d = den;
  bool ok = true;
  for (int i = 0; i < v && ok; ++i) ok = fits(n *= 2);
  for (int i = 0; i < -v && ok; ++i) ok = fits(d *= 2);
  x.exact_ = ok && fits(n) && fits(d);
  if (x.exact_) {
    x.num_ = static_cast<std::int64_t>(n);
    x.den_ = static_cast<std::int64_t>(d);
  }
  return x;
}

Dyadic Dyadic::from_int(std::int64_t value, int precision) {
  return exact_from(value, 1, check_precision(precision));
}

Dyadic Dyadic::from_rational(std::int64_t num, std::int64_t den, int precision) {
  return exact_from(num, den, check_precision(precision));
}

Dyadic Dyadic::from_unit(int valuation, std::uint64_t unit, int precision) {
  check_precision(precision);
  if ((unit & 1) == 0) throw PreconditionViolation("unit must be odd");
  Dyadic x;
  x.zero_ = false;
  x.val_ = valuation;
  x.prec_ = precision;
  x.unit_ = unit & mask(precision);
  x.exact_ = false;
  return x;
}

Dyadic Dyadic::parse(std::string_view text, int precision) {
  std::string s(trim(text));
  // U+2212 MINUS SIGN
  for (std::size_t pos; (pos = s.find("\xE2\x88\x92")) != std::string::npos;) {
    s.replace(pos, 3, "-");
  }
  std::string_view sv = s;
  const auto slash = sv.find('/');
  if (slash == std::string_view::npos) return from_int(parse_int(sv, text), precision);
  const std::int64_t num = parse_int(sv.substr(0, slash), text);
  const std::int64_t den = parse_int(sv.substr(slash + 1), text);
  if (den == 0) throw DivisionByZero();
  return from_rational(num, den, precision);
}

std::optional<std::pair<std::int64_t, std::int64_t>> Dyadic::rational() const {
  if (!exact_) return std::nullopt;
  return std::make_pair(num_, den_);
}

int Dyadic::digit(int i) const {
  if (i >= absolute_precision()) {
    throw PrecisionExhausted("digit 2^" + std::to_string(i) + " is beyond the known precision");
  }
  if (zero_ || i < val_) return 0;
  return static_cast<int>((unit_ >> (i - val_)) & 1);
}

std::uint64_t Dyadic::unit_mod(int bits) const {
  if (zero_) throw PrecisionExhausted("unit of a value known only to be O(2^" + std::to_string(val_) + ")");
  if (bits > prec_) {
    throw PrecisionExhausted("need " + std::to_string(bits) + " unit digits, have " +
                             std::to_string(prec_));
  }
  return unit_ & mask(bits);
}

Dyadic Dyadic::operator-() const {
  if (exact_) return exact_from(-static_cast<__int128>(num_), den_, zero_ ? std::max(prec_, 1) : prec_);
  if (zero_) return *this;
  Dyadic r = *this;
  r.unit_ = (~unit_ + 1) & mask(prec_);
  return r;
}

Dyadic Dyadic::inverse() const {
  if (zero_) throw DivisionByZero();
  if (exact_) return exact_from(den_, num_, prec_);
  Dyadic r = *this;
  r.val_ = -val_;
  r.unit_ = odd_inverse(unit_) & mask(prec_);
  return r;
}

Dyadic Dyadic::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Dyadic result = from_int(1, zero_ ? kMaxPrecision : prec_);
  Dyadic base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Dyadic Dyadic::shifted(int k) const {
  if (exact_) {
    if (zero_) return *this;
    __int128 n = num_, d = den_;
    for (int i = 0; i < k; ++i) n *= 2;
    for (int i = 0; i < -k; ++i) d *= 2;
    if (k < 64 && k > -64) return exact_from(n, d, prec_);
  }
  Dyadic r = *this;
  r.exact_ = false;
  r.val_ = zero_ ? clamp_abs(static_cast<long long>(val_) + k) : val_ + k;
  return r;
}

Dyadic Dyadic::with_precision(int precision) const {
  check_precision(precision);
  if (zero_) return *this;
  Dyadic r = *this;
  r.prec_ = std::min(prec_, precision);
  r.unit_ &= mask(r.prec_);
  return r;
}

Dyadic operator+(const Dyadic& x, const Dyadic& y) {
  if (x.exact_ && y.exact_) {
    const int p = std::min(x.zero_ ? Dyadic::kMaxPrecision : x.prec_,
                           y.zero_ ? Dyadic::kMaxPrecision : y.prec_);
    const __int128 n = static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_;
    const __int128 d = static_cast<__int128>(x.den_) * y.den_;
    // Beyond 64-bit rationals this still yields the full-precision 2-adic value.
    return Dyadic::exact_from(n, d, std::max(p, 1));
  }
  if (x.zero_ && y.zero_) return Dyadic::zero(std::min(x.val_, y.val_));
  if (x.zero_ || y.zero_) {
    const Dyadic& z = x.zero_ ? x : y;
    const Dyadic& w = x.zero_ ? y : x;
    if (z.val_ <= w.val_) return Dyadic::zero(z.val_);
    Dyadic r = w;
    if (!z.exact_) {
      r.exact_ = false;
      r.prec_ = std::min(w.prec_, z.val_ - w.val_);
      r.unit_ &= mask(r.prec_);
    }
    return r;
  }
  const Dyadic& lo = x.val_ <= y.val_ ? x : y;
  const Dyadic& hi = x.val_ <= y.val_ ? y : x;
  const int shift = hi.val_ - lo.val_;
  const int abs_prec = std::min(lo.val_ + lo.prec_, hi.val_ + hi.prec_);
  const int rel = abs_prec - lo.val_;
  std::uint64_t s = lo.unit_ + (shift < 64 ? hi.unit_ << shift : 0);
  s &= mask(rel);
  if (s == 0) return Dyadic::zero(abs_prec);
  const int k = std::countr_zero(s);
  Dyadic r;
  r.zero_ = false;
  r.exact_ = false;
  r.val_ = lo.val_ + k;
  r.unit_ = s >> k;
  r.prec_ = rel - k;
  return r;
}

Dyadic operator*(const Dyadic& x, const Dyadic& y) {
  if (x.exact_ && y.exact_) {
    const int p = std::min(x.zero_ ? Dyadic::kMaxPrecision : x.prec_,
                           y.zero_ ? Dyadic::kMaxPrecision : y.prec_);
    if (x.zero_ || y.zero_) {
      Dyadic z;
      z.prec_ = p;
      return z;
    }
    const __int128 n = static_cast<__int128>(x.num_) * y.num_;
    const __int128 d = static_cast<__int128>(x.den_) * y.den_;
    return Dyadic::exact_from(n, d, p);
  }
  if (x.zero_ || y.zero_) {
    const long long v = static_cast<long long>(x.val_) + y.val_;
    return Dyadic::zero(clamp_abs(v));
  }
  Dyadic r;
  r.zero_ = false;
  r.exact_ = false;
  r.val_ = x.val_ + y.val_;
  r.prec_ = std::min(x.prec_, y.prec_);
  r.unit_ = (x.unit_ * y.unit_) & mask(r.prec_);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Dyadic& x) { return os << render(x); }

Dyadic sqrt_hensel(const Dyadic& x) {
  if (x.is_zero()) throw PreconditionViolation("sqrt_hensel of zero");
  if (x.valuation() % 2 != 0) {
    throw NotASquare("odd valuation " + std::to_string(x.valuation()));
  }
  const std::uint64_t u = x.unit_mod(3) == 1 ? x.unit() : 0;
  if (u == 0) throw NotASquare("unit is " + std::to_string(x.unit_mod(3)) + " mod 8");
  if (auto q = x.rational()) {
    // Perfect squares of rationals stay exact.
    auto isqrt = [](std::int64_t v) -> std::optional<std::int64_t> {
      if (v < 0) return std::nullopt;
      auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
      while (r * r > v) --r;
      while ((r + 1) * (r + 1) <= v) ++r;
      return r * r == v ? std::optional(r) : std::nullopt;
    };
    auto n = isqrt(q->first);
    auto d = isqrt(q->second);
    if (n && d) {
      Dyadic r = Dyadic::from_rational(*n, *d, x.precision());
      // Canonical sign: unit = 1 mod 4.
      return r.unit_mod(2) == 1 ? r : -r;
    }
  }
  const int p = x.precision();
  std::uint64_t r = 1;
  for (int k = 2; k <= p - 2; ++k) {
    if (((r * r - u) >> (k + 1)) & 1) r += std::uint64_t{1} << k;
  }
  return Dyadic::from_unit(x.valuation() / 2, r, p - 1);
}

bool is_square(const Dyadic& x) {
  if (x.is_zero()) throw PreconditionViolation("is_square of zero");
  if (x.valuation() % 2 != 0) return false;
  return x.unit_mod(3) == 1;
}

std::int64_t SquareClass::representative() const {
  std::int64_t r = 1;
  if (two()) r *= 2;
  if (five()) r *= 5;
  if (minus_one()) r = -r;
  return r;
}

Dyadic SquareClass::representative_dyadic(int precision) const {
  return Dyadic::from_int(representative(), precision);
}

std::string to_string(SquareClass c) { return "[" + std::to_string(c.representative()) + "]"; }

std::ostream& operator<<(std::ostream& os, SquareClass c) { return os << to_string(c); }

SquareClass square_class(const Dyadic& x) {
  if (x.is_zero()) throw PreconditionViolation("square class of zero");
  const int two = x.valuation() & 1;
  switch (x.unit_mod(3)) {
    case 1: return SquareClass::from_exponents(0, two, 0);
    case 3: return SquareClass::from_exponents(1, two, 1);
    case 5: return SquareClass::from_exponents(0, two, 1);
    default: return SquareClass::from_exponents(1, two, 0);
  }
}

int hilbert(SquareClass a, SquareClass b) {
  // a = 2^alpha u, b = 2^beta v with u = (-1)^a1 5^a5:
  // (a,b) = eps(u) eps(v) + alpha omega(v) + beta omega(u), eps(u) = a1, omega(u) = a5.
  return (a.minus_one() & b.minus_one()) ^ (a.two() & b.five()) ^ (b.two() & a.five());
}

std::string digit_expansion(const Dyadic& x, int ndigits) {
  std::ostringstream os;
  bool first = true;
  const int start = x.is_zero() ? 0 : x.valuation();
  for (int i = start; i < start + ndigits; ++i) {
    if (!x.digit(i)) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << '1';
    } else if (i == 1) {
      os << '2';
    } else {
      os << "2^" << i;
    }
  }
  if (first) os << '0';
  os << "+...";
  return os.str();
}

std::string render(const Dyadic& x) {
  if (auto q = x.rational()) {
    if (q->second == 1) return std::to_string(q->first);
    return std::to_string(q->first) + "/" + std::to_string(q->second);
  }
  if (x.is_zero()) return "O(2^" + std::to_string(x.valuation()) + ")";
  std::string s = digit_expansion(x, x.precision());
  s.resize(s.size() - 3);  // drop "..."
  return "(" + s + "O(2^" + std::to_string(x.absolute_precision()) + "))";
}

}  // namespace unipotent
