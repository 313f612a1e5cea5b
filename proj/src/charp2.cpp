#include "unipotent/charp2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <random>

namespace unipotent {

namespace {

constexpr int kWord = 64;

// Sum of x^(2^j) for j < d, modulo m.
Poly2 trace_poly(const Poly2& x, int d, const Poly2& m) {
  Poly2 acc = x % m;
  Poly2 cur = acc;
  for (int j = 1; j < d; ++j) {
    cur = cur.square() % m;
    acc += cur;
  }
  return acc;
}

// Squarefree parts: f = prod g_i^i.
std::vector<std::pair<Poly2, int>> squarefree(const Poly2& f) {
  std::vector<std::pair<Poly2, int>> out;
  if (f.degree() <= 0) return out;
  const Poly2 d = f.derivative();
  if (d.is_zero()) {
    for (auto [g, e] : squarefree(f.sqrt())) out.push_back({g, 2 * e});
    return out;
  }
  Poly2 c = gcd(f, d);
  Poly2 w = f / c;
  int i = 1;
  while (!w.is_one()) {
    const Poly2 y = gcd(w, c);
    const Poly2 z = w / y;
    if (!z.is_one()) out.push_back({z, i});
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one())
    for (auto [g, e] : squarefree(c.sqrt())) out.push_back({g, 2 * e});
  return out;
}

void split_equal_degree(const Poly2& f, int d, std::mt19937_64& rng, std::vector<Poly2>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  while (true) {
    Poly2 r;
    for (int i = 0; i < f.degree(); ++i) r.set_coeff(i, rng() & 1);
    const Poly2 g = gcd(trace_poly(r, d, f), f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      split_equal_degree(g, d, rng, out);
      split_equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

// Irreducible factors of a squarefree polynomial.
std::vector<Poly2> factor_squarefree(Poly2 f) {
  std::vector<Poly2> out;
  std::mt19937_64 rng(0x5eed);
  Poly2 h = Poly2::t();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = h.square() % f;
    const Poly2 g = gcd(h + Poly2::t(), f);
    if (!g.is_one()) {
      split_equal_degree(g, d, rng, out);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back(f);
  return out;
}

std::string render_factor(const Poly2& p) {
  const std::string s = render(p);
  return p.words().size() == 1 && std::popcount(p.words()[0]) == 1 ? s : "(" + s + ")";
}

// p-adic digits of num / p^e, deg num < e deg p: digit k is the coefficient of 1/p^k.
std::map<int, Poly2> pole_digits(Poly2 num, const Poly2& p, int e) {
  std::map<int, Poly2> digits;
  for (int k = e; k >= 1 && !num.is_zero(); --k) {
    auto [q, r] = divmod(num, p);
    if (!r.is_zero()) digits[k] = r;
    num = q;
  }
  return digits;
}

class RatParser {
 public:
  explicit RatParser(std::string_view s) : s_(s) {}

  RatFunc2 run() {
    RatFunc2 v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_factor() {
    skip();
    return pos_ < s_.size() && (s_[pos_] == 't' || s_[pos_] == '(' || std::isdigit(static_cast<unsigned char>(s_[pos_])));
  }
  RatFunc2 expr() {
    RatFunc2 v = term();
    while (eat('+') || eat('-')) v += term();
    return v;
  }
  RatFunc2 term() {
    RatFunc2 v = power();
    while (true) {
      if (eat('*')) {
        v *= power();
      } else if (eat('/')) {
        const RatFunc2 d = power();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else if (at_factor()) {
        v *= power();
      } else {
        return v;
      }
    }
  }
  RatFunc2 power() {
    RatFunc2 base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    RatFunc2 out = RatFunc2::constant(1);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
  }
  RatFunc2 atom() {
    skip();
    if (eat('(')) {
      RatFunc2 v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (eat('t')) return RatFunc2::t();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected t, a digit or '('");
    return RatFunc2::constant(s_[pos_ - 1] - '0');
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly2 Poly2::monomial(int degree) {
  Poly2 p;
  p.set_coeff(degree, true);
  return p;
}

Poly2 Poly2::from_bits(std::uint64_t bits) {
  Poly2 p;
  p.words_.push_back(bits);
  p.trim();
  return p;
}

void Poly2::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

int Poly2::degree() const {
  if (words_.empty()) return -1;
  return static_cast<int>(words_.size() - 1) * kWord + std::bit_width(words_.back()) - 1;
}

bool Poly2::coeff(int i) const {
  if (i < 0) return false;
  const std::size_t w = static_cast<std::size_t>(i / kWord);
  return w < words_.size() && ((words_[w] >> (i % kWord)) & 1);
}

void Poly2::set_coeff(int i, bool v) {
  const std::size_t w = static_cast<std::size_t>(i / kWord);
  if (w >= words_.size()) {
    if (!v) return;
    words_.resize(w + 1, 0);
  }
  const std::uint64_t bit = std::uint64_t{1} << (i % kWord);
  words_[w] = v ? (words_[w] | bit) : (words_[w] & ~bit);
  trim();
}

Poly2 operator+(const Poly2& x, const Poly2& y) {
  Poly2 r = x.words_.size() >= y.words_.size() ? x : y;
  const Poly2& o = x.words_.size() >= y.words_.size() ? y : x;
  for (std::size_t i = 0; i < o.words_.size(); ++i) r.words_[i] ^= o.words_[i];
  r.trim();
  return r;
}

Poly2 operator*(const Poly2& x, const Poly2& y) {
  if (x.is_zero() || y.is_zero()) return {};
  Poly2 r;
  r.words_.assign(x.words_.size() + y.words_.size(), 0);
  for (std::size_t i = 0; i < x.words_.size(); ++i) {
    const std::uint64_t a = x.words_[i];
    for (int b = 0; b < kWord; ++b) {
      if (!((a >> b) & 1)) continue;
      for (std::size_t j = 0; j < y.words_.size(); ++j) {
        const std::uint64_t w = y.words_[j];
        r.words_[i + j] ^= w << b;
        if (b) r.words_[i + j + 1] ^= w >> (kWord - b);
      }
    }
  }
  r.trim();
  return r;
}

std::pair<Poly2, Poly2> divmod(const Poly2& x, const Poly2& y) {
  if (y.is_zero()) throw DivisionByZero();
  const int dy = y.degree();
  Poly2 q;
  Poly2 r = x;
  while (r.degree() >= dy) {
    const int shift = r.degree() - dy;
    q.set_coeff(shift, true);
    r += y * Poly2::monomial(shift);
  }
  return {q, r};
}

bool operator<(const Poly2& x, const Poly2& y) {
  if (x.degree() != y.degree()) return x.degree() < y.degree();
  for (std::size_t i = x.words_.size(); i-- > 0;)
    if (x.words_[i] != y.words_[i]) return x.words_[i] < y.words_[i];
  return false;
}

Poly2 Poly2::pow(std::uint64_t e) const {
  Poly2 r = one(), b = *this;
  for (; e; e >>= 1, b = b.square())
    if (e & 1) r *= b;
  return r;
}

Poly2 Poly2::powmod(std::uint64_t e, const Poly2& m) const {
  Poly2 r = one() % m, b = *this % m;
  for (; e; e >>= 1, b = b.square() % m)
    if (e & 1) r = (r * b) % m;
  return r;
}

Poly2 Poly2::square() const {
  Poly2 r;
  for (int i = 0; i <= degree(); ++i)
    if (coeff(i)) r.set_coeff(2 * i, true);
  return r;
}

Poly2 Poly2::derivative() const {
  Poly2 r;
  for (int i = 1; i <= degree(); i += 2)
    if (coeff(i)) r.set_coeff(i - 1, true);
  return r;
}

Poly2 Poly2::sqrt() const {
  Poly2 r;
  for (int i = 0; i <= degree(); ++i) {
    if (!coeff(i)) continue;
    if (i % 2) throw PreconditionViolation("polynomial is not a square");
    r.set_coeff(i / 2, true);
  }
  return r;
}

Poly2 gcd(Poly2 x, Poly2 y) {
  while (!y.is_zero()) {
    Poly2 r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

Poly2 invmod(const Poly2& x, const Poly2& m) {
  Poly2 r0 = m, r1 = x % m, s0, s1 = Poly2::one();
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly2 s = s0 + q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (!r0.is_one()) throw DivisionByZero();
  return s0 % m;
}

bool is_irreducible(const Poly2& p) {
  const auto f = factor(p);
  return f.size() == 1 && f[0].second == 1;
}

std::vector<std::pair<Poly2, int>> factor(const Poly2& f) {
  if (f.is_zero()) throw PreconditionViolation("cannot factor zero");
  std::vector<std::pair<Poly2, int>> out;
  for (const auto& [g, e] : squarefree(f))
    for (const Poly2& p : factor_squarefree(g)) out.push_back({p, e});
  std::sort(out.begin(), out.end());
  std::vector<std::pair<Poly2, int>> merged;
  for (const auto& pe : out) {
    if (!merged.empty() && merged.back().first == pe.first)
      merged.back().second += pe.second;
    else
      merged.push_back(pe);
  }
  return merged;
}

std::string render(const Poly2& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    if (!p.coeff(i)) continue;
    if (!out.empty()) out += "+";
    out += i == 0 ? "1" : i == 1 ? "t" : "t^" + std::to_string(i);
  }
  return out;
}

RatFunc2::RatFunc2(Poly2 num) : num_(std::move(num)), den_(Poly2::one()) {}

RatFunc2::RatFunc2(Poly2 num, Poly2 den) {
  if (den.is_zero()) throw DivisionByZero();
  const Poly2 g = gcd(num, den);
  num_ = num / g;
  den_ = num_.is_zero() ? Poly2::one() : den / g;
}

RatFunc2 RatFunc2::parse(std::string_view text) { return RatParser(text).run(); }

RatFunc2 operator+(const RatFunc2& x, const RatFunc2& y) {
  if (x.den_ == y.den_) return RatFunc2(x.num_ + y.num_, x.den_);
  return RatFunc2(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

RatFunc2 operator*(const RatFunc2& x, const RatFunc2& y) {
  return RatFunc2(x.num_ * y.num_, x.den_ * y.den_);
}

RatFunc2 RatFunc2::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return RatFunc2(den_, num_);
}

std::string render(const RatFunc2& f) {
  if (f.den().is_one()) return render(f.num());
  const std::string n = render(f.num());
  const bool simple_num = f.num().degree() <= 0 || render_factor(f.num())[0] != '(';
  return (simple_num ? n : "(" + n + ")") + "/" + render_factor(f.den());
}

RatFunc2 wp(const RatFunc2& f) { return f * f + f; }

APClass ap_normal_form(const RatFunc2& f) {
  APClass out;
  auto [poly, rem] = divmod(f.num(), f.den());

  // t^(2m) = t^m + wp(t^m)
  for (int i = poly.degree(); i >= 2; --i)
    if (i % 2 == 0 && poly.coeff(i)) {
      poly.set_coeff(i, false);
      poly.set_coeff(i / 2, !poly.coeff(i / 2));
    }
  out.const_bit = poly.coeff(0);
  poly.set_coeff(0, false);
  out.poly_part = poly;

  if (rem.is_zero()) return out;
  // partial fractions over the factorization of the denominator
  const auto factors = factor(f.den());
  for (const auto& [p, e] : factors) {
    const Poly2 pe = p.pow(e);
    const Poly2 rest = f.den() / pe;
    const Poly2 num = (rem * invmod(rest, pe)) % pe;
    auto digits = pole_digits(num, p, e);
    const int d = p.degree();
    // h/p^(2m) = wp(s/p^m) + q/p^(2m-1) + s/p^m with s^2 = q p + h
    for (int k = e; k >= 2; --k) {
      auto it = digits.find(k);
      if (k % 2 || it == digits.end()) continue;
      const Poly2 h = it->second;
      digits.erase(it);
      Poly2 s = h;
      for (int j = 1; j < d; ++j) s = s.square() % p;
      const Poly2 q = s.square() / p;
      for (auto [order, term] : {std::pair{k - 1, q}, std::pair{k / 2, s}}) {
        Poly2 v = digits[order] + term;
        if (v.is_zero())
          digits.erase(order);
        else
          digits[order] = v;
      }
    }
    std::vector<std::pair<int, Poly2>> terms(digits.begin(), digits.end());
    if (!terms.empty()) out.pole_parts.emplace(p, std::move(terms));
  }
  return out;
}

RatFunc2 APClass::representative() const {
  RatFunc2 r(poly_part + Poly2::from_bits(const_bit ? 1 : 0));
  for (const auto& [p, terms] : pole_parts)
    for (const auto& [k, h] : terms) r += RatFunc2(h, p.pow(static_cast<std::uint64_t>(k)));
  return r;
}

std::string render(const APClass& c) {
  std::vector<std::string> terms;
  if (c.const_bit) terms.push_back("1");
  for (int i = 1; i <= c.poly_part.degree(); ++i)
    if (c.poly_part.coeff(i)) terms.push_back(i == 1 ? "t" : "t^" + std::to_string(i));
  for (const auto& [p, parts] : c.pole_parts)
    for (const auto& [k, h] : parts) {
      const std::string hs = render(h);
      std::string s = (h.degree() <= 0 || render_factor(h)[0] != '(' ? hs : "(" + hs + ")") + "/" + render_factor(p);
      if (k > 1) s += "^" + std::to_string(k);
      terms.push_back(s);
    }
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& t : terms) out += (out.empty() ? "" : " + ") + t;
  return out;
}

bool classes_independent(const std::vector<RatFunc2>& classes) {
  if (classes.size() > 4) throw PreconditionViolation("at most four classes");
  for (unsigned m = 1; m < (1u << classes.size()); ++m) {
    RatFunc2 sum;
    for (std::size_t i = 0; i < classes.size(); ++i)
      if ((m >> i) & 1) sum += classes[i];
    if (ap_normal_form(sum).is_zero()) return false;
  }
  return true;
}

ASTowerElement::ASTowerElement(int level, std::vector<RatFunc2> coords, RatFunc2 a, RatFunc2 c)
    : level_(level), coords_(std::move(coords)), a_(std::move(a)), c_(std::move(c)) {
  if (level < 0 || level > 2) throw PreconditionViolation("tower level must be 0, 1 or 2");
  if (coords_.size() != (std::size_t{1} << level)) throw PreconditionViolation("wrong number of coordinates");
  if (level < 2) c_ = RatFunc2();
  if (level < 1) a_ = RatFunc2();
}

ASTowerElement ASTowerElement::constant(int level, const RatFunc2& x, const RatFunc2& a, const RatFunc2& c) {
  std::vector<RatFunc2> coords(std::size_t{1} << level);
  coords[0] = x;
  return ASTowerElement(level, std::move(coords), a, c);
}

ASTowerElement ASTowerElement::theta_a(int level, const RatFunc2& a, const RatFunc2& c) {
  if (level < 1) throw PreconditionViolation("theta_a needs level 1 or 2");
  std::vector<RatFunc2> coords(std::size_t{1} << level);
  coords[1] = RatFunc2::constant(1);
  return ASTowerElement(level, std::move(coords), a, c);
}

ASTowerElement ASTowerElement::theta_c(const RatFunc2& a, const RatFunc2& c) {
  std::vector<RatFunc2> coords(4);
  coords[2] = RatFunc2::constant(1);
  return ASTowerElement(2, std::move(coords), a, c);
}

bool ASTowerElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const RatFunc2& x) { return x.is_zero(); });
}

bool ASTowerElement::lies_in(std::size_t sub) const {
  for (std::size_t m = 0; m < coords_.size(); ++m)
    if ((m & ~sub) && !coords_[m].is_zero()) return false;
  return true;
}

ASTowerElement ASTowerElement::conjugate(std::size_t flip) const {
  ASTowerElement r = *this;
  for (std::size_t bit = 1; bit < coords_.size(); bit <<= 1) {
    if (!(flip & bit)) continue;
    for (std::size_t m = 0; m < r.coords_.size(); ++m)
      if (m & bit) r.coords_[m & ~bit] += r.coords_[m];
  }
  return r;
}

void ASTowerElement::require_same_tower(const ASTowerElement& o) const {
  if (level_ != o.level_ || !(a_ == o.a_) || !(c_ == o.c_))
    throw PreconditionViolation("tower elements live in different fields");
}

ASTowerElement operator+(const ASTowerElement& x, const ASTowerElement& y) {
  x.require_same_tower(y);
  ASTowerElement r = x;
  for (std::size_t m = 0; m < r.coords_.size(); ++m) r.coords_[m] += y.coords_[m];
  return r;
}

namespace {

// (x0 + x1 θ)(y0 + y1 θ) = (x0 y0 + r x1 y1) + (x0 y1 + x1 y0 + x1 y1) θ, recursively on the top θ.
std::vector<RatFunc2> tower_mul(const std::vector<RatFunc2>& x, const std::vector<RatFunc2>& y,
                                const std::vector<RatFunc2>& radicands) {
  if (x.size() == 1) return {x[0] * y[0]};
  const std::size_t h = x.size() / 2;
  const std::vector<RatFunc2> x0(x.begin(), x.begin() + h), x1(x.begin() + h, x.end());
  const std::vector<RatFunc2> y0(y.begin(), y.begin() + h), y1(y.begin() + h, y.end());
  const std::vector<RatFunc2> lower(radicands.begin(), radicands.end() - 1);
  const RatFunc2& r = radicands.back();
  const auto p00 = tower_mul(x0, y0, lower);
  const auto p11 = tower_mul(x1, y1, lower);
  const auto p01 = tower_mul(x0, y1, lower);
  const auto p10 = tower_mul(x1, y0, lower);
  std::vector<RatFunc2> out(x.size());
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = p00[i] + r * p11[i];
    out[h + i] = p01[i] + p10[i] + p11[i];
  }
  return out;
}

}  // namespace

ASTowerElement operator*(const ASTowerElement& x, const ASTowerElement& y) {
  x.require_same_tower(y);
  std::vector<RatFunc2> radicands;
  if (x.level_ >= 1) radicands.push_back(x.a_);
  if (x.level_ >= 2) radicands.push_back(x.c_);
  return ASTowerElement(x.level_, tower_mul(x.coords_, y.coords_, radicands), x.a_, x.c_);
}

ASTowerElement operator*(const RatFunc2& s, const ASTowerElement& x) {
  ASTowerElement r = x;
  for (auto& v : r.coords_) v *= s;
  return r;
}

bool operator==(const ASTowerElement& x, const ASTowerElement& y) {
  return x.level_ == y.level_ && x.a_ == y.a_ && x.c_ == y.c_ && x.coords_ == y.coords_;
}

ASTowerElement wp(const ASTowerElement& x) { return x * x + x; }

ASTowerElement trace_down(const ASTowerElement& e) {
  if (e.level() < 1) throw PreconditionViolation("trace needs level 1 or 2");
  const std::size_t h = e.coords().size() / 2;
  std::vector<RatFunc2> coords(e.coords().begin() + static_cast<std::ptrdiff_t>(h), e.coords().end());
  return ASTowerElement(e.level() - 1, std::move(coords), e.a(), e.c());
}

std::string render(const ASTowerElement& e) {
  static const char* const kTheta[4] = {"", "θa", "θc", "θa*θc"};
  std::string out;
  for (std::size_t m = 0; m < e.coords().size(); ++m) {
    const RatFunc2& x = e[m];
    if (x.is_zero()) continue;
    std::string term;
    if (m == 0) {
      term = render(x);
    } else if (x == RatFunc2::constant(1)) {
      term = kTheta[m];
    } else {
      const std::string s = render(x);
      const bool wrap = s.find('+') != std::string::npos || s.find('/') != std::string::npos;
      term = (wrap ? "(" + s + ")" : s) + "*" + kTheta[m];
    }
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace unipotent
