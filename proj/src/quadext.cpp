#include "unipotent/quadext.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <tuple>

namespace unipotent {
namespace {

bool same_value(const Dyadic& x, const Dyadic& y) {
  const auto qx = x.rational();
  const auto qy = y.rational();
  if (qx && qy) return *qx == *qy;
  return x == y;
}

// Calls f on every tuple in [lo, hi]^N.
template <std::size_t N, typename F>
void for_each_tuple(long long lo, long long hi, F&& f) {
  std::array<long long, N> t;
  t.fill(lo);
  while (true) {
    f(t);
    std::size_t i = 0;
    while (i < N && t[i] == hi) t[i++] = lo;
    if (i == N) return;
    ++t[i];
  }
}

// Calls f on every tuple with max |t_i| == h.
template <std::size_t N, typename F>
void for_each_in_shell(long long h, F&& f) {
  for_each_tuple<N>(-h, h, [&](const std::array<long long, N>& t) {
    long long m = 0;
    for (long long v : t) m = std::max(m, std::llabs(v));
    if (m == h) f(t);
  });
}

std::vector<int> height_schedule(int cap) {
  if (cap < 1) throw PreconditionViolation("search cap must be positive");
  std::vector<int> hs;
  for (int h = std::min(4, cap);; h = std::min(2 * h, cap)) {
    hs.push_back(h);
    if (h == cap) break;
  }
  return hs;
}

// Magnitude of a nonzero exact norm; inexact norms sort last.
long double magnitude(const Dyadic& n) {
  if (auto q = n.rational()) return std::abs(static_cast<long double>(q->first) / q->second);
  return 1e300L;
}

std::string term_coefficient(const Dyadic& c, bool first, bool has_radical, std::string& sign) {
  if (auto q = c.rational()) {
    std::int64_t num = q->first;
    sign = num < 0 ? "-" : (first ? "" : "+");
    num = num < 0 ? -num : num;
    if (q->second == 1) {
      if (has_radical && num == 1) return "";
      return std::to_string(num);
    }
    std::string s = std::to_string(num) + "/" + std::to_string(q->second);
    return has_radical ? "(" + s + ")" : s;
  }
  sign = first ? "" : "+";
  return render(c);
}

std::string radical(const Dyadic& r) {
  const std::string s = render(r);
  if (s.find_first_of("-+/(") != std::string::npos) return "\xE2\x88\x9A(" + s + ")";
  return "\xE2\x88\x9A" + s;
}

}  // namespace

template <std::size_t K>
Multiquad<K>::Multiquad(const Radicands& radicands, const Coords& coords)
    : radicands_(radicands), coords_(coords) {}

template <std::size_t K>
Multiquad<K> Multiquad<K>::constant(const Radicands& radicands, const Dyadic& x) {
  Coords c{};
  c[0] = x;
  return Multiquad(radicands, c);
}

template <std::size_t K>
Multiquad<K> Multiquad<K>::monomial(const Radicands& radicands, std::size_t mask) {
  if (mask >= kDim) throw PreconditionViolation("monomial mask out of range");
  Coords c{};
  c[mask] = Dyadic::from_int(1);
  return Multiquad(radicands, c);
}

template <std::size_t K>
Multiquad<K> Multiquad<K>::conjugate(std::size_t flip) const {
  Multiquad r = *this;
  for (std::size_t m = 0; m < kDim; ++m)
    if (std::popcount(m & flip) % 2 == 1) r.coords_[m] = -r.coords_[m];
  return r;
}

template <std::size_t K>
bool Multiquad<K>::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Dyadic& d) { return d.is_zero(); });
}

template <std::size_t K>
bool Multiquad<K>::lies_in(std::size_t sub) const {
  for (std::size_t m = 0; m < kDim; ++m)
    if ((m & ~sub) != 0 && !coords_[m].is_zero()) return false;
  return true;
}

template <std::size_t K>
Multiquad<K> Multiquad<K>::adjugate() const {
  Multiquad r = constant(radicands_, Dyadic::from_int(1));
  for (std::size_t flip = 1; flip < kDim; ++flip) r = r * conjugate(flip);
  return r;
}

template <std::size_t K>
Multiquad<K> Multiquad<K>::inverse() const {
  const Dyadic n = norm_to_base(*this);
  if (n.is_zero()) {
    if (is_zero()) throw DivisionByZero();
    throw PrecisionExhausted("norm vanishes to the known precision");
  }
  return adjugate().scale(n.inverse());
}

template <std::size_t K>
Multiquad<K> Multiquad<K>::operator-() const {
  Multiquad r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

template <std::size_t K>
void Multiquad<K>::require_same_field(const Multiquad& o) const {
  for (std::size_t i = 0; i < K; ++i)
    if (!same_value(radicands_[i], o.radicands_[i]))
      throw PreconditionViolation("elements of different multiquadratic fields");
}

template <std::size_t K>
Multiquad<K> Multiquad<K>::combine(const Multiquad& o, bool subtract) const {
  require_same_field(o);
  Multiquad r = *this;
  for (std::size_t m = 0; m < kDim; ++m) r.coords_[m] = subtract ? coords_[m] - o.coords_[m] : coords_[m] + o.coords_[m];
  return r;
}

template <std::size_t K>
Multiquad<K> Multiquad<K>::multiply(const Multiquad& o) const {
  require_same_field(o);
  Coords out{};
  for (std::size_t m1 = 0; m1 < kDim; ++m1) {
    if (coords_[m1].is_zero() && coords_[m1].is_exact()) continue;
    for (std::size_t m2 = 0; m2 < kDim; ++m2) {
      if (o.coords_[m2].is_zero() && o.coords_[m2].is_exact()) continue;
      Dyadic t = coords_[m1] * o.coords_[m2];
      const std::size_t common = m1 & m2;
      for (std::size_t i = 0; i < K; ++i)
        if ((common >> i) & 1) t *= radicands_[i];
      out[m1 ^ m2] += t;
    }
  }
  return Multiquad(radicands_, out);
}

template <std::size_t K>
Multiquad<K> Multiquad<K>::scale(const Dyadic& s) const {
  Multiquad r = *this;
  for (auto& c : r.coords_) c *= s;
  return r;
}

QuadElement make_quad(const Dyadic& a, const Dyadic& x, const Dyadic& y) {
  return QuadElement({a}, {x, y});
}

BiquadElement make_biquad(const Dyadic& a, const Dyadic& c, const Dyadic& x0, const Dyadic& x1,
                          const Dyadic& x2, const Dyadic& x3) {
  return BiquadElement({a, c}, {x0, x1, x2, x3});
}

template <std::size_t K>
Multiquad<K> rebase(const Multiquad<K>& x, const typename Multiquad<K>::Radicands& target) {
  constexpr std::size_t dim = Multiquad<K>::kDim;
  std::array<Dyadic, dim> products;
  for (std::size_t m = 0; m < dim; ++m) {
    products[m] = Dyadic::from_int(1);
    for (std::size_t j = 0; j < K; ++j)
      if ((m >> j) & 1) products[m] *= target[j];
  }
  std::vector<Multiquad<K>> images(K, x);
  for (std::size_t i = 0; i < K; ++i) {
    bool found = false;
    for (std::size_t m = 1; m < dim && !found; ++m) {
      const Dyadic q = x.radicands()[i] / products[m];
      if (!is_square(q)) continue;
      images[i] = Multiquad<K>::monomial(target, m) * sqrt_hensel(q);
      found = true;
    }
    if (!found) throw PreconditionViolation("radicand " + render(x.radicands()[i]) + " not in the target field");
  }
  Multiquad<K> out = Multiquad<K>::constant(target, Dyadic());
  for (std::size_t m = 0; m < dim; ++m) {
    Multiquad<K> term = Multiquad<K>::constant(target, x[m]);
    for (std::size_t i = 0; i < K; ++i)
      if ((m >> i) & 1) term = term * images[i];
    out = out + term;
  }
  return out;
}

template <std::size_t K>
std::string render(const Multiquad<K>& x) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t m = 0; m < Multiquad<K>::kDim; ++m) {
    const Dyadic& c = x[m];
    if (c.is_zero() && c.is_exact()) continue;
    std::string sign;
    const std::string coef = term_coefficient(c, first, m != 0, sign);
    if (!first) os << ' ' << (sign.empty() ? "+" : sign) << ' ';
    else os << sign;
    first = false;
    os << coef;
    for (std::size_t i = 0; i < K; ++i)
      if ((m >> i) & 1) os << radical(x.radicands()[i]);
  }
  if (first) os << '0';
  return os.str();
}

template <std::size_t K>
Dyadic norm_to_base(const Multiquad<K>& x) {
  Multiquad<K> y = x;
  for (std::size_t i = 0; i < K; ++i) y = y * y.conjugate(std::size_t{1} << i);
  if (!y.lies_in(0)) throw Error("norm did not land in the base field");
  return y[0];
}

Dyadic norm_quad(const QuadElement& e) {
  return e[0] * e[0] - e.radicands()[0] * e[1] * e[1];
}

Dyadic norm_full(const BiquadElement& e) { return norm_to_base(e); }

QuadElement norm_partial(const BiquadElement& e, Keep keep) {
  const auto& r = e.radicands();
  switch (keep) {
    case Keep::A: {
      const BiquadElement p = e * e.conjugate(2);
      if (!p.lies_in(1)) throw Error("partial norm left Q2(sqrt a)");
      return make_quad(r[0], p[0], p[1]);
    }
    case Keep::C: {
      const BiquadElement p = e * e.conjugate(1);
      if (!p.lies_in(2)) throw Error("partial norm left Q2(sqrt c)");
      return make_quad(r[1], p[0], p[2]);
    }
    case Keep::AC: {
      const BiquadElement p = e * e.conjugate(3);
      if (!(p[1].is_zero() && p[2].is_zero())) throw Error("partial norm left Q2(sqrt ac)");
      return make_quad(r[0] * r[1], p[0], p[3]);
    }
  }
  throw PreconditionViolation("unknown subfield");
}

template <std::size_t K>
MultiquadField<K>::MultiquadField(const typename Element::Radicands& radicands)
    : radicands_(radicands),
      pi_(Element::constant(radicands, Dyadic::from_int(1))),
      pi_inv_(pi_) {
  constexpr std::size_t dim = Element::kDim;
  bool unramified_five = false;
  for (std::size_t m = 1; m < dim; ++m) {
    Dyadic p = Dyadic::from_int(1);
    for (std::size_t i = 0; i < K; ++i)
      if ((m >> i) & 1) p *= radicands_[i];
    const SquareClass cls = square_class(p);
    if (cls.is_trivial()) throw PreconditionViolation("radicand classes are not independent");
    if (cls == SquareClass::from_exponents(0, 0, 1)) unramified_five = true;
  }
  f_ = unramified_five ? 2 : 1;
  e_ = static_cast<int>(dim) / f_;

  bool found = false;
  for (long long den : {1LL, 2LL, 4LL}) {
    for (long long h = 1; h <= 2 * den && !found; ++h) {
      for_each_in_shell<dim>(h, [&](const std::array<long long, dim>& t) {
        if (found) return;
        const Element w = from_ints(t, den);
        if (w.is_zero()) return;
        if (valuation(w) == 1) {
          pi_ = w;
          found = true;
        }
      });
    }
    if (found) break;
  }
  if (!found) throw SearchExhausted("no uniformizer among small-height elements", 8);
  pi_inv_ = pi_.inverse();

  const std::size_t target = ((std::size_t{1} << f_) - 1) << (f_ * e_);
  for (long long den : {1LL, 2LL, 4LL}) {
    for_each_tuple<dim>(0, 4 * den - 1, [&](const std::array<long long, dim>& t) {
      if (units_.size() == target) return;
      const Element w = from_ints(t, den);
      if (w.is_zero() || valuation(w) != 0) return;
      for (const auto& u : units_)
        if (valuation_at_least(w - u, e_ + 1)) return;
      units_.push_back(w);
    });
    if (units_.size() == target) break;
  }
  if (units_.size() != target)
    throw SearchExhausted("incomplete unit residue system (" + std::to_string(units_.size()) + " of " +
                              std::to_string(target) + ")",
                          16);
  for (const auto& u : units_) unit_squares_.push_back(u * u);
}

template <std::size_t K>
typename MultiquadField<K>::Element MultiquadField<K>::from_ints(
    const std::array<long long, Element::kDim>& coords, long long den) const {
  typename Element::Coords c;
  for (std::size_t m = 0; m < Element::kDim; ++m) c[m] = Dyadic::from_rational(coords[m], den);
  return Element(radicands_, c);
}

template <std::size_t K>
int MultiquadField<K>::valuation(const Element& x) const {
  const Dyadic n = norm_to_base(x);
  if (n.is_zero()) {
    if (x.is_zero() && std::all_of(x.coords().begin(), x.coords().end(),
                                   [](const Dyadic& d) { return d.is_exact(); }))
      throw PreconditionViolation("valuation of zero");
    throw PrecisionExhausted("norm vanishes to the known precision");
  }
  if (n.valuation() % f_ != 0) throw Error("norm valuation not divisible by the residue degree");
  return n.valuation() / f_;
}

template <std::size_t K>
bool MultiquadField<K>::valuation_at_least(const Element& x, int k) const {
  const Dyadic n = norm_to_base(x);
  if (n.is_zero()) {
    if (n.absolute_precision() >= f_ * k) return true;
    throw PrecisionExhausted("cannot bound the valuation with the known precision");
  }
  return n.valuation() >= f_ * k;
}

template <std::size_t K>
bool MultiquadField<K>::is_square(const Element& x) const {
  const int v = valuation(x);
  if (v % 2 != 0) return false;
  const int step = 2 * e_;
  const int k = 2 * (v >= 0 ? v / step : -((-v + step - 1) / step));
  typename Element::Coords c = x.coords();
  for (auto& d : c) d = d.shifted(-k);
  Element u(radicands_, c);
  for (int s = v - k * e_; s > 0; --s) u = u * pi_inv_;
  for (const auto& sq : unit_squares_)
    if (valuation_at_least(u - sq, 2 * e_ + 1)) return true;
  return false;
}

template <std::size_t K>
const MultiquadField<K>& field_of(const typename Multiquad<K>::Radicands& radicands) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<MultiquadField<K>>> cache;
  std::string key;
  for (const auto& r : radicands) key += render(r) + ";";
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<MultiquadField<K>>(radicands)).first;
  return *it->second;
}

bool is_square_in_E(const BiquadElement& e) { return is_square_in(e); }

QuadElement solve_norm_quad(SquareClass a, SquareClass b, int cap) {
  if (a.is_trivial()) throw PreconditionViolation("radicand class must be nontrivial");
  if (hilbert(a, b) == 1) throw NotSolvable(to_string(b) + " is not a norm from Q2(sqrt " + to_string(a) + ")");
  const long long r = a.representative();
  for (int h : height_schedule(cap)) {
    std::optional<std::tuple<long double, long long, int, int, long long, long long>> best;
    for_each_tuple<2>(-h, h, [&](const std::array<long long, 2>& t) {
      const long long n = t[0] * t[0] - r * t[1] * t[1];
      if (n == 0 || square_class(Dyadic::from_int(n)) != b) return;
      auto key = std::make_tuple(static_cast<long double>(std::llabs(n)),
                                 std::max(std::llabs(t[0]), std::llabs(t[1])), t[0] < 0, t[1] < 0,
                                 t[0], t[1]);
      if (!best || key < *best) best = key;
    });
    if (best)
      return make_quad(Dyadic::from_int(r), Dyadic::from_int(std::get<4>(*best)),
                       Dyadic::from_int(std::get<5>(*best)));
  }
  throw SearchExhausted("no element of the required norm class", cap);
}

QuadElement d8_second_generator(const QuadElement& d1, SquareClass b, const Dyadic& d) {
  const Dyadic& x = d1[0];
  const Dyadic& y = d1[1];
  const Dyadic a = d1.radicands()[0];
  if (x.is_zero()) throw PreconditionViolation("delta1 must have a nonzero rational part");
  const Dyadic br = b.representative_dyadic();
  if (!(norm_quad(d1) == br * d * d)) throw PreconditionViolation("Nm(delta1) != b d^2");
  const BiquadElement s = make_biquad(a, br, x, y, d, Dyadic());
  const BiquadElement lhs = s * s;
  const BiquadElement rhs = make_biquad(a, br, Dyadic::from_int(2), Dyadic(), Dyadic(), Dyadic()) *
                            make_biquad(a, br, x, y, Dyadic(), Dyadic()) *
                            make_biquad(a, br, x, Dyadic(), d, Dyadic());
  if (!(lhs == rhs)) throw Error("square identity failed for delta2");
  const Dyadic two = Dyadic::from_int(2);
  return make_quad(br, two * x, two * d);
}

BiquadElement solve_norm_biquad(SquareClass a, SquareClass c, SquareClass b, int cap) {
  const SquareClass ac = a * c;
  if (a.is_trivial() || c.is_trivial() || ac.is_trivial())
    throw PreconditionViolation("V must be two-dimensional");
  if (b == SquareClass() || b == a || b == c || b == ac)
    throw PreconditionViolation("b must lie outside V");
  if (hilbert(b, a) || hilbert(b, c)) throw PreconditionViolation("(b, v) != 0 for some v in V");

  const BiquadElement::Radicands rad{a.representative_dyadic(), c.representative_dyadic()};
  const auto& field = field_of<2>(rad);
  for (int h : height_schedule(cap)) {
    for (bool full : {false, true}) {
      std::optional<std::tuple<long double, long long, int, std::array<long long, 4>>> best;
      for_each_tuple<4>(-h, h, [&](const std::array<long long, 4>& t) {
        if (!full && t[3] != 0) return;
        const BiquadElement x = field.from_ints(t);
        const Dyadic n = norm_full(x);
        if (n.is_zero() || square_class(n) != b) return;
        long long height = 0;
        int negatives = 0;
        for (long long v : t) {
          height = std::max(height, std::llabs(v));
          negatives += v < 0;
        }
        auto key = std::make_tuple(magnitude(n), height, negatives, t);
        if (!best || key < *best) best = key;
      });
      if (best) return field.from_ints(std::get<3>(*best));
    }
  }
  throw SearchExhausted("no element of E with the required norm class", cap);
}

template <std::size_t K>
int NormKernel<K>::index_of(const Multiquad<K>& x) const {
  const auto& field = field_of<K>(x.radicands());
  for (std::size_t m = 0; m < span.size(); ++m)
    if (field.is_square(x * inverses[m])) return static_cast<int>(m);
  return -1;
}

template <std::size_t K>
NormKernel<K> norm_kernel(const typename Multiquad<K>::Radicands& radicands, int dim, int cap) {
  const auto& field = field_of<K>(radicands);
  NormKernel<K> kernel;
  kernel.span.push_back(field.constant(Dyadic::from_int(1)));
  kernel.inverses.push_back(kernel.span.back());
  if (dim == 0) return kernel;
  for (long long h = 1; h <= cap; ++h) {
    bool done = false;
    for_each_in_shell<Multiquad<K>::kDim>(h, [&](const std::array<long long, Multiquad<K>::kDim>& t) {
      if (done) return;
      const Multiquad<K> k = field.from_ints(t);
      const Dyadic n = norm_to_base(k);
      if (n.is_zero() || !is_square(n)) return;
      if (kernel.index_of(k) >= 0) return;
      const Multiquad<K> k_inv = k.inverse();
      kernel.basis.push_back(k);
      const std::size_t old = kernel.span.size();
      for (std::size_t m = 0; m < old; ++m) {
        kernel.span.push_back(kernel.span[m] * k);
        kernel.inverses.push_back(kernel.inverses[m] * k_inv);
      }
      if (static_cast<int>(kernel.basis.size()) == dim) done = true;
    });
    if (done) return kernel;
  }
  throw SearchExhausted("norm kernel basis incomplete", cap);
}

std::vector<EClassRep> kernel_norm_classes(SquareClass a, SquareClass c, int cap) {
  if (a.is_trivial() || c.is_trivial() || (a * c).is_trivial())
    throw PreconditionViolation("V must be two-dimensional");
  const BiquadElement::Radicands rad{a.representative_dyadic(), c.representative_dyadic()};
  const auto kernel = norm_kernel<2>(rad, square_class_dim(4) - 1, cap);
  std::vector<EClassRep> out;
  for (std::size_t m = 0; m < kernel.span.size(); ++m)
    out.push_back({kernel.span[m], static_cast<int>(m)});
  return out;
}

int square_class_dim(int degree) {
  if (degree != 1 && degree != 2 && degree != 4)
    throw PreconditionViolation("degree over Q2 must be 1, 2 or 4");
  return degree + 2;
}

template class Multiquad<1>;
template class Multiquad<2>;
template class MultiquadField<1>;
template class MultiquadField<2>;
template struct NormKernel<1>;
template struct NormKernel<2>;
template Multiquad<1> rebase(const Multiquad<1>&, const Multiquad<1>::Radicands&);
template Multiquad<2> rebase(const Multiquad<2>&, const Multiquad<2>::Radicands&);
template std::string render(const Multiquad<1>&);
template std::string render(const Multiquad<2>&);
template Dyadic norm_to_base(const Multiquad<1>&);
template Dyadic norm_to_base(const Multiquad<2>&);
template const MultiquadField<1>& field_of<1>(const Multiquad<1>::Radicands&);
template const MultiquadField<2>& field_of<2>(const Multiquad<2>::Radicands&);
template NormKernel<1> norm_kernel<1>(const Multiquad<1>::Radicands&, int, int);
template NormKernel<2> norm_kernel<2>(const Multiquad<2>::Radicands&, int, int);

}  // namespace unipotent
