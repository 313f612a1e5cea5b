#include "unipotent/ugroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace unipotent {

namespace {

void check_dim(int n) {
  if (n < 2 || n > UnipotentMatrix::kMaxDim)
    throw PreconditionViolation("unipotent dimension must be in [2, 5], got " + std::to_string(n));
}

}  // namespace

UnipotentMatrix::UnipotentMatrix(int n, std::uint16_t bits) : n_(n), bits_(bits) {
  check_dim(n);
  const int count = n * (n - 1) / 2;
  if (count < 16 && (bits >> count) != 0)
    throw PreconditionViolation("bit pattern exceeds the strictly upper triangle");
}

int UnipotentMatrix::bit_index(int n, int i, int j) {
  // rows 1..i-1 contribute (n-1) + (n-2) + ... entries
  int idx = 0;
  for (int r = 1; r < i; ++r) idx += n - r;
  return idx + (j - i - 1);
}

UnipotentMatrix UnipotentMatrix::elementary(int n, int i, int j) {
  check_dim(n);
  if (i < 1 || j > n || i >= j) throw PreconditionViolation("elementary matrix needs 1 <= i < j <= n");
  return UnipotentMatrix(n, static_cast<std::uint16_t>(1u << bit_index(n, i, j)));
}

int UnipotentMatrix::entry(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_) throw PreconditionViolation("matrix index out of range");
  if (i == j) return 1;
  if (i > j) return 0;
  return (bits_ >> bit_index(n_, i, j)) & 1;
}

std::array<std::uint8_t, UnipotentMatrix::kMaxDim> UnipotentMatrix::rows() const {
  std::array<std::uint8_t, kMaxDim> r{};
  for (int i = 1; i <= n_; ++i) {
    std::uint8_t row = static_cast<std::uint8_t>(1u << (i - 1));
    for (int j = i + 1; j <= n_; ++j)
      if (entry(i, j)) row |= static_cast<std::uint8_t>(1u << (j - 1));
    r[i - 1] = row;
  }
  return r;
}

UnipotentMatrix UnipotentMatrix::from_rows(int n, const std::array<std::uint8_t, kMaxDim>& rows) {
  std::uint16_t bits = 0;
  for (int i = 1; i <= n; ++i) {
    if (((rows[i - 1] >> (i - 1)) & 1) == 0 || (rows[i - 1] & ((1u << (i - 1)) - 1)) != 0)
      throw Error("product left the unitriangular group");
    for (int j = i + 1; j <= n; ++j)
      if ((rows[i - 1] >> (j - 1)) & 1) bits |= static_cast<std::uint16_t>(1u << bit_index(n, i, j));
  }
  return UnipotentMatrix(n, bits);
}

UnipotentMatrix operator*(const UnipotentMatrix& a, const UnipotentMatrix& b) {
  if (a.n_ != b.n_) throw PreconditionViolation("dimension mismatch in matrix product");
  const auto ra = a.rows();
  const auto rb = b.rows();
  std::array<std::uint8_t, UnipotentMatrix::kMaxDim> out{};
  for (int i = 0; i < a.n_; ++i)
    for (int j = 0; j < a.n_; ++j)
      if ((ra[i] >> j) & 1) out[i] ^= rb[j];
  return UnipotentMatrix::from_rows(a.n_, out);
}

UnipotentMatrix UnipotentMatrix::inverse() const {
  // x^(2^k) = 1 once 2^k >= n, so x^-1 = x^(2^k - 1)
  UnipotentMatrix result = identity(n_);
  UnipotentMatrix power = *this;
  int k = 1;
  while ((1 << k) < n_) ++k;
  for (int e = 0; e < k; ++e) {
    if (e > 0) power = power * power;
    result = result * power;
  }
  // result = x^(2^k - 1)
  return result;
}

std::string to_string(const UnipotentMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (int i = 1; i <= m.dim(); ++i) {
    if (i > 1) os << ';';
    for (int j = 1; j <= m.dim(); ++j) os << m.entry(i, j);
  }
  os << ']';
  return os.str();
}

UnipotentMatrix commutator(const UnipotentMatrix& a, const UnipotentMatrix& b) {
  return a.inverse() * b.inverse() * a * b;
}

std::vector<UnipotentMatrix> generate(const std::vector<UnipotentMatrix>& gens) {
  if (gens.empty()) throw PreconditionViolation("generate needs at least one generator");
  const int n = gens.front().dim();
  for (const auto& g : gens)
    if (g.dim() != n) throw PreconditionViolation("generators of mixed dimension");
  std::set<UnipotentMatrix> seen{UnipotentMatrix::identity(n)};
  std::deque<UnipotentMatrix> queue{UnipotentMatrix::identity(n)};
  while (!queue.empty()) {
    const UnipotentMatrix x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      const UnipotentMatrix y = x * g;
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<UnipotentMatrix> standard_generators(int n) {
  check_dim(n);
  std::vector<UnipotentMatrix> gens;
  for (int i = 1; i < n; ++i) gens.push_back(UnipotentMatrix::elementary(n, i, i + 1));
  return gens;
}

CommutatorDecomposition commutator_decomposition(int n) {
  if (n != 3 && n != 4) throw PreconditionViolation("commutator decomposition is provided for n = 3, 4");
  const auto group = generate(standard_generators(n));
  std::vector<UnipotentMatrix> comms;
  for (const auto& x : group)
    for (const auto& y : group) comms.push_back(commutator(x, y));
  CommutatorDecomposition out;
  out.subgroup = generate(comms);

  const auto s = standard_generators(n);
  out.basis.push_back(commutator(s[0], s[1]));
  if (n == 4) {
    out.basis.push_back(commutator(s[1], s[2]));
    out.basis.push_back(commutator(commutator(s[0], s[1]), s[2]));
  }

  for (const auto& x : out.subgroup) {
    if (!(x * x).is_identity()) throw Error("commutator subgroup is not of exponent 2");
    for (const auto& y : out.subgroup)
      if (x * y != y * x) throw Error("commutator subgroup is not abelian");
  }
  const std::size_t expected = std::size_t{1} << out.basis.size();
  if (out.subgroup.size() != expected || generate(out.basis) != out.subgroup)
    throw Error("listed commutators do not form a basis of the commutator subgroup");
  return out;
}

bool congruent_mod(const UnipotentMatrix& x, const UnipotentMatrix& y,
                   const std::vector<UnipotentMatrix>& h) {
  return std::binary_search(h.begin(), h.end(), x * y.inverse());
}

bool extends_to_automorphism(const std::vector<UnipotentMatrix>& images) {
  if (images.empty()) return false;
  const int n = images.front().dim();
  const auto gens = standard_generators(n);
  if (images.size() != gens.size()) return false;
  for (const auto& t : images)
    if (t.dim() != n) return false;

  // Define phi along a BFS tree of the Cayley graph, then check every edge.
  std::map<UnipotentMatrix, UnipotentMatrix> phi{{UnipotentMatrix::identity(n), UnipotentMatrix::identity(n)}};
  std::deque<UnipotentMatrix> queue{UnipotentMatrix::identity(n)};
  while (!queue.empty()) {
    const UnipotentMatrix x = queue.front();
    queue.pop_front();
    const UnipotentMatrix fx = phi.at(x);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const UnipotentMatrix y = x * gens[i];
      const UnipotentMatrix fy = fx * images[i];
      auto it = phi.find(y);
      if (it == phi.end()) {
        phi.emplace(y, fy);
        queue.push_back(y);
      } else if (it->second != fy) {
        return false;
      }
    }
  }
  std::set<UnipotentMatrix> image;
  for (const auto& [x, fx] : phi) image.insert(fx);
  return image.size() == phi.size();
}

std::vector<std::vector<UnipotentMatrix>> automorphisms(int n) {
  if (n != 3 && n != 4) throw PreconditionViolation("automorphism search is provided for n = 3, 4");
  const auto group = generate(standard_generators(n));
  std::vector<UnipotentMatrix> involutions;
  for (const auto& x : group)
    if (!x.is_identity() && (x * x).is_identity()) involutions.push_back(x);

  std::vector<std::vector<UnipotentMatrix>> out;
  if (n == 3) {
    for (const auto& t1 : involutions)
      for (const auto& t2 : involutions)
        if (t1 * t2 != t2 * t1 && extends_to_automorphism({t1, t2})) out.push_back({t1, t2});
    return out;
  }
  for (const auto& t1 : involutions)
    for (const auto& t3 : involutions) {
      if (t1 * t3 != t3 * t1) continue;  // E12 and E34 commute
      for (const auto& t2 : involutions) {
        if (t1 * t2 == t2 * t1 || t2 * t3 == t3 * t2) continue;
        if (extends_to_automorphism({t1, t2, t3})) out.push_back({t1, t2, t3});
      }
    }
  return out;
}

GroupRingElement::GroupRingElement(int rank, std::uint32_t coeffs) : rank_(rank), coeffs_(coeffs) {
  if (rank < 0 || rank > 2) throw PreconditionViolation("group ring rank must be 0, 1 or 2");
  if ((coeffs >> (1u << rank)) != 0) throw PreconditionViolation("coefficient outside the group");
}

GroupRingElement GroupRingElement::norm_element(int rank) {
  return GroupRingElement(rank, (1u << (1u << rank)) - 1);
}

GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y) {
  if (x.rank_ != y.rank_) throw PreconditionViolation("group ring mismatch");
  return GroupRingElement(x.rank_, x.coeffs_ ^ y.coeffs_);
}

GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
  if (x.rank_ != y.rank_) throw PreconditionViolation("group ring mismatch");
  std::uint32_t out = 0;
  const int order = x.order();
  for (int g = 0; g < order; ++g)
    if ((x.coeffs_ >> g) & 1)
      for (int h = 0; h < order; ++h)
        if ((y.coeffs_ >> h) & 1) out ^= 1u << (g ^ h);
  return GroupRingElement(x.rank_, out);
}

std::vector<std::vector<GroupRingElement>> nonzero_left_ideals(int rank) {
  if (rank < 1 || rank > 2) throw PreconditionViolation("ideal enumeration needs |G| in {2, 4}");
  const int ring_size = 1 << (1 << rank);  // 4 or 16 elements
  std::vector<GroupRingElement> ring;
  for (int r = 0; r < ring_size; ++r) ring.emplace_back(rank, static_cast<std::uint32_t>(r));

  std::vector<std::vector<GroupRingElement>> out;
  const std::uint64_t subsets = std::uint64_t{1} << ring_size;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    if ((s & 1) == 0) continue;  // must contain 0
    if (s == 1) continue;        // nonzero
    auto in = [&](const GroupRingElement& e) { return (s >> e.coeffs()) & 1; };
    bool ideal = true;
    for (int i = 0; i < ring_size && ideal; ++i) {
      if (!((s >> i) & 1)) continue;
      for (int j = 0; j < ring_size && ideal; ++j) {
        if (((s >> j) & 1) && !in(ring[i] + ring[j])) ideal = false;
        if (!in(ring[j] * ring[i])) ideal = false;
      }
    }
    if (!ideal) continue;
    std::vector<GroupRingElement> members;
    for (int i = 0; i < ring_size; ++i)
      if ((s >> i) & 1) members.push_back(ring[i]);
    out.push_back(std::move(members));
  }
  return out;
}

bool ideal_contains_norm(int rank) {
  const auto norm = GroupRingElement::norm_element(rank);
  for (const auto& ideal : nonzero_left_ideals(rank))
    if (std::find(ideal.begin(), ideal.end(), norm) == ideal.end()) return false;
  return true;
}

int max_unipotent_level(int square_class_dim) {
  if (square_class_dim < 1) throw PreconditionViolation("square class dimension must be positive");
  int n = 1;
  while (n <= square_class_dim) ++n;  // n + 1 still satisfies 2^n <= 2^dim
  return n;
}

}  // namespace unipotent
