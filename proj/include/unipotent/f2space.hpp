#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace unipotent {

/// A subspace of F2^n (n <= 32), vectors as bitmasks, kept in reduced
/// echelon form: each basis vector owns its leading bit, no other basis
/// vector has that bit set, and the basis is sorted by leading bit.
class F2Subspace {
 public:
  F2Subspace() = default;

  static F2Subspace span(const std::vector<std::uint32_t>& vectors) {
    F2Subspace s;
    for (std::uint32_t v : vectors) s = s.with(v);
    return s;
  }

  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<std::uint32_t>& basis() const noexcept { return basis_; }

  /// Reduces v against the basis; zero iff v lies in the span.
  std::uint32_t reduce(std::uint32_t v) const {
    for (auto it = basis_.rbegin(); it != basis_.rend(); ++it)
      if (v & lead(*it)) v ^= *it;
    return v;
  }
  bool contains(std::uint32_t v) const { return reduce(v) == 0; }

  F2Subspace with(std::uint32_t v) const {
    v = reduce(v);
    if (v == 0) return *this;
    F2Subspace s = *this;
    const std::uint32_t l = lead(v);
    for (auto& w : s.basis_)
      if (w & l) w ^= v;
    s.basis_.push_back(v);
    std::sort(s.basis_.begin(), s.basis_.end(), [](std::uint32_t x, std::uint32_t y) { return lead(x) < lead(y); });
    return s;
  }

  /// All 2^dim elements, sorted.
  std::vector<std::uint32_t> elements() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << basis_.size()); ++m) {
      std::uint32_t v = 0;
      for (std::size_t i = 0; i < basis_.size(); ++i)
        if ((m >> i) & 1) v ^= basis_[i];
      out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Every k-dimensional subspace of F2^n, n <= 16.
  static std::vector<F2Subspace> all_of_dim(int n, int k) {
    std::vector<F2Subspace> out;
    std::vector<std::uint32_t> chosen;
    collect(n, k, 1, chosen, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend bool operator==(const F2Subspace&, const F2Subspace&) = default;
  friend auto operator<=>(const F2Subspace&, const F2Subspace&) = default;

 private:
  static std::uint32_t lead(std::uint32_t v) { return std::bit_floor(v); }

  static void collect(int n, int k, std::uint32_t from, std::vector<std::uint32_t>& chosen,
                      std::vector<F2Subspace>& out) {
    const F2Subspace s = span(chosen);
    if (s.dim() == k) {
      out.push_back(s);
      return;
    }
    for (std::uint32_t v = from; v < (1u << n); ++v) {
      if (s.contains(v)) continue;
      chosen.push_back(v);
      collect(n, k, v + 1, chosen, out);
      chosen.pop_back();
    }
  }

  std::vector<std::uint32_t> basis_;
};

}  // namespace unipotent
