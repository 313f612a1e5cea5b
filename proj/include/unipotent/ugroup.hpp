#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "unipotent/errors.hpp"

namespace unipotent {

/// An element of U_n(F2), 2 <= n <= 5: upper unitriangular over F2.
///
/// The strictly upper triangular entries are packed row-major into `bits`:
/// (1,2), (1,3), ..., (1,n), (2,3), ... (1-based indices).
class UnipotentMatrix {
 public:
  static constexpr int kMaxDim = 5;

  UnipotentMatrix() = default;
  explicit UnipotentMatrix(int n, std::uint16_t bits = 0);

  static UnipotentMatrix identity(int n) { return UnipotentMatrix(n); }
  /// E_ij = 1 + e_ij, 1-based, i < j.
  static UnipotentMatrix elementary(int n, int i, int j);

  int dim() const noexcept { return n_; }
  std::uint16_t bits() const noexcept { return bits_; }
  /// Full matrix entry (1-based).
  int entry(int i, int j) const;
  bool is_identity() const noexcept { return bits_ == 0; }

  UnipotentMatrix inverse() const;

  friend UnipotentMatrix operator*(const UnipotentMatrix& a, const UnipotentMatrix& b);
  friend bool operator==(const UnipotentMatrix&, const UnipotentMatrix&) = default;
  friend auto operator<=>(const UnipotentMatrix&, const UnipotentMatrix&) = default;

 private:
  static int bit_index(int n, int i, int j);
  std::array<std::uint8_t, kMaxDim> rows() const;
  static UnipotentMatrix from_rows(int n, const std::array<std::uint8_t, kMaxDim>& rows);

  int n_ = 2;
  std::uint16_t bits_ = 0;
};

std::string to_string(const UnipotentMatrix& m);

/// a^-1 b^-1 a b
UnipotentMatrix commutator(const UnipotentMatrix& a, const UnipotentMatrix& b);

/// Sorted list of the subgroup generated by gens (identity included).
/// Throws PreconditionViolation on mixed dimensions.
std::vector<UnipotentMatrix> generate(const std::vector<UnipotentMatrix>& gens);

/// The standard generators E_{12}, E_{23}, ..., E_{n-1,n}.
std::vector<UnipotentMatrix> standard_generators(int n);

struct CommutatorDecomposition {
  std::vector<UnipotentMatrix> subgroup;  // sorted
  std::vector<UnipotentMatrix> basis;     // F2-basis of the elementary abelian subgroup
};

/// Commutator subgroup of U_n(F2) for n in {3, 4}, with the basis
/// {[E12,E23]} (n = 3) or {[E12,E23], [E23,E34], [[E12,E23],E34]} (n = 4).
/// Throws Error if the subgroup is not elementary abelian with that basis.
CommutatorDecomposition commutator_decomposition(int n);

/// True when x * y^-1 lies in the sorted subgroup h.
bool congruent_mod(const UnipotentMatrix& x, const UnipotentMatrix& y,
                   const std::vector<UnipotentMatrix>& h);

/// Images of the standard generators under every automorphism of U_n(F2),
/// n in {3, 4}. Each candidate tuple is accepted only after checking that
/// the induced map on the whole group is a well-defined bijective homomorphism.
std::vector<std::vector<UnipotentMatrix>> automorphisms(int n);

/// Whether the generator images extend to an automorphism of U_n(F2).
bool extends_to_automorphism(const std::vector<UnipotentMatrix>& images);

/// An element of the group ring F2[G] for G = (Z/2)^rank, rank <= 2.
/// Group elements are bitmasks 0 .. 2^rank - 1 (group law XOR); bit g of
/// `coeffs` is the coefficient of g.
class GroupRingElement {
 public:
  GroupRingElement(int rank, std::uint32_t coeffs);

  int rank() const noexcept { return rank_; }
  int order() const noexcept { return 1 << rank_; }
  std::uint32_t coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_ == 0; }

  /// The norm element sum_{g in G} g.
  static GroupRingElement norm_element(int rank);

  friend GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y);
  friend GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y);
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  int rank_;
  std::uint32_t coeffs_;
};

/// All nonzero left ideals of F2[(Z/2)^rank], found by exhaustive enumeration
/// of subsets of the ring. Each ideal is a bitmask over ring elements.
std::vector<std::vector<GroupRingElement>> nonzero_left_ideals(int rank);

/// True iff every nonzero left ideal of F2[G], |G| = 2^rank in {2, 4},
/// contains the norm element.
bool ideal_contains_norm(int rank);

/// Largest n with 2^(n-1) <= 2^square_class_dim: an elementary abelian
/// quotient of rank n - 1 must fit in the maximal exponent-2 extension.
int max_unipotent_level(int square_class_dim);

}  // namespace unipotent
