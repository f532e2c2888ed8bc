#pragma once

#include <cstdint>
#include <vector>

#include "lstar/tensor.hpp"

namespace lstar {

/// Element of the exterior algebra over an n-dimensional space, stored as
/// 2^n coefficients indexed by generator bitmask (ascending as unsigned
/// integers). The popcount of a mask is its layer; layer k has C(n,k) basis
/// wedge monomials, listing generators in increasing order.
struct FockVec {
  std::size_t generators = 0;  // n
  Tensor coeffs;               // shape (2^n)

  FockVec() = default;
  explicit FockVec(std::size_t n);
  FockVec(std::size_t n, Tensor c);

  static FockVec unit_scalar(std::size_t n);               // the empty wedge, layer 0
  static FockVec monomial(std::size_t n, std::uint64_t mask, double c = 1.0);
  /// Layer-1 injection of a plain vector.
  static FockVec embed(const Tensor& v);

  std::size_t dim() const { return coeffs.size(); }
  double coeff(std::uint64_t mask) const { return coeffs[mask]; }

  FockVec operator+(const FockVec& o) const;
  FockVec scaled(double a) const;
  /// Zero unless every nonzero coefficient sits in one layer; then that layer.
  int homogeneous_layer() const;
};

/// 2^n, the dimension of the exterior algebra over n generators.
std::uint64_t fock_dim(std::size_t n);
/// C(n,k) for each k = 0..n.
std::vector<std::uint64_t> fock_layer_dims(std::size_t n);

/// Sign of merging two disjoint ascending index sequences: parity of the
/// number of pairs (i in a, j in b) with i > j. Zero-overlap is the caller's
/// concern.
int wedge_sign(std::uint64_t a, std::uint64_t b);

/// Bilinear extension of the wedge on monomials: disjoint masks merge with
/// the inversion-parity sign, overlapping masks vanish.
FockVec wedge_product(const FockVec& x, const FockVec& y);

/// Comonad counit: projection onto layer 1, as a plain n-vector.
Tensor fock_eps(const FockVec& x);

/// Group-like comultiplication b -> b (x) b on wedge monomials; returns the
/// (2^n, 2^n) tensor.
Tensor fock_group_delta(const FockVec& x);
/// Comonoid counit forced by the group-like delta: b -> 1 on each monomial.
double fock_group_counit(const FockVec& x);

/// The wedge multiplication as a (2^n, 2^n, 2^n) tensor M[r, s, t]:
/// coefficient of monomial r in (monomial s) ^ (monomial t).
Tensor fock_multiplication_tensor(std::size_t n);

/// Dualized comultiplication: transpose of the wedge multiplication matrix,
/// applied to x; returns the (2^n, 2^n) tensor. Guarded to n <= 3, where the
/// multiplication matrix stays desk-sized.
Tensor fock_dual_codelta(const FockVec& x);

}  // namespace lstar
