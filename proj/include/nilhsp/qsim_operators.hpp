#ifndef NILHSP_QSIM_OPERATORS_HPP
#define NILHSP_QSIM_OPERATORS_HPP

// Label coordinates on an elementary abelian subgroup L = Z_p^n, the
// operators P_y |x> = |L|^(-1/2) sum_z w^(y,z) |xz>, and the exhaustive
// zero-sum selector used by the main conversion.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nilhsp/group.hpp"
#include "nilhsp/qsim_state.hpp"
#include "nilhsp/zpvec.hpp"

namespace nilhsp {

/// Fixed basis b_1..b_n of an elementary abelian subgroup, chosen greedily by
/// least id. Label y = sum_i c_i p^(n-1-i) stands for b_1^c_1 ... b_n^c_n.
class ElementaryAbelianBasis {
 public:
  explicit ElementaryAbelianBasis(const Subgroup& l);

  const Subgroup& subgroup() const noexcept { return l_; }
  PrimeModulus modulus() const noexcept { return p_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Elem>& basis() const noexcept { return basis_; }

  Elem element(std::size_t label) const { return elements_.at(label); }
  /// Throws std::invalid_argument for elements outside L.
  std::size_t label(Elem x) const;
  std::vector<Residue> coords(std::size_t label) const;
  /// sum_i y_i z_i mod p.
  std::uint32_t pairing(std::size_t y, std::size_t z) const;
  /// Label of the coordinatewise difference y - z.
  std::size_t difference(std::size_t y, std::size_t z) const;
  /// exp(2 pi i k / p).
  Complex root(std::uint32_t k) const;

 private:
  Subgroup l_;
  PrimeModulus p_;
  std::vector<Elem> basis_;
  std::vector<Elem> elements_;
  std::vector<std::size_t> label_of_;  // parent id -> label, size() when outside
  std::vector<Complex> roots_;
};

/// Dense |G| x |G| matrix of P_y on the parent group.
ComplexMatrix p_operator(const ElementaryAbelianBasis& basis, std::size_t y);
/// V = |L|^(-1/2) sum_y P_y (x) |y>, rows indexed (x, y) with y fastest.
ComplexMatrix fourier_isometry(const ElementaryAbelianBasis& basis);

/// ||V^dagger V - I||_max.
double fourier_isometry_error(const ElementaryAbelianBasis& basis);
/// max over y and g of ||Left_g P_y - P_y Left_g||_max.
double left_commutation_error(const ElementaryAbelianBasis& basis);
/// max over y and g of ||Right_g P_y - P_y Right_g||_max; zero iff L is central.
double right_commutation_error(const ElementaryAbelianBasis& basis);
/// max over y and w in L of ||Right_w P_y - w^-(y,w) P_y|| and the same for Left_w.
double eigen_phase_error(const ElementaryAbelianBasis& basis);
/// max over x of ||P_0 |x> - |xL>||.
double trivial_label_error(const ElementaryAbelianBasis& basis);

/// Total map from length-S label sequences over Z_p^n to a non-empty index
/// set with zero sum: the lexicographically least among the smallest ones.
/// Stored as bitmasks for all p^(nS) sequences; at most 2^20 of them.
class ZeroSumSelector {
 public:
  /// Throws VerificationFailure if some sequence has no zero-sum subset.
  ZeroSumSelector(PrimeModulus p, std::size_t rank, std::size_t length);
  /// Length 1 + n(p-1), where every sequence has a zero sum.
  static ZeroSumSelector davenport(PrimeModulus p, std::size_t rank);

  PrimeModulus modulus() const noexcept { return p_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t labels() const noexcept { return labels_; }
  /// Sequence index = sum_j y_j labels^(S-1-j).
  std::uint32_t select(std::size_t sequence) const { return table_.at(sequence); }
  std::uint32_t select(std::span<const std::size_t> ys) const;

 private:
  PrimeModulus p_;
  std::size_t rank_;
  std::size_t length_;
  std::size_t labels_;
  std::vector<std::uint32_t> table_;
};

}  // namespace nilhsp

#endif
