#ifndef NILHSP_QSIM_STATE_HPP
#define NILHSP_QSIM_STATE_HPP

// Exact dense states over group registers, subgroup states and their
// purifications, and the restriction / pushing conversions.
//
// Two representations of a purification psi = |G|^(-1/2) sum_x |x>|v(x)>:
//   PureState        - every amplitude, register 0 is the group register;
//   GramPurification - only Gram(x, x') = <v(x)|v(x')>, which determines
//                      the reduced state: rho[x][y] = Gram(y, x) / |G|.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nilhsp/group.hpp"
#include "nilhsp/transversal.hpp"

namespace nilhsp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 22;
inline constexpr double kSingleStepTolerance = 1e-12;
inline constexpr double kCompositeTolerance = 1e-9;

enum class RegisterKind { group, label, purifier };

struct Register {
  RegisterKind kind;
  std::size_t dim;
};

/// Registers in order, first register most significant in the flat index.
class PureState {
 public:
  /// Checks dimensions, the amplitude budget and unit norm.
  PureState(std::vector<Register> registers, std::vector<Complex> amplitudes);

  const std::vector<Register>& registers() const noexcept { return registers_; }
  const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  /// Product of the dimensions of registers 1..end.
  std::size_t rest_dim() const noexcept { return amplitudes_.size() / registers_.front().dim; }
  Complex amplitude(std::size_t first, std::size_t rest) const { return amplitudes_[first * rest_dim() + rest]; }

  void reclassify(std::size_t index, RegisterKind kind) { registers_.at(index).kind = kind; }
  /// Partial trace over all registers but the first: rho[x][y] = sum_r psi(x,r) conj(psi(y,r)).
  ComplexMatrix reduced_first() const;
  /// Gram(x, x') = dim_0 * sum_r conj(psi(x,r)) psi(x',r).
  ComplexMatrix conditional_gram() const;

 private:
  std::vector<Register> registers_;
  std::vector<Complex> amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite; checked on construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);
  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

 private:
  ComplexMatrix m_;
};

struct GramPurification {
  GroupPtr group;
  ComplexMatrix gram;
  /// rho[x][y] = gram(y, x) / |G|.
  ComplexMatrix density() const;
};

GramPurification gram_of(const PureState& psi, GroupPtr group);

enum class CosetChoice { least, greatest };
/// One element per left coset xH, ordered by the least element of the coset.
std::vector<Elem> coset_representatives(const Subgroup& h, CosetChoice choice = CosetChoice::least);
/// Index of the coset of x in the order of coset_representatives.
std::vector<std::size_t> coset_index(const Subgroup& h);

/// (1/[G:H]) sum_{a in reps} |aH><aH|; |G| <= 64.
DensityMatrix subgroup_state(const Subgroup& h, CosetChoice choice = CosetChoice::least);
/// Direct formula [xH = yH] / |G| for any group order.
ComplexMatrix subgroup_density(const Subgroup& h);

/// |G|^(-1/2) sum_x |x>|coset index of x>.
PureState standard_purification(const Subgroup& h);
GramPurification standard_gram(const Subgroup& h);

/// Max entrywise distance between the reduced state and rho_{G,H}.
double purification_error(const PureState& psi, const Subgroup& h);
double purification_error(const GramPurification& gram, const Subgroup& h);
bool is_purification(const PureState& psi, const Subgroup& h, double tol = kSingleStepTolerance);
/// Max distance of the conditional Gram from [x and x' share a left coset].
double coset_gram_error(const GramPurification& gram, const Subgroup& h);

struct Restricted {
  PureState state;
  SubgroupEmbedding embedding;
};
struct RestrictedGram {
  GramPurification gram;
  SubgroupEmbedding embedding;
};
/// |x> -> |beta(x)>|alpha(x)>, the alpha register becomes a purifier.
Restricted restrict_conversion(const PureState& psi, const Subgroup& l);
RestrictedGram restrict_conversion(const GramPurification& gram, const Subgroup& l);

struct Pushed {
  PureState state;
  QuotientMap quotient;
};
struct PushedGram {
  GramPurification gram;
  QuotientMap quotient;
};
/// |x> -> |alpha(x) L>|beta(x)>, the beta register becomes a purifier.
/// L must be normal.
Pushed push_conversion(const PureState& psi, const Subgroup& l);
PushedGram push_conversion(const GramPurification& gram, const Subgroup& l);

}  // namespace nilhsp

#endif
