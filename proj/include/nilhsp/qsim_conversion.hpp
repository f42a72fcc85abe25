#ifndef NILHSP_QSIM_CONVERSION_HPP
#define NILHSP_QSIM_CONVERSION_HPP

// The main conversion: S purifications of rho_{G,H} and a central elementary
// abelian L become one purification of rho_{G/L, HL/L}.
//
// Per copy the group register is expanded in the P_y basis, a fresh uniform
// register |x> is adjoined, the j-th copy is multiplied on the right by x^-1
// exactly when j is in J(y), and L is pushed out of the fresh register.
//
// The Gram kernel computes the conditional Gram of the fresh register
// directly. With T_j(y, k) the overlap of copy j's branch for label y under
// a relative shift k,
//   Gram_X(x, x') = sum_{y in L^S} prod_j T_j(y_j, [j in J(y)] ? x'^-1 x : 1),
// so only |G| values of the right-hand side are needed. The dense route
// applies the same steps to every amplitude and is kept as a reference.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilhsp/execution.hpp"
#include "nilhsp/qsim_operators.hpp"
#include "nilhsp/qsim_state.hpp"

namespace nilhsp {

struct ConversionResult {
  /// Fresh-register Gram before pushing; purifies rho_{G, HL}.
  GramPurification before_push;
  GramPurification gram;
  QuotientMap quotient;
  std::size_t copies = 0;
  /// S * n Fourier transforms mod p, reported only.
  std::size_t fourier_transforms = 0;
};

/// Every copy must be over the parent of l; l must be central and
/// elementary abelian with the selector's prime and rank.
ConversionResult main_conversion(std::span<const GramPurification> copies, const Subgroup& l,
                                 const ZeroSumSelector& selector, Execution exec = Execution::parallel);

struct DenseConversionResult {
  /// Registers: fresh group register, then per copy (group, label, purifiers).
  PureState before_push;
  Pushed pushed;
};

/// Literal amplitude-level route; the joint state must fit 2^22 amplitudes.
DenseConversionResult main_conversion_dense(std::span<const PureState> copies, const Subgroup& l,
                                            const ZeroSumSelector& selector);

/// max_{w in L} |1 - Gram(w, 1)|: the fresh register's conditional state is
/// the same for every element of L.
double phase_cancellation_error(const GramPurification& before_push, const Subgroup& l);
/// max_{w in L} ||psi(w) - psi(1)|| over the fresh register of a dense result.
double phase_cancellation_error(const PureState& before_push, const Subgroup& l);

struct IterationStep {
  std::size_t group_order = 0;
  std::size_t l_order = 0;
  std::size_t copies = 0;
  double purification_error = 0;
  double phase_error = 0;
};

struct IterationResult {
  /// Purification over G/G'.
  GramPurification gram;
  /// G id -> id in the final quotient.
  std::vector<Elem> project;
  /// HG'/G' in the final quotient, by enumeration.
  Subgroup target;
  std::vector<IterationStep> steps;
  /// Product of the per-step copy counts.
  std::size_t total_copies = 1;
};

/// One main conversion per lower central series step, from the bottom.
/// Throws std::invalid_argument if a factor is not elementary abelian.
IterationResult iterate_conversion(const Subgroup& h, Execution exec = Execution::parallel);

/// Diagonal of the reduced state in the element basis.
std::vector<double> element_distribution(const GramPurification& gram);
/// Outcome probabilities in the character basis of an elementary abelian
/// group, indexed by the label of the character.
std::vector<double> fourier_distribution(const GramPurification& gram, const ElementaryAbelianBasis& basis);
/// |K|/|Q| on the annihilator of K, zero elsewhere.
std::vector<double> exact_fourier_distribution(const Subgroup& k, const ElementaryAbelianBasis& basis);
/// Elements killed by every character with probability above threshold.
Subgroup annihilator_of_support(const std::vector<double>& distribution, const ElementaryAbelianBasis& basis,
                                double threshold = 1e-6);
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  /// Largest error seen; for expect_large checks, the smallest.
  double worst_error = 0;
  double tolerance = 0;
  /// The error must exceed the tolerance, e.g. a purification tested
  /// against the wrong subgroup.
  bool expect_large = false;
  bool passed() const noexcept;
};

struct VerifyOptions {
  /// Hidden subgroups to test; every subgroup when empty.
  std::vector<Subgroup> hidden;
  /// Restriction targets range over all subgroups up to this group order,
  /// otherwise over the lower central and chief series.
  std::size_t all_restrictions_up_to = 32;
  /// Main conversions are run for at most this many (H, L) pairs.
  std::size_t max_conversions = 64;
  Execution exec = Execution::parallel;
};

/// Runs every simulator identity on g and reports the worst error per check.
std::vector<CheckResult> verify_simulator(const GroupPtr& g, const VerifyOptions& options);

}  // namespace nilhsp

#endif
