#ifndef NILHSP_HSP_HPP
#define NILHSP_HSP_HPP

// Reduction of the hidden subgroup problem in a nilpotent group to queries
// for the hidden subgroup modulo commutator subgroups (HSMC), run separately
// in every Sylow subgroup.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "nilhsp/execution.hpp"
#include "nilhsp/group.hpp"

namespace nilhsp {

class HsmcOracle {
 public:
  virtual ~HsmcOracle() = default;
  /// (H n K) K' for K/(K'H0) elementary abelian. The answer contains K' and
  /// H0 and lies in K.
  virtual Subgroup query(const Subgroup& k, const Subgroup& h0) = 0;
};

/// Builds one oracle per Sylow subgroup.
using OracleFactory = std::function<std::unique_ptr<HsmcOracle>(const Subgroup& sylow)>;

/// Answers queries by enumeration. Queries with a non-elementary K/(K'H0) are
/// counted and rejected with ProtocolViolation.
class SimulatedHsmc final : public HsmcOracle {
 public:
  explicit SimulatedHsmc(Subgroup hidden) : hidden_(std::move(hidden)) {}
  Subgroup query(const Subgroup& k, const Subgroup& h0) override;
  std::size_t calls() const noexcept { return calls_; }
  std::size_t violations() const noexcept { return violations_; }

 private:
  Subgroup hidden_;
  std::size_t calls_ = 0;
  std::size_t violations_ = 0;
};

/// A nilpotent group with a hidden subgroup that only oracles can see.
class HiddenSubgroupInstance {
 public:
  HiddenSubgroupInstance(GroupPtr g, Subgroup hidden);
  const GroupPtr& group() const noexcept { return g_; }
  OracleFactory oracle_factory() const;
  /// Element-set comparison with the hidden subgroup.
  bool matches(const Subgroup& candidate) const { return candidate == hidden_; }

 private:
  GroupPtr g_;
  Subgroup hidden_;
};

enum class StepKind { reduce, query_full, query_shrunk, query_done };

struct TraceStep {
  std::size_t outer = 0;
  std::size_t inner = 0;
  std::size_t k_order = 0;
  std::size_t h0_order = 0;
  StepKind kind = StepKind::reduce;
  /// |K| after the step (or |H0| for query_full).
  std::size_t result_order = 0;
  /// K/(K'H0) was elementary abelian when the step ran.
  bool elementary = false;
};

struct SylowTrace {
  std::uint32_t prime = 0;
  std::size_t sylow_order = 0;
  unsigned exponent = 0;
  std::size_t calls = 0;
  std::size_t result_order = 0;
  std::vector<TraceStep> steps;
  std::size_t call_bound() const noexcept { return std::size_t{exponent} * exponent; }
};

struct ReductionTrace {
  std::vector<SylowTrace> sylows;
  std::size_t total_calls() const;
  bool within_bounds() const;
  /// H0 grows strictly between outer rounds and K shrinks strictly inside one.
  bool monotone() const;
};

const char* to_string(StepKind kind);

/// Runs the reduction in every Sylow subgroup and joins the answers.
/// Throws NotNilpotent for non-nilpotent g.
Subgroup solve_hsp(const GroupPtr& g, const OracleFactory& factory, ReductionTrace* trace = nullptr,
                   Execution exec = Execution::serial);

struct ValidationReport {
  std::string group;
  std::size_t subgroups = 0;
  std::size_t recovered = 0;
  std::size_t max_calls = 0;
  bool bounds_ok = true;
  bool monotone_ok = true;
  /// describe() of each subgroup that was not recovered.
  std::vector<std::string> failures;
  bool ok() const noexcept { return recovered == subgroups && bounds_ok && monotone_ok && failures.empty(); }
};

/// Every subgroup of g as the hidden one; |g| <= 256.
ValidationReport exhaustive_validation(const GroupPtr& g, Execution exec = Execution::parallel);

}  // namespace nilhsp

#endif
