#include "nilhsp/hsp.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "nilhsp/errors.hpp"
#include "nilhsp/group_alg.hpp"

namespace nilhsp {

Subgroup SimulatedHsmc::query(const Subgroup& k, const Subgroup& h0) {
  ++calls_;
  if (!k.contains(h0) || !normalizes(k, h0)) {
    ++violations_;
    throw ProtocolViolation("HSMC query with H0 not normal in K");
  }
  const Subgroup derived = derived_subgroup(k);
  if (!is_elementary_abelian_quotient(k, join(derived, h0))) {
    ++violations_;
    throw ProtocolViolation("HSMC query with K/(K'H0) not elementary abelian");
  }
  Subgroup answer = join(intersect(hidden_, k), derived);
  if (!k.contains(answer) || !answer.contains(derived) || !answer.contains(h0)) {
    ++violations_;
    throw ProtocolViolation("HSMC answer does not contain H0; H0 is not inside the hidden subgroup");
  }
  return answer;
}

HiddenSubgroupInstance::HiddenSubgroupInstance(GroupPtr g, Subgroup hidden)
    : g_(std::move(g)), hidden_(std::move(hidden)) {
  if (hidden_.parent() != g_) throw std::invalid_argument("hidden subgroup belongs to another group");
}

OracleFactory HiddenSubgroupInstance::oracle_factory() const {
  return [hidden = hidden_](const Subgroup&) -> std::unique_ptr<HsmcOracle> {
    return std::make_unique<SimulatedHsmc>(hidden);
  };
}

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::reduce: return "reduce";
    case StepKind::query_full: return "query-full";
    case StepKind::query_shrunk: return "query-shrunk";
    case StepKind::query_done: return "query-done";
  }
  return "?";
}

std::size_t ReductionTrace::total_calls() const {
  std::size_t total = 0;
  for (const auto& s : sylows) total += s.calls;
  return total;
}

bool ReductionTrace::within_bounds() const {
  return std::all_of(sylows.begin(), sylows.end(), [](const SylowTrace& s) { return s.calls <= s.call_bound(); });
}

bool ReductionTrace::monotone() const {
  for (const auto& s : sylows) {
    for (std::size_t i = 1; i < s.steps.size(); ++i) {
      const TraceStep& a = s.steps[i - 1];
      const TraceStep& b = s.steps[i];
      if (a.outer == b.outer) {
        if (b.k_order >= a.k_order || b.h0_order != a.h0_order) return false;
      } else if (b.h0_order <= a.h0_order) {
        return false;
      }
    }
  }
  return true;
}

namespace {

Subgroup solve_in_sylow(const Subgroup& p_sub, std::uint32_t p, HsmcOracle& oracle, SylowTrace& trace) {
  Subgroup h0 = Subgroup::trivial(p_sub.parent());
  for (std::size_t outer = 0;; ++outer) {
    Subgroup k = normalizer(p_sub, h0);
    // Normalizers grow in nilpotent groups, so this only fires for H0 = P.
    if (k == h0) return h0;
    for (std::size_t inner = 0;; ++inner) {
      TraceStep step;
      step.outer = outer;
      step.inner = inner;
      step.k_order = k.order();
      step.h0_order = h0.order();
      const Subgroup base = join(derived_subgroup(k), h0);
      step.elementary = is_elementary_abelian_quotient(k, base, p);
      if (!step.elementary) {
        k = elementary_quotient_reducer(k, base, p);
        step.kind = StepKind::reduce;
        step.result_order = k.order();
        trace.steps.push_back(step);
        continue;
      }
      Subgroup answer = oracle.query(k, h0);
      ++trace.calls;
      if (answer == k) {
        h0 = std::move(answer);
        step.kind = StepKind::query_full;
        step.result_order = h0.order();
        trace.steps.push_back(step);
        break;
      }
      k = std::move(answer);
      step.result_order = k.order();
      if (k == h0) {
        step.kind = StepKind::query_done;
        trace.steps.push_back(step);
        return h0;
      }
      step.kind = StepKind::query_shrunk;
      trace.steps.push_back(step);
    }
  }
}

}  // namespace

Subgroup solve_hsp(const GroupPtr& g, const OracleFactory& factory, ReductionTrace* trace, Execution exec) {
  if (!is_nilpotent(g)) throw NotNilpotent(g->name() + " is not nilpotent");
  const auto primes = prime_factors(g->order());
  std::vector<SylowTrace> traces(primes.size());
  std::vector<std::optional<Subgroup>> parts(primes.size());
  detail::for_each_index(primes.size(), exec, [&](std::size_t i) {
    const auto p = static_cast<std::uint32_t>(primes[i]);
    const Subgroup p_sub = sylow(g, p);
    SylowTrace& t = traces[i];
    t.prime = p;
    t.sylow_order = p_sub.order();
    for (std::size_t m = p_sub.order(); m > 1; m /= p) ++t.exponent;
    auto oracle = factory(p_sub);
    parts[i] = solve_in_sylow(p_sub, p, *oracle, t);
    t.result_order = parts[i]->order();
  });
  Subgroup result = Subgroup::trivial(g);
  for (const auto& part : parts) result = join(result, *part);
  if (trace) trace->sylows = std::move(traces);
  return result;
}

ValidationReport exhaustive_validation(const GroupPtr& g, Execution exec) {
  if (g->order() > 256) throw BudgetExceeded("exhaustive validation is limited to order 256");
  const std::vector<Subgroup> subs = all_subgroups(g);
  ValidationReport report;
  report.group = g->name();
  report.subgroups = subs.size();
  std::vector<ReductionTrace> traces(subs.size());
  std::vector<char> recovered(subs.size());
  detail::for_each_index(subs.size(), exec, [&](std::size_t i) {
    const HiddenSubgroupInstance instance(g, subs[i]);
    const Subgroup found = solve_hsp(g, instance.oracle_factory(), &traces[i]);
    recovered[i] = instance.matches(found);
  });
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (recovered[i]) ++report.recovered;
    else report.failures.push_back(describe(subs[i]));
    for (const auto& s : traces[i].sylows) report.max_calls = std::max(report.max_calls, s.calls);
    report.bounds_ok = report.bounds_ok && traces[i].within_bounds();
    report.monotone_ok = report.monotone_ok && traces[i].monotone();
  }
  return report;
}

}  // namespace nilhsp
