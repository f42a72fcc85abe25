// Serial reference against the OpenMP kernels on the three parallel hot
// spots: collision doubling, boosting and the Gram conversion kernel.

#include <benchmark/benchmark.h>

#include "nilhsp/avgcase.hpp"
#include "nilhsp/catalog.hpp"
#include "nilhsp/group_alg.hpp"
#include "nilhsp/qsim_conversion.hpp"
#include "nilhsp/zerosum.hpp"

using namespace nilhsp;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

/// A sequence with no zero vector, so the full pipeline runs.
VecSequence hard_sequence(PrimeModulus p, std::size_t n, std::uint64_t seed) {
  RandomSource rng(seed);
  const auto len = static_cast<std::size_t>(required_length(p, n));
  VecSequence seq(p, n);
  seq.reserve(len);
  while (seq.size() < len) {
    ZpVec v = rng.vector(p, n);
    if (!v.is_zero()) seq.push_back(std::move(v));
  }
  return seq;
}

void BM_FindZeroSum(benchmark::State& state) {
  const PrimeModulus p(static_cast<std::uint32_t>(state.range(1)));
  const auto n = static_cast<std::size_t>(state.range(2));
  const VecSequence seq = hard_sequence(p, n, 17);
  for (auto _ : state) benchmark::DoNotOptimize(find_zero_sum(seq, exec_of(state)));
  state.counters["length"] = static_cast<double>(seq.size());
}
BENCHMARK(BM_FindZeroSum)
    ->ArgNames({"parallel", "p", "n"})
    ->ArgsProduct({{0, 1}, {5}, {4}})
    ->ArgsProduct({{0, 1}, {7}, {4}})
    ->ArgsProduct({{0, 1}, {3}, {48}})
    ->Unit(benchmark::kMillisecond);

void BM_Boost(benchmark::State& state) {
  const PrimeModulus p(5);
  const AverageCaseSolver solver = exact_average_solver(p, 1);
  RandomSource data(3);
  const VecSequence seq = data.sequence(p, 1, boost_input_length(solver));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RandomSource rng(seed++);
    benchmark::DoNotOptimize(boost(solver, seq, rng, exec_of(state)));
  }
}
BENCHMARK(BM_Boost)->ArgNames({"parallel"})->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MainConversion(benchmark::State& state) {
  const GroupPtr g = parse_group_name(state.range(1) == 0 ? "heisenberg:3" : "ut4:2");
  const Subgroup l = lower_central_series(g).terms.rbegin()[1];
  const ElementaryAbelianBasis basis(l);
  const ZeroSumSelector selector = ZeroSumSelector::davenport(basis.modulus(), basis.rank());
  const Subgroup h(g, {g->generators()[0]});
  const std::vector<GramPurification> copies(selector.length(), standard_gram(h));
  for (auto _ : state) benchmark::DoNotOptimize(main_conversion(copies, l, selector, exec_of(state)));
}
BENCHMARK(BM_MainConversion)
    ->ArgNames({"parallel", "group"})
    ->ArgsProduct({{0, 1}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
