#include <random>

#include <benchmark/benchmark.h>

#include "veemap/bowenfranks.hpp"
#include "veemap/flow.hpp"
#include "veemap/subshift.hpp"
#include "veemap/veelike.hpp"

using namespace veemap;

namespace {

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> entry(-20, 20);
  std::vector<std::vector<long long>> rows(n, std::vector<long long>(n));
  for (auto& r : rows)
    for (auto& x : r) x = entry(rng);
  const IntMatrix m = IntMatrix::from_ints(rows);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(5)->Arg(8)->Arg(12);

void BM_Hull(benchmark::State& state) {
  const Dfa l = thompson_language();
  const HullSpec single{l, "2"};
  const HullSpec pair{relabel(l, Alphabet({"0_A", "1_A"})), "#", relabel(l, Alphabet({"0_B", "1_B"})), "@", true};
  for (auto _ : state) benchmark::DoNotOptimize(hull(state.range(0) ? pair : single));
}
BENCHMARK(BM_Hull)->Arg(0)->Arg(1);

void BM_VerifyVeelike(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const VeelikeRule rule = action_on_L(random_v_element(rng, 4));
  const Dfa l = thompson_language();
  for (auto _ : state) benchmark::DoNotOptimize(verify_veelike(rule, l, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_VerifyVeelike)->Arg(8)->Arg(12)->Arg(14);

void BM_FlowApply(benchmark::State& state) {
  std::mt19937_64 rng(13);
  const InducedMap m = induced_map(random_v_element(rng, 3));
  std::vector<FlowOrbit> orbits;
  for (int i = 0; i < 64; ++i) orbits.push_back(random_orbit(rng, m.hull(), static_cast<std::size_t>(state.range(0))));
  for (auto _ : state)
    for (const auto& o : orbits) benchmark::DoNotOptimize(apply(m, o));
}
BENCHMARK(BM_FlowApply)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
