#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "levelcontract/contract.hpp"
#include "levelcontract/format.hpp"
#include "levelcontract/modify.hpp"
#include "levelcontract/oracle.hpp"
#include "levelcontract/residues.hpp"

using namespace levelcontract;

namespace {

// Ladder of depth levels with a long edge spanning all of them: a genus-2 top
// with a marked zero, genus-0 rungs, and a bottom vertex with a marked zero.
// Scales both the level count and the long-edge subdivision work.
LevelGraph make_spine(int depth) {
  LevelGraph g;
  for (int k = 0; k <= depth; ++k) {
    const int genus = (k == 0) ? 2 : 0;
    g.vertices.push_back({"t" + std::to_string(k), genus, -k, VertexKind::stable});
    g.levels.set(-k, k);
    if (k > 0) {
      g.edges.push_back({"r" + std::to_string(k), "t" + std::to_string(k - 1),
                         "t" + std::to_string(k), 1, 1});
    }
  }
  g.edges.push_back({"long", "t0", "t" + std::to_string(depth), 1, depth});
  g.markings.push_back({"z0", "t0", 2});
  g.markings.push_back({"zb", "t" + std::to_string(depth), 2});
  return g;
}

void BM_validate(benchmark::State& state) {
  const LevelGraph g = make_spine(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate(g));
}
BENCHMARK(BM_validate)->Arg(8)->Arg(64)->Arg(256);

void BM_semistable_modification(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const LevelGraph g = make_spine(depth);
  for (auto _ : state) {
    benchmark::DoNotOptimize(semistable_modification(g, -depth, ModificationKind::full));
  }
}
BENCHMARK(BM_semistable_modification)->Arg(8)->Arg(32)->Arg(128);

void BM_contract(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const LevelGraph g =
      semistable_modification(make_spine(depth), -depth, ModificationKind::full).first;
  for (auto _ : state) benchmark::DoNotOptimize(contract(g, -depth));
}
BENCHMARK(BM_contract)->Arg(8)->Arg(32)->Arg(128);

void BM_residue_kernel(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const LevelGraph g =
      semistable_modification(make_spine(depth), -depth, ModificationKind::full).first;
  for (auto _ : state) benchmark::DoNotOptimize(residue_solution_space(g, -depth, true));
}
BENCHMARK(BM_residue_kernel)->Arg(8)->Arg(32)->Arg(64);

void BM_canonical_form(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const LevelGraph g =
      semistable_modification(make_spine(depth), -depth, ModificationKind::full).first;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_canonical_form)->Arg(8)->Arg(32)->Arg(64);

void BM_parse_round_trip(benchmark::State& state) {
  const std::string text = print(make_spine(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(parse(text));
}
BENCHMARK(BM_parse_round_trip)->Arg(8)->Arg(64)->Arg(256);

void BM_enumerate(benchmark::State& state) {
  const EnumerationBounds bounds{2, 2, 1, 2, 3, 2};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_valid_graphs(bounds));
}
BENCHMARK(BM_enumerate);

}  // namespace

BENCHMARK_MAIN();
