#include <benchmark/benchmark.h>

#include "complab/group.hpp"
#include "complab/group_ops.hpp"

using namespace complab;

static void BM_EnumerateSL3F2(benchmark::State& state) {
  GroupPtr g = construct_group(GroupSpec::sl(3, RingSpec::zmod(2)));
  for (auto _ : state) {
    auto elems = bfs_closure(*g, g->generators(), 1000000);
    benchmark::DoNotOptimize(elems.size());
  }
}
BENCHMARK(BM_EnumerateSL3F2);

static void BM_KernelDirectEnumeration(benchmark::State& state) {
  GroupPtr g = construct_group(GroupSpec::congruence_kernel(3, RingSpec::zmod(8), 1));
  for (auto _ : state) {
    auto elems = g->direct_enumeration(100000);
    benchmark::DoNotOptimize(elems->size());
  }
}
BENCHMARK(BM_KernelDirectEnumeration);

static void BM_CommutatorSubgroupU33(benchmark::State& state) {
  Subgroup u = Subgroup::whole_group(construct_group(GroupSpec::unitriangular(3, 3)), 1000);
  for (auto _ : state) {
    Subgroup d = commutator_subgroup(u, u, 1000);
    benchmark::DoNotOptimize(d.order());
  }
}
BENCHMARK(BM_CommutatorSubgroupU33);
