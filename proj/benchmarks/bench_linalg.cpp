#include <benchmark/benchmark.h>

#include <random>

#include "complab/linalg.hpp"

using namespace complab;

static void BM_EchelonStreamF2(benchmark::State& state) {
  const std::size_t cols = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::vector<VecT<PrimeField>> rows;
  for (std::size_t r = 0; r < cols; ++r) {
    VecT<PrimeField> row(cols);
    for (auto& x : row) x = rng() & 1;
    rows.push_back(std::move(row));
  }
  for (auto _ : state) {
    EchelonBasis<PrimeField> e(PrimeField{2}, cols);
    for (const auto& r : rows) e.add_row(r);
    benchmark::DoNotOptimize(e.rank());
  }
}
BENCHMARK(BM_EchelonStreamF2)->Arg(64)->Arg(256);

static void BM_SparseEchelonF2(benchmark::State& state) {
  const std::size_t cols = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::vector<SparseEchelon<PrimeField>::Row> rows;
  for (std::size_t r = 0; r < 4 * cols; ++r) {
    SparseEchelon<PrimeField>::Row row;
    for (int k = 0; k < 4; ++k) row.push_back({static_cast<std::uint32_t>(rng() % cols), 1});
    rows.push_back(std::move(row));
  }
  for (auto _ : state) {
    SparseEchelon<PrimeField> e(PrimeField{2}, cols);
    for (const auto& r : rows) e.add_row(r);
    benchmark::DoNotOptimize(e.rank());
  }
}
BENCHMARK(BM_SparseEchelonF2)->Arg(512)->Arg(2048);
