#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "crn/kernels.hpp"

using namespace crn::kernels;

namespace {

SiphonMasks masks(int n, int r) {
  std::mt19937_64 rng(3);
  SiphonMasks m;
  const std::uint32_t full = (1u << n) - 1u;
  for (int i = 0; i < r; ++i) {
    m.reactant.push_back(static_cast<std::uint32_t>(rng()) & full);
    m.product.push_back(static_cast<std::uint32_t>(rng()) & full);
  }
  m.universe = full;
  return m;
}

void BM_SiphonScanSerial(benchmark::State& st) {
  const auto m = masks(static_cast<int>(st.range(0)), 30);
  for (auto _ : st) benchmark::DoNotOptimize(serial::scan_siphons(m));
}

void BM_SiphonScanOmp(benchmark::State& st) {
  const auto m = masks(static_cast<int>(st.range(0)), 30);
  for (auto _ : st) benchmark::DoNotOptimize(omp::scan_siphons(m));
}

double work(std::size_t i) {
  double s = 0.0;
  for (int k = 1; k < 200; ++k) s += std::log(1.0 + static_cast<double>(i + k));
  return s;
}

void BM_MapSerial(benchmark::State& st) {
  std::vector<double> out(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) serial::map(out.size(), [&](std::size_t i) { out[i] = work(i); });
  benchmark::DoNotOptimize(out.data());
}

void BM_MapOmp(benchmark::State& st) {
  std::vector<double> out(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) omp::map(out.size(), [&](std::size_t i) { out[i] = work(i); });
  benchmark::DoNotOptimize(out.data());
}

}  // namespace

BENCHMARK(BM_SiphonScanSerial)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_SiphonScanOmp)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_MapSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_MapOmp)->Arg(1 << 12)->Arg(1 << 16);

BENCHMARK_MAIN();
