#include <benchmark/benchmark.h>

#include <cmath>

#include "qrec/qrec.hpp"

using namespace qrec;

namespace {

void BM_OracleEval(benchmark::State& state) {
  const auto& def = catalog_entry("unbordered").definition;
  const auto n = state.range(0);
  for (auto _ : state) {
    const SequenceOracle oracle(def);
    benchmark::DoNotOptimize(oracle.summatory(n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_OracleEval)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity();

void BM_RepEval(benchmark::State& state) {
  const auto rep = catalog_representation(catalog_entry("unbordered"));
  std::int64_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rep_eval(rep, n));
    n = (n * 7919 + 13) % (std::int64_t{1} << 40);
  }
}
BENCHMARK(BM_RepEval);

void BM_BuildGeneral(benchmark::State& state) {
  const auto& def = catalog_entry("artificial_general").definition;
  for (auto _ : state) benchmark::DoNotOptimize(build_general(def));
}
BENCHMARK(BM_BuildGeneral);

void BM_OffsetCorrect(benchmark::State& state) {
  const auto& def = catalog_entry("unbordered").definition;
  const auto raw = build_special(def);
  const SequenceOracle oracle(def);
  for (auto _ : state) benchmark::DoNotOptimize(correct_offset(raw, oracle));
}
BENCHMARK(BM_OffsetCorrect);

void BM_Minimize(benchmark::State& state) {
  const auto rep = catalog_representation(catalog_entry("artificial_general"));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(rep));
}
BENCHMARK(BM_Minimize);

void BM_Spectrum(benchmark::State& state) {
  const auto c = catalog_representation(catalog_entry("artificial_general")).matrix_sum();
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(c));
}
BENCHMARK(BM_Spectrum);

void BM_JsrBounds(benchmark::State& state) {
  const auto& entry = catalog_entry("unbordered");
  const auto mats = catalog_jsr_matrices(entry);
  auto options = entry.jsr_hint;
  options.k_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jsr_bounds(mats, options));
}
BENCHMARK(BM_JsrBounds)->DenseRange(1, 4);

void BM_FourierCoefficients(benchmark::State& state) {
  const auto rep = catalog_representation(catalog_entry("stern"));
  const auto spec = spectrum(rep.matrix_sum());
  Eigenvalue three;
  for (const auto& e : spec.eigenvalues)
    if (std::abs(e.value - 3.0) < 1e-9) three = e;
  const auto mu_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_coefficients(rep, three, 0, mu_max));
  state.SetComplexityN(mu_max);
}
BENCHMARK(BM_FourierCoefficients)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMillisecond)->Complexity();

void BM_EvaluateExpansion(benchmark::State& state) {
  const auto& entry = catalog_entry("stern");
  const auto rep = stern_reduced();
  const auto spec = spectrum(rep.matrix_sum());
  const auto jsr = jsr_bounds(catalog_jsr_matrices(entry), entry.jsr_hint);
  const auto exp = assemble_expansion(rep, choose_R(jsr, spec), spec, 200);
  std::int64_t n = 1024;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_expansion(exp, n, 200));
    n = n % 100000 + 1024;
  }
}
BENCHMARK(BM_EvaluateExpansion);

}  // namespace
