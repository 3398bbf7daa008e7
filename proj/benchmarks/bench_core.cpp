#include <random>

#include <benchmark/benchmark.h>

#include "it2fgp/dialogue.hpp"
#include "it2fgp/goalmem.hpp"
#include "it2fgp/io.hpp"
#include "it2fgp/lpsolve.hpp"

namespace {

using namespace it2fgp;

CrispProgram crisp(const char* name) { return std::get<CrispProgram>(parse_program(*fixture(name))); }

void BM_ExpectedValue(benchmark::State& state) {
  const auto a = make_it2({{20, 22, 24, 27}, 0.95, 0.98}, {{21, 23, 25, 26}, 0.97, 0.99});
  for (auto _ : state) benchmark::DoNotOptimize(expected_value(a));
}
BENCHMARK(BM_ExpectedValue);

void BM_DefuzzifyProgram(benchmark::State& state) {
  const auto p = std::get<FuzzyProgram>(parse_program(*fixture("example2_fuzzy")));
  for (auto _ : state) benchmark::DoNotOptimize(defuzzify_program(p));
}
BENCHMARK(BM_DefuzzifyProgram);

void BM_EvalAndGradient(benchmark::State& state) {
  const auto f = crisp("example1_crisp").objectives[0].fn;
  const std::vector<double> x = {0.458, 12.71, 1.946};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_fn(f, x));
    benchmark::DoNotOptimize(grad_fn(f, x));
  }
}
BENCHMARK(BM_EvalAndGradient);

void BM_SimplexRandomFgp(benchmark::State& state) {
  const auto goals = static_cast<std::size_t>(state.range(0));
  const std::size_t n = 6;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-1, 1);
  Box box{std::vector<double>(n, 0.0), std::vector<double>(n, 2.0)};
  std::vector<LinearFn> fns;
  for (std::size_t k = 0; k < goals; ++k) {
    LinearFn f{{}, c(rng)};
    for (std::size_t l = 0; l < n; ++l) f.coeffs.push_back(c(rng));
    fns.push_back(f);
  }
  const auto model = assemble_fgp(fns, box);
  for (auto _ : state) benchmark::DoNotOptimize(simplex_solve(model));
}
BENCHMARK(BM_SimplexRandomFgp)->Arg(2)->Arg(8)->Arg(32);

void BM_PayoffTable(benchmark::State& state) {
  const auto p = crisp("example2_crisp");
  NlpConfig cfg;
  cfg.restarts = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(payoff_table(p, cfg));
}
BENCHMARK(BM_PayoffTable)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_OpenSession(benchmark::State& state) {
  const auto p = crisp("example2_crisp");
  for (auto _ : state) benchmark::DoNotOptimize(open_session(p));
}
BENCHMARK(BM_OpenSession)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
