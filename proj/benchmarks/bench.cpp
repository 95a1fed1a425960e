#include <benchmark/benchmark.h>

#include "dfi/numberfield.hpp"
#include "dfi/places.hpp"
#include "dfi/poly.hpp"
#include "dfi/resultant.hpp"
#include "dfi/search.hpp"

using namespace dfi;

namespace {

NumberField sqrt2() {
  return NumberField::create(ZPoly({BigInt(-2), BigInt(0), BigInt(1)}));
}

InequalityInstance pell() {
  NumberField q = NumberField::rationals();
  NumberField k = sqrt2();
  SubfieldMap km(q, k, k.zero());
  PlaceSet s = PlaceSet::over_primes(q, {});
  FieldElement r = k.generator();
  std::vector<LinearForm> fs = {LinearForm({k.one(), k.zero()}),
                                LinearForm({k.one(), -r}),
                                LinearForm({k.one(), r})};
  DecomposableForm f = DecomposableForm::build(k.one(), std::move(fs), km, s);
  return {std::move(f), BigRational(1), BigRational(1), s, false};
}

void BM_ResultantSylvester(benchmark::State& state) {
  long n = state.range(0);
  NumberField q = NumberField::rationals();
  KPoly a, b;
  for (long i = 0; i <= n; ++i) {
    a.push_back(q.from_rational(BigRational(2 * i + 1)));
    b.push_back(q.from_rational(BigRational(i * i - 3)));
  }
  b.back() = q.one();
  for (auto _ : state) benchmark::DoNotOptimize(resultant(a, b));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ResultantSylvester)->Arg(4)->Arg(8)->Arg(16)->Complexity();

void BM_SolvePellBox(benchmark::State& state) {
  InequalityInstance inst = pell();
  SolveOptions opt;
  opt.bound = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_inequality(inst, opt).accepted.size());
  state.SetComplexityN(opt.bound);
}
BENCHMARK(BM_SolvePellBox)->Arg(50)->Arg(200)->Arg(800)->Complexity();

void BM_SNorm(benchmark::State& state) {
  NumberField k = sqrt2();
  PlaceSet s = PlaceSet::over_primes(k, {BigInt(7)});
  FieldElement x = k.element({BigRational(1234567, 49), BigRational(991, 7)});
  for (auto _ : state) benchmark::DoNotOptimize(s_norm(x, s));
}
BENCHMARK(BM_SNorm);

void BM_Height(benchmark::State& state) {
  NumberField k = sqrt2();
  BigRational tol(1, 1000000000000L);
  std::vector<FieldElement> x = {
      k.element({BigRational(3), BigRational(5)}),
      k.element({BigRational(-7), BigRational(2)}),
      k.one()};
  for (auto _ : state) benchmark::DoNotOptimize(height(x, tol).mid_double());
}
BENCHMARK(BM_Height);

}  // namespace

BENCHMARK_MAIN();
