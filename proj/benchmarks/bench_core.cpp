#include <benchmark/benchmark.h>

#include "sftlab/random.hpp"
#include "sftlab/sftlab.hpp"

using namespace sftlab;

namespace {

intlat::Matrix dense(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  intlat::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-50, 50);
  return m;
}

PresentationPtr full_shift(std::size_t n) {
  intlat::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = 1;
  return Presentation::validate(m, PresentationKind::vertex);
}

void BM_SmithNormalForm(benchmark::State& state) {
  const intlat::Matrix m = dense(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(intlat::smith(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

// Coboundary of a depth-3 function on a full shift, decided from scratch.
void BM_ClassIsZero(benchmark::State& state) {
  auto p = full_shift(static_cast<std::size_t>(state.range(0)));
  Rng rng(11);
  const Function f = coboundary(random_function(rng, p, 3, -5, 5));
  for (auto _ : state) benchmark::DoNotOptimize(class_is_zero(f));
}
BENCHMARK(BM_ClassIsZero)->Arg(2)->Arg(4)->Arg(6);

void BM_TransferPsiXi(benchmark::State& state) {
  auto p = full_shift(static_cast<std::size_t>(state.range(0)));
  const Expansion e = expand(p);
  Rng rng(13);
  const Function f = Function::tabulate(e.expanded, 3, [&](const Word&) { return Rational(rng.uniform(-5, 5)); });
  for (auto _ : state) benchmark::DoNotOptimize(transfer_psi(e.xi, e.xi_data, f));
}
BENCHMARK(BM_TransferPsiXi)->Arg(2)->Arg(4);

void BM_PhiPsiRoundTrip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  intlat::Matrix C(n, n), D(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      C(i, j) = 1;
      D(i, j) = i == j ? 1 : 0;
    }
  const ElementaryEquivalence ee = elementary(C, D);
  Rng rng(17);
  const Function f = Function::tabulate(ee.edge_a, 2, [&](const Word&) { return Rational(rng.uniform(-5, 5)); });
  for (auto _ : state) benchmark::DoNotOptimize(psi(ee, phi(ee, f)));
}
BENCHMARK(BM_PhiPsiRoundTrip)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
