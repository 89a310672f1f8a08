#include <benchmark/benchmark.h>

#include <random>

#include "skeletal/affine.hpp"
#include "skeletal/kres.hpp"
#include "skeletal/steenbrink.hpp"

using namespace skeletal;

namespace {

MatQ random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> val(-4, 4), keep(0, 2);
  MatQ m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng) == 0) m(i, j) = val(rng);
  return m;
}

AffineSurfaceDatum surface(int which) {
  switch (which) {
    case 0: return tetrahedron_surface();
    case 1: return icosahedron_surface();
    default: return mumford_torus_surface(3);
  }
}

void bm_rank(benchmark::State& st) {
  auto n = static_cast<std::size_t>(st.range(0));
  MatQ m = random_matrix(n, n, 7);
  for (auto _ : st) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(bm_rank)->Arg(20)->Arg(60)->Arg(120);

void bm_lambda_table(benchmark::State& st) {
  StrataModel m(build_kulikov_surface(surface(static_cast<int>(st.range(0)))));
  for (auto _ : st) {
    LambdaSheaf l(m, 1);
    benchmark::DoNotOptimize(l.betti_table());
  }
}
BENCHMARK(bm_lambda_table)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void bm_total_complex(benchmark::State& st) {
  StrataModel m(build_kulikov_surface(surface(static_cast<int>(st.range(0)))));
  LambdaSheaf l(m, 1);
  for (auto _ : st) {
    KResolution kr(l, 1);
    for (int p = 0; p <= 2; ++p) benchmark::DoNotOptimize(kr.total_betti(p));
  }
}
BENCHMARK(bm_total_complex)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void bm_rows(benchmark::State& st) {
  StrataModel m(build_kulikov_surface(surface(static_cast<int>(st.range(0)))));
  for (auto _ : st)
    for (int p = 0; p <= 2; ++p) benchmark::DoNotOptimize(betti(row_complex(m, p).cx));
}
BENCHMARK(bm_rows)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void bm_blowup_chain(benchmark::State& st) {
  // repeated edge subdivision grows the complex; time the Λ table on the result
  auto s = icosahedron_surface();
  for (int k = 0; k < st.range(0); ++k) {
    const Face& e = s.complex.face(s.complex.of_size(2)[static_cast<std::size_t>(k) % s.complex.of_size(2).size()]);
    s = blowup(s, e);
  }
  StrataModel m(build_kulikov_surface(s));
  for (auto _ : st) {
    LambdaSheaf l(m, 1);
    benchmark::DoNotOptimize(l.betti_table());
  }
  st.counters["faces"] = static_cast<double>(s.complex.size());
}
BENCHMARK(bm_blowup_chain)->Arg(0)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
