#include <benchmark/benchmark.h>

#include "bls/kernels.hpp"

#include <random>
#include <vector>

using namespace bls;

namespace {

std::vector<cx> filled(std::size_t n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> d(0, 1);
    std::vector<cx> v(n);
    for (auto& x : v) x = cx(d(rng), d(rng));
    return v;
}

Exec mode(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

void BM_pair_convolutions(benchmark::State& st)
{
    const int nm = static_cast<int>(st.range(0)), rows = 8;
    const auto A = filled(rows * nm, 1), B = filled(rows * nm, 2);
    std::vector<cx> out(rows * rows * nm);
    for (auto _ : st) {
        kernels::pair_convolutions(A.data(), rows, B.data(), rows, nm, 0.1, out.data(), mode(st));
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_matmul_rows(benchmark::State& st)
{
    const int nr = static_cast<int>(st.range(0)), nm = 65;
    const auto M = filled(nr * nr, 3), X = filled(nr * nm, 4);
    std::vector<cx> out(nr * nm);
    for (auto _ : st) {
        kernels::matmul_rows(M.data(), X.data(), nr, nr, nm, out.data(), mode(st));
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_tensor_contract(benchmark::State& st)
{
    const int nr = static_cast<int>(st.range(0)), nm = 65;
    const auto T = filled(nr * nr * nr, 5), S = filled(nr * nr * nm, 6);
    std::vector<cx> out(nr * nm);
    for (auto _ : st) {
        kernels::tensor_contract(T.data(), S.data(), nr, nm, out.data(), mode(st));
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_fourier_sum(benchmark::State& st)
{
    const int nm = static_cast<int>(st.range(0)), nz = 25;
    const auto f = filled(nm, 7), z = filled(nz, 8);
    std::vector<double> m(nm);
    for (int i = 0; i < nm; ++i) m[i] = -8 + 16.0 * i / (nm - 1);
    std::vector<cx> out(nz);
    for (auto _ : st) {
        kernels::fourier_sum(f.data(), m.data(), nm, z.data(), nz, 0.25, out.data(), mode(st));
        benchmark::DoNotOptimize(out.data());
    }
}

}  // namespace

BENCHMARK(BM_pair_convolutions)->ArgsProduct({{65, 129}, {0, 1}});
BENCHMARK(BM_matmul_rows)->ArgsProduct({{48, 96}, {0, 1}});
BENCHMARK(BM_tensor_contract)->ArgsProduct({{24, 48}, {0, 1}});
BENCHMARK(BM_fourier_sum)->ArgsProduct({{65, 257}, {0, 1}});

BENCHMARK_MAIN();
