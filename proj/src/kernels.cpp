#include "bls/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bls {

namespace {
int g_threads = 0;

int team()
{
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}
}  // namespace

void set_thread_cap(int threads) { g_threads = threads; }
int thread_cap() { return team(); }

namespace kernels {

void conv_truncated(const cx* a, const cx* b, cx* out, int n, double h)
{
    const int c = (n - 1) / 2;
    for (int i = 0; i < n; ++i) {
        const int jlo = std::max(0, i + c - (n - 1));
        const int jhi = std::min(n - 1, i + c);
        double re = 0, im = 0;
        for (int j = jlo; j <= jhi; ++j) {
            const cx x = a[i - j + c];
            const cx y = b[j];
            re += x.real() * y.real() - x.imag() * y.imag();
            im += x.real() * y.imag() + x.imag() * y.real();
        }
        out[i] = cx(re * h, im * h);
    }
}

void pair_convolutions(const cx* A, int na, const cx* B, int nb, int n, double h, cx* out, Exec e)
{
    const long total = static_cast<long>(na) * nb;
    if (e == Exec::serial) {
        for (long pq = 0; pq < total; ++pq)
            conv_truncated(A + (pq / nb) * n, B + (pq % nb) * n, out + pq * n, n, h);
        return;
    }
#pragma omp parallel for schedule(dynamic, 8) num_threads(team())
    for (long pq = 0; pq < total; ++pq)
        conv_truncated(A + (pq / nb) * n, B + (pq % nb) * n, out + pq * n, n, h);
}

namespace {
void contract_row(const cx* T, const cx* S, int nr, int nm, cx* out, int i)
{
    std::fill(out + static_cast<long>(i) * nm, out + static_cast<long>(i + 1) * nm, cx(0));
    cx* o = out + static_cast<long>(i) * nm;
    const cx* Ti = T + static_cast<long>(i) * nr * nr;
    for (int jl = 0; jl < nr * nr; ++jl) {
        const cx t = Ti[jl];
        if (t == cx(0)) continue;
        const cx* s = S + static_cast<long>(jl) * nm;
        for (int m = 0; m < nm; ++m) o[m] += t * s[m];
    }
}

void matmul_row(const cx* M, const cx* X, int nc, int nm, cx* out, int i)
{
    cx* o = out + static_cast<long>(i) * nm;
    std::fill(o, o + nm, cx(0));
    for (int j = 0; j < nc; ++j) {
        const cx t = M[static_cast<long>(i) * nc + j];
        if (t == cx(0)) continue;
        const cx* x = X + static_cast<long>(j) * nm;
        for (int m = 0; m < nm; ++m) o[m] += t * x[m];
    }
}
}  // namespace

void tensor_contract(const cx* T, const cx* S, int nr, int nm, cx* out, Exec e)
{
    if (e == Exec::serial) {
        for (int i = 0; i < nr; ++i) contract_row(T, S, nr, nm, out, i);
        return;
    }
#pragma omp parallel for schedule(dynamic, 1) num_threads(team())
    for (int i = 0; i < nr; ++i) contract_row(T, S, nr, nm, out, i);
}

void matmul_rows(const cx* M, const cx* X, int nrows, int nc, int nm, cx* out, Exec e)
{
    if (e == Exec::serial) {
        for (int i = 0; i < nrows; ++i) matmul_row(M, X, nc, nm, out, i);
        return;
    }
#pragma omp parallel for schedule(static) num_threads(team())
    for (int i = 0; i < nrows; ++i) matmul_row(M, X, nc, nm, out, i);
}

void fourier_sum(const cx* f, const double* m, int n, const cx* z, int nz, double scale, cx* out, Exec e)
{
    auto one = [&](int q) {
        cx acc = 0;
        const cx iz = cx(0, 1) * z[q];
        for (int i = 0; i < n; ++i) acc += f[i] * std::exp(iz * m[i]);
        out[q] = scale * acc;
    };
    if (e == Exec::serial) {
        for (int q = 0; q < nz; ++q) one(q);
        return;
    }
#pragma omp parallel for schedule(static) num_threads(team())
    for (int q = 0; q < nz; ++q) one(q);
}

}  // namespace kernels
}  // namespace bls
