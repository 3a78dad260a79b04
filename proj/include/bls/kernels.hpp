#pragma once

#include "bls/numeric.hpp"

namespace bls {

// Serial variants are the reference implementations; the parallel ones must match them bitwise.
enum class Exec { serial, parallel };

void set_thread_cap(int threads);
int thread_cap();

namespace kernels {

// out[i] = h * sum_j a[i-j+c] b[j], c = (n-1)/2, zero outside [0,n).
void conv_truncated(const cx* a, const cx* b, cx* out, int n, double h);

// out[(p*nb+q)*n + i] = conv(A_p, B_q)[i] over all row pairs.
void pair_convolutions(const cx* A, int na, const cx* B, int nb, int n, double h, cx* out, Exec e);

// out[i*nm + m] = sum_{j,l} T[(i*nr + j)*nr + l] * S[(j*nr + l)*nm + m].
void tensor_contract(const cx* T, const cx* S, int nr, int nm, cx* out, Exec e);

// out[i*nm + m] = sum_j M[i*nc + j] * X[j*nm + m].
void matmul_rows(const cx* M, const cx* X, int nrows, int nc, int nm, cx* out, Exec e);

// out[z] = scale * sum_i f[i] exp(i z m_i).
void fourier_sum(const cx* f, const double* m, int n, const cx* z, int nz, double scale, cx* out, Exec e);

}  // namespace kernels
}  // namespace bls
