#pragma once

#include "sic/types.hpp"

namespace sic::kernels {

// Data-parallel inner loops shared by the DSP and network code. Every kernel
// comes in a serial reference and an OpenMP variant; the parallel version
// distributes whole output elements and keeps the per-element summation
// order of the serial one, so the two are bit-identical for any thread
// count. The unsuffixed entry points dispatch on problem size.

// Full linear convolution, y[n] = sum_k h[k] x[n-k], length Nx+Nh-1.
CVec fir_serial(const CVec& x, const CVec& h);
CVec fir_parallel(const CVec& x, const CVec& h);
CVec fir(const CVec& x, const CVec& h);

// Sliding cross-correlation against a template:
// c[i] = sum_k conj(p[k]) x[i+k], i in [0, Nx-Np].
CVec xcorr_serial(const CVec& x, const CVec& p);
CVec xcorr_parallel(const CVec& x, const CVec& p);
CVec xcorr(const CVec& x, const CVec& p);

// Row-major dense layer kernels (used by the MLP).
// out[B x N] = a[B x M] * w[M x N] (+ bias[N] if bias != nullptr)
void dense_forward_serial(const double* a, int B, int M, const double* w,
                          int N, const double* bias, double* out);
void dense_forward_parallel(const double* a, int B, int M, const double* w,
                            int N, const double* bias, double* out);
void dense_forward(const double* a, int B, int M, const double* w, int N,
                   const double* bias, double* out);

// dw[M x N]: dw[m][n] = sum_b a[b][m] * d[b][n]
void dense_grad_w_serial(const double* a, int B, int M, const double* d,
                         int N, double* dw);
void dense_grad_w_parallel(const double* a, int B, int M, const double* d,
                           int N, double* dw);
void dense_grad_w(const double* a, int B, int M, const double* d, int N,
                  double* dw);

// dx[B x M]: dx[b][m] = sum_n d[b][n] * w[m][n]
void dense_grad_x_serial(const double* d, int B, int N, const double* w,
                         int M, double* dx);
void dense_grad_x_parallel(const double* d, int B, int N, const double* w,
                           int M, double* dx);
void dense_grad_x(const double* d, int B, int N, const double* w, int M,
                  double* dx);

// Normal equations for FIR least squares over aligned x/y. Windows run
// oldest-to-newest history, taps index k multiplies x[n-k]:
//   g[i*K+j] = sum_n conj(x[n-i]) x[n-j]
//   b[i]     = sum_n conj(x[n-i]) y[n]
// with n from K-1 to N-1. g is Hermitian; both triangles are filled.
void ls_normal_serial(const CVec& x, const CVec& y, int K, CVec& g, CVec& b);
void ls_normal_parallel(const CVec& x, const CVec& y, int K, CVec& g, CVec& b);
void ls_normal(const CVec& x, const CVec& y, int K, CVec& g, CVec& b);

}  // namespace sic::kernels
