#include "sic/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace sic::kernels {

namespace {

// Below these work sizes the OpenMP fork/join overhead dominates.
constexpr std::int64_t kFirThreshold = 1 << 15;
constexpr std::int64_t kDenseThreshold = 1 << 14;

cplx fir_tap(const CVec& x, const CVec& h, std::int64_t n) {
    const std::int64_t nx = std::int64_t(x.size());
    const std::int64_t k_lo = std::max<std::int64_t>(0, n - nx + 1);
    const std::int64_t k_hi = std::min<std::int64_t>(std::int64_t(h.size()) - 1, n);
    cplx acc = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) acc += h[k] * x[n - k];
    return acc;
}

cplx xcorr_tap(const CVec& x, const CVec& p, std::int64_t i) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) acc += std::conj(p[k]) * x[i + k];
    return acc;
}

}  // namespace

CVec fir_serial(const CVec& x, const CVec& h) {
    if (h.empty()) throw std::invalid_argument("fir: empty taps");
    if (x.empty()) return {};
    CVec y(x.size() + h.size() - 1);
    for (std::int64_t n = 0; n < std::int64_t(y.size()); ++n) y[n] = fir_tap(x, h, n);
    return y;
}

CVec fir_parallel(const CVec& x, const CVec& h) {
    if (h.empty()) throw std::invalid_argument("fir: empty taps");
    if (x.empty()) return {};
    CVec y(x.size() + h.size() - 1);
    const std::int64_t ny = std::int64_t(y.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t n = 0; n < ny; ++n) y[n] = fir_tap(x, h, n);
    return y;
}

CVec fir(const CVec& x, const CVec& h) {
    if (std::int64_t(x.size()) * std::int64_t(h.size()) < kFirThreshold)
        return fir_serial(x, h);
    return fir_parallel(x, h);
}

CVec xcorr_serial(const CVec& x, const CVec& p) {
    if (p.empty()) throw std::invalid_argument("xcorr: empty template");
    if (x.size() < p.size()) throw std::invalid_argument("xcorr: signal shorter than template");
    CVec c(x.size() - p.size() + 1);
    for (std::int64_t i = 0; i < std::int64_t(c.size()); ++i) c[i] = xcorr_tap(x, p, i);
    return c;
}

CVec xcorr_parallel(const CVec& x, const CVec& p) {
    if (p.empty()) throw std::invalid_argument("xcorr: empty template");
    if (x.size() < p.size()) throw std::invalid_argument("xcorr: signal shorter than template");
    CVec c(x.size() - p.size() + 1);
    const std::int64_t nc = std::int64_t(c.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nc; ++i) c[i] = xcorr_tap(x, p, i);
    return c;
}

CVec xcorr(const CVec& x, const CVec& p) {
    if (std::int64_t(x.size()) * std::int64_t(p.size()) < kFirThreshold)
        return xcorr_serial(x, p);
    return xcorr_parallel(x, p);
}

void dense_forward_serial(const double* a, int B, int M, const double* w,
                          int N, const double* bias, double* out) {
    for (int b = 0; b < B; ++b) {
        for (int n = 0; n < N; ++n) {
            double acc = bias ? bias[n] : 0.0;
            for (int m = 0; m < M; ++m) acc += a[b * M + m] * w[m * N + n];
            out[b * N + n] = acc;
        }
    }
}

void dense_forward_parallel(const double* a, int B, int M, const double* w,
                            int N, const double* bias, double* out) {
#pragma omp parallel for schedule(static)
    for (int b = 0; b < B; ++b) {
        for (int n = 0; n < N; ++n) {
            double acc = bias ? bias[n] : 0.0;
            for (int m = 0; m < M; ++m) acc += a[b * M + m] * w[m * N + n];
            out[b * N + n] = acc;
        }
    }
}

void dense_forward(const double* a, int B, int M, const double* w, int N,
                   const double* bias, double* out) {
    if (std::int64_t(B) * M * N < kDenseThreshold)
        dense_forward_serial(a, B, M, w, N, bias, out);
    else
        dense_forward_parallel(a, B, M, w, N, bias, out);
}

void dense_grad_w_serial(const double* a, int B, int M, const double* d,
                         int N, double* dw) {
    for (int m = 0; m < M; ++m) {
        for (int n = 0; n < N; ++n) {
            double acc = 0.0;
            for (int b = 0; b < B; ++b) acc += a[b * M + m] * d[b * N + n];
            dw[m * N + n] = acc;
        }
    }
}

void dense_grad_w_parallel(const double* a, int B, int M, const double* d,
                           int N, double* dw) {
#pragma omp parallel for schedule(static)
    for (int m = 0; m < M; ++m) {
        for (int n = 0; n < N; ++n) {
            double acc = 0.0;
            for (int b = 0; b < B; ++b) acc += a[b * M + m] * d[b * N + n];
            dw[m * N + n] = acc;
        }
    }
}

void dense_grad_w(const double* a, int B, int M, const double* d, int N,
                  double* dw) {
    if (std::int64_t(B) * M * N < kDenseThreshold)
        dense_grad_w_serial(a, B, M, d, N, dw);
    else
        dense_grad_w_parallel(a, B, M, d, N, dw);
}

void dense_grad_x_serial(const double* d, int B, int N, const double* w,
                         int M, double* dx) {
    for (int b = 0; b < B; ++b) {
        for (int m = 0; m < M; ++m) {
            double acc = 0.0;
            for (int n = 0; n < N; ++n) acc += d[b * N + n] * w[m * N + n];
            dx[b * M + m] = acc;
        }
    }
}

void dense_grad_x_parallel(const double* d, int B, int N, const double* w,
                           int M, double* dx) {
#pragma omp parallel for schedule(static)
    for (int b = 0; b < B; ++b) {
        for (int m = 0; m < M; ++m) {
            double acc = 0.0;
            for (int n = 0; n < N; ++n) acc += d[b * N + n] * w[m * N + n];
            dx[b * M + m] = acc;
        }
    }
}

void dense_grad_x(const double* d, int B, int N, const double* w, int M,
                  double* dx) {
    if (std::int64_t(B) * M * N < kDenseThreshold)
        dense_grad_x_serial(d, B, N, w, M, dx);
    else
        dense_grad_x_parallel(d, B, N, w, M, dx);
}

namespace {

void ls_normal_entry(const CVec& x, const CVec& y, int K, int i, int j,
                     CVec& g, CVec& b) {
    const std::int64_t n_lo = K - 1;
    const std::int64_t n_hi = std::int64_t(x.size()) - 1;
    cplx acc = 0.0;
    if (j >= 0) {  // Gram entry (i, j)
        for (std::int64_t n = n_lo; n <= n_hi; ++n)
            acc += std::conj(x[n - i]) * x[n - j];
        g[std::size_t(i) * K + j] = acc;
        g[std::size_t(j) * K + i] = std::conj(acc);
    } else {  // right-hand side entry i
        for (std::int64_t n = n_lo; n <= n_hi; ++n)
            acc += std::conj(x[n - i]) * y[n];
        b[i] = acc;
    }
}

}  // namespace

void ls_normal_serial(const CVec& x, const CVec& y, int K, CVec& g, CVec& b) {
    if (K < 1 || x.size() != y.size() || std::int64_t(x.size()) < K)
        throw std::invalid_argument("ls_normal: bad dimensions");
    g.assign(std::size_t(K) * K, 0.0);
    b.assign(K, 0.0);
    for (int i = 0; i < K; ++i) {
        for (int j = i; j < K; ++j) ls_normal_entry(x, y, K, i, j, g, b);
        ls_normal_entry(x, y, K, i, -1, g, b);
    }
}

void ls_normal_parallel(const CVec& x, const CVec& y, int K, CVec& g, CVec& b) {
    if (K < 1 || x.size() != y.size() || std::int64_t(x.size()) < K)
        throw std::invalid_argument("ls_normal: bad dimensions");
    g.assign(std::size_t(K) * K, 0.0);
    b.assign(K, 0.0);
    // flatten the upper triangle plus the rhs column into one index space
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < K; ++i) {
        for (int j = i; j < K; ++j) ls_normal_entry(x, y, K, i, j, g, b);
        ls_normal_entry(x, y, K, i, -1, g, b);
    }
}

void ls_normal(const CVec& x, const CVec& y, int K, CVec& g, CVec& b) {
    if (std::int64_t(x.size()) * K < kFirThreshold)
        ls_normal_serial(x, y, K, g, b);
    else
        ls_normal_parallel(x, y, K, g, b);
}

}  // namespace sic::kernels
