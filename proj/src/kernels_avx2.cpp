// AVX2/FMA kernel variants. Compiled with -mavx2 -mfma; only reached after
// the dispatcher has confirmed CPU support.

#if defined(__x86_64__)

#include <immintrin.h>

#include "fpu/kernels.hpp"

namespace fpu::kernels {
namespace {

double cubic_sum_avx2(const std::int32_t* l, const std::int32_t* m, const std::int32_t* n,
                      const double* w, std::size_t count, const double* q) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m128i il = _mm_loadu_si128(reinterpret_cast<const __m128i*>(l + i));
        const __m128i im = _mm_loadu_si128(reinterpret_cast<const __m128i*>(m + i));
        const __m128i in = _mm_loadu_si128(reinterpret_cast<const __m128i*>(n + i));
        const __m256d ql = _mm256_i32gather_pd(q, il, 8);
        const __m256d qm = _mm256_i32gather_pd(q, im, 8);
        const __m256d qn = _mm256_i32gather_pd(q, in, 8);
        const __m256d wv = _mm256_loadu_pd(w + i);
        acc = _mm256_fmadd_pd(wv, _mm256_mul_pd(ql, _mm256_mul_pd(qm, qn)), acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double sum = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < count; ++i) {
        sum += w[i] * q[l[i]] * q[m[i]] * q[n[i]];
    }
    return sum;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void rk4_combine_avx2(double h, const double* x, const double* k1, const double* k2,
                      const double* k3, const double* k4, double* y, std::size_t n) {
    const double c = h / 6.0;
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s = _mm256_loadu_pd(k1 + i);
        s = _mm256_fmadd_pd(two, _mm256_loadu_pd(k2 + i), s);
        s = _mm256_fmadd_pd(two, _mm256_loadu_pd(k3 + i), s);
        s = _mm256_add_pd(s, _mm256_loadu_pd(k4 + i));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(cv, s, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) {
        y[i] = x[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

}  // namespace

const Backend& avx2_backend() {
    static const Backend b{"avx2", cubic_sum_avx2, axpy_avx2, rk4_combine_avx2};
    return b;
}

}  // namespace fpu::kernels

#endif  // __x86_64__
