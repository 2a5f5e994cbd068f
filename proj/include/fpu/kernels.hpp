#pragma once

// Runtime-dispatched arithmetic kernels. Scalar reference implementations
// always exist; an AVX2/FMA variant is selected at startup when the CPU
// supports it. Tests compare the backends on random data.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fpu::kernels {

// sum_i w[i] * q[l[i]] * q[m[i]] * q[n[i]]
using cubic_sum_fn = double (*)(const std::int32_t* l, const std::int32_t* m,
                                const std::int32_t* n, const double* w,
                                std::size_t count, const double* q);

// y[i] += a * x[i]
using axpy_fn = void (*)(double a, const double* x, double* y, std::size_t n);

// y[i] = x[i] + (h/6) * (k1[i] + 2 k2[i] + 2 k3[i] + k4[i])
using rk4_combine_fn = void (*)(double h, const double* x, const double* k1,
                                const double* k2, const double* k3,
                                const double* k4, double* y, std::size_t n);

struct Backend {
    const char* name;
    cubic_sum_fn cubic_sum;
    axpy_fn axpy;
    rk4_combine_fn rk4_combine;
};

const Backend& scalar_backend();
#if defined(__x86_64__)
const Backend& avx2_backend();
bool avx2_available();
#endif

// Active backend; chosen once at first use (AVX2 if available, else scalar).
const Backend& active();

// Force a backend by name ("scalar", "avx2"). Returns false if unknown or
// unsupported on this CPU. Intended for tests and benchmarking.
bool select(std::string_view name);

inline double cubic_sum(const std::int32_t* l, const std::int32_t* m, const std::int32_t* n,
                        const double* w, std::size_t count, const double* q) {
    return active().cubic_sum(l, m, n, w, count, q);
}

inline void axpy(double a, const double* x, double* y, std::size_t n) {
    active().axpy(a, x, y, n);
}

inline void rk4_combine(double h, const double* x, const double* k1, const double* k2,
                        const double* k3, const double* k4, double* y, std::size_t n) {
    active().rk4_combine(h, x, k1, k2, k3, k4, y, n);
}

}  // namespace fpu::kernels
