#include "fpu/kernels.hpp"

namespace fpu::kernels {
namespace {

double cubic_sum_scalar(const std::int32_t* l, const std::int32_t* m, const std::int32_t* n,
                        const double* w, std::size_t count, const double* q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        acc += w[i] * q[l[i]] * q[m[i]] * q[n[i]];
    }
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void rk4_combine_scalar(double h, const double* x, const double* k1, const double* k2,
                        const double* k3, const double* k4, double* y, std::size_t n) {
    const double c = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", cubic_sum_scalar, axpy_scalar, rk4_combine_scalar};
    return b;
}

}  // namespace fpu::kernels
