#include <cmath>

#include "depsent/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace depsent::kernels {

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel {

// Loops are split over output elements only; the inner accumulation order
// matches serial.cpp exactly.

void affine_batch(std::span<const double> w, std::span<const double> bias, std::span<const double> x,
                  std::size_t batch, std::size_t rows, std::size_t cols, std::span<double> y) {
  const auto total = static_cast<long long>(batch * rows);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < total; ++i) {
    const auto b = static_cast<std::size_t>(i) / rows;
    const auto r = static_cast<std::size_t>(i) % rows;
    const double* xb = x.data() + b * cols;
    const double* wr = w.data() + r * cols;
    double acc = bias[r];
    for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * xb[c];
    y[b * rows + r] = acc;
  }
}

void accumulate_outer(std::span<const double> d, std::span<const double> x, std::size_t batch, std::size_t rows,
                      std::size_t cols, std::span<double> dw) {
  const auto n = static_cast<long long>(rows);
#pragma omp parallel for schedule(static)
  for (long long ri = 0; ri < n; ++ri) {
    const auto r = static_cast<std::size_t>(ri);
    double* out = dw.data() + r * cols;
    for (std::size_t b = 0; b < batch; ++b) {
      const double g = d[b * rows + r];
      if (g == 0.0) continue;
      const double* xb = x.data() + b * cols;
      for (std::size_t c = 0; c < cols; ++c) out[c] += g * xb[c];
    }
  }
}

void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m, std::span<double> v,
                 const AdamCoefficients& k) {
  const double c1 = 1.0 - std::pow(k.beta1, static_cast<double>(k.step));
  const double c2 = 1.0 - std::pow(k.beta2, static_cast<double>(k.step));
  const auto n = static_cast<long long>(params.size());
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double g = grads[i];
    m[i] = k.beta1 * m[i] + (1.0 - k.beta1) * g;
    v[i] = k.beta2 * v[i] + (1.0 - k.beta2) * g * g;
    params[i] -= k.lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + k.eps);
  }
}

}  // namespace parallel
}  // namespace depsent::kernels
