#include <cmath>

#include "depsent/kernels.hpp"

namespace depsent::kernels::serial {

void affine_batch(std::span<const double> w, std::span<const double> bias, std::span<const double> x,
                  std::size_t batch, std::size_t rows, std::size_t cols, std::span<double> y) {
  for (std::size_t b = 0; b < batch; ++b) {
    const double* xb = x.data() + b * cols;
    for (std::size_t r = 0; r < rows; ++r) {
      const double* wr = w.data() + r * cols;
      double acc = bias[r];
      for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * xb[c];
      y[b * rows + r] = acc;
    }
  }
}

void accumulate_outer(std::span<const double> d, std::span<const double> x, std::size_t batch, std::size_t rows,
                      std::size_t cols, std::span<double> dw) {
  for (std::size_t r = 0; r < rows; ++r) {
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
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    m[i] = k.beta1 * m[i] + (1.0 - k.beta1) * g;
    v[i] = k.beta2 * v[i] + (1.0 - k.beta2) * g * g;
    params[i] -= k.lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + k.eps);
  }
}

}  // namespace depsent::kernels::serial
