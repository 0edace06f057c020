#ifndef DEPSENT_KERNELS_HPP
#define DEPSENT_KERNELS_HPP

#include <cstddef>
#include <span>

// Dense kernels behind the fallback network. Every kernel exists in a serial
// reference form and an OpenMP form. Work is split over output elements and
// each element is accumulated in the same order in both forms, so the two
// produce bitwise-identical results for any thread count.

namespace depsent::kernels {

enum class Policy { Serial, Parallel };

/// True when the parallel kernels were compiled with OpenMP.
bool openmp_enabled();
int max_threads();

struct AdamCoefficients {
  double lr;
  double beta1;
  double beta2;
  double eps;
  long step;  // already incremented, >= 1
};

namespace serial {
// Y[b, r] = bias[r] + sum_c W[r, c] * X[b, c]; W is rows x cols, X is batch x cols.
void affine_batch(std::span<const double> w, std::span<const double> bias, std::span<const double> x,
                  std::size_t batch, std::size_t rows, std::size_t cols, std::span<double> y);
// dW[r, c] += sum_b D[b, r] * X[b, c], summed over b in ascending order.
void accumulate_outer(std::span<const double> d, std::span<const double> x, std::size_t batch, std::size_t rows,
                      std::size_t cols, std::span<double> dw);
// Bias-corrected Adam step; moments are updated in place.
void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, const AdamCoefficients& k);
}  // namespace serial

namespace parallel {
// Same contracts as serial::.
// Y[b, r] = bias[r] + sum_c W[r, c] * X[b, c]; W is rows x cols, X is batch x cols.
void affine_batch(std::span<const double> w, std::span<const double> bias, std::span<const double> x,
                  std::size_t batch, std::size_t rows, std::size_t cols, std::span<double> y);
// dW[r, c] += sum_b D[b, r] * X[b, c], summed over b in ascending order.
void accumulate_outer(std::span<const double> d, std::span<const double> x, std::size_t batch, std::size_t rows,
                      std::size_t cols, std::span<double> dw);
// Bias-corrected Adam step; moments are updated in place.
void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, const AdamCoefficients& k);
}  // namespace parallel

inline void affine_batch(Policy p, std::span<const double> w, std::span<const double> bias,
                         std::span<const double> x, std::size_t batch, std::size_t rows, std::size_t cols,
                         std::span<double> y) {
  p == Policy::Serial ? serial::affine_batch(w, bias, x, batch, rows, cols, y)
                      : parallel::affine_batch(w, bias, x, batch, rows, cols, y);
}

inline void accumulate_outer(Policy p, std::span<const double> d, std::span<const double> x, std::size_t batch,
                             std::size_t rows, std::size_t cols, std::span<double> dw) {
  p == Policy::Serial ? serial::accumulate_outer(d, x, batch, rows, cols, dw)
                      : parallel::accumulate_outer(d, x, batch, rows, cols, dw);
}

inline void adam_update(Policy p, std::span<double> params, std::span<const double> grads, std::span<double> m,
                        std::span<double> v, const AdamCoefficients& k) {
  p == Policy::Serial ? serial::adam_update(params, grads, m, v, k) : parallel::adam_update(params, grads, m, v, k);
}

}  // namespace depsent::kernels

#endif  // DEPSENT_KERNELS_HPP
