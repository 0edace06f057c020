#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "depsent/kernels.hpp"

using namespace depsent::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::vector<double> v(n);
  std::normal_distribution<double> d(0.0, 1.0);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("affine_batch matches a hand computation") {
  const std::vector<double> w = {1, 2, 3, 4, 5, 6};  // 2 x 3
  const std::vector<double> b = {0.5, -1};
  const std::vector<double> x = {1, 0, -1, 2, 1, 0};  // 2 x 3
  std::vector<double> y(4);
  serial::affine_batch(w, b, x, 2, 2, 3, y);
  CHECK(y == std::vector<double>{0.5 + 1 - 3, -1 + 4 - 6, 0.5 + 2 + 2, -1 + 8 + 5});
}

TEST_CASE("accumulate_outer adds to the existing matrix") {
  const std::vector<double> d = {1, 2, 3, 4};  // batch 2 x rows 2
  const std::vector<double> x = {1, -1, 0.5, 2};  // batch 2 x cols 2
  std::vector<double> dw = {10, 10, 10, 10};
  serial::accumulate_outer(d, x, 2, 2, 2, dw);
  CHECK(dw == std::vector<double>{10 + 1 * 1 + 3 * 0.5, 10 + 1 * -1 + 3 * 2, 10 + 2 * 1 + 4 * 0.5, 10 + 2 * -1 + 4 * 2});
}

TEST_CASE("adam_update matches the closed form at step one") {
  std::vector<double> p = {1.0, -2.0};
  const std::vector<double> g = {1.0, 0.0};
  std::vector<double> m = {0.0, 0.0};
  std::vector<double> v = {0.0, 0.0};
  serial::adam_update(p, g, m, v, {1e-3, 0.9, 0.999, 1e-8, 1});
  CHECK(m[0] == doctest::Approx(0.1));
  CHECK(v[0] == doctest::Approx(0.001));
  CHECK(p[0] == doctest::Approx(1.0 - 1e-3 * 1.0 / (1.0 + 1e-8)).epsilon(1e-12));
  CHECK(p[1] == -2.0);
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  std::mt19937_64 rng(7);
  using Dims = std::array<std::size_t, 3>;
  for (const Dims& dims : {Dims{1, 1, 1}, Dims{3, 5, 7}, Dims{32, 16, 40}, Dims{7, 128, 300}, Dims{0, 4, 4}}) {
    const auto [batch, rows, cols] = dims;
    const auto w = random_vec(rows * cols, rng);
    const auto b = random_vec(rows, rng);
    const auto x = random_vec(batch * cols, rng);
    std::vector<double> ys(batch * rows), yp(batch * rows);
    serial::affine_batch(w, b, x, batch, rows, cols, ys);
    parallel::affine_batch(w, b, x, batch, rows, cols, yp);
    CHECK(ys == yp);

    auto d = random_vec(batch * rows, rng);
    if (!d.empty()) d[0] = 0.0;
    auto dws = random_vec(rows * cols, rng);
    auto dwp = dws;
    serial::accumulate_outer(d, x, batch, rows, cols, dws);
    parallel::accumulate_outer(d, x, batch, rows, cols, dwp);
    CHECK(dws == dwp);

    auto ps = random_vec(rows * cols, rng);
    auto pp = ps;
    const auto g = random_vec(rows * cols, rng);
    std::vector<double> ms(ps.size()), vs(ps.size()), mp(ps.size()), vp(ps.size());
    for (long step = 1; step <= 3; ++step) {
      serial::adam_update(ps, g, ms, vs, {1e-2, 0.9, 0.999, 1e-8, step});
      parallel::adam_update(pp, g, mp, vp, {1e-2, 0.9, 0.999, 1e-8, step});
    }
    CHECK(ps == pp);
    CHECK(ms == mp);
    CHECK(vs == vp);
  }
}

TEST_CASE("policy dispatch") {
  const std::vector<double> w = {2};
  const std::vector<double> b = {1};
  const std::vector<double> x = {3};
  std::vector<double> y(1);
  affine_batch(Policy::Parallel, w, b, x, 1, 1, 1, y);
  CHECK(y[0] == 7.0);
  affine_batch(Policy::Serial, w, b, x, 1, 1, 1, y);
  CHECK(y[0] == 7.0);
  CHECK(max_threads() >= 1);
}
