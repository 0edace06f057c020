// Serial reference vs OpenMP kernels. Arg 0 selects the policy (0 serial, 1 parallel).

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "depsent/fallback.hpp"
#include "depsent/harness.hpp"
#include "depsent/kernels.hpp"
#include "support/support.hpp"

using namespace depsent;

namespace {

kernels::Policy policy(const benchmark::State& state) {
  return state.range(0) == 0 ? kernels::Policy::Serial : kernels::Policy::Parallel;
}

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

void BM_AffineBatch(benchmark::State& state) {
  const std::size_t batch = 32, rows = 128, cols = static_cast<std::size_t>(state.range(1));
  const auto w = random_vec(rows * cols, 1);
  const auto b = random_vec(rows, 2);
  const auto x = random_vec(batch * cols, 3);
  std::vector<double> y(batch * rows);
  for (auto _ : state) {
    kernels::affine_batch(policy(state), w, b, x, batch, rows, cols, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(batch * rows * cols));
}
BENCHMARK(BM_AffineBatch)->ArgsProduct({{0, 1}, {300, 15000}});

void BM_AccumulateOuter(benchmark::State& state) {
  const std::size_t batch = 32, rows = 128, cols = static_cast<std::size_t>(state.range(1));
  const auto d = random_vec(batch * rows, 4);
  const auto x = random_vec(batch * cols, 5);
  std::vector<double> dw(rows * cols);
  for (auto _ : state) {
    kernels::accumulate_outer(policy(state), d, x, batch, rows, cols, dw);
    benchmark::DoNotOptimize(dw.data());
  }
}
BENCHMARK(BM_AccumulateOuter)->ArgsProduct({{0, 1}, {300, 15000}});

void BM_AdamUpdate(benchmark::State& state) {
  const std::size_t n = 1'920'386;  // parameters of the default 50 x 300 x 128 network
  auto p = random_vec(n, 6);
  const auto g = random_vec(n, 7);
  std::vector<double> m(n), v(n);
  long step = 0;
  for (auto _ : state) {
    kernels::adam_update(policy(state), p, g, m, v, {1e-3, 0.9, 0.999, 1e-8, ++step});
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_AdamUpdate)->Arg(0)->Arg(1);

void BM_GradBatch(benchmark::State& state) {
  const ModelShape shape{50, 300, 128};
  const auto model = FallbackModel::initialize(shape, 13);
  const std::size_t batch = 32;
  const auto xs = random_vec(batch * shape.input(), 8);
  std::vector<std::size_t> labels(batch);
  for (std::size_t i = 0; i < batch; ++i) labels[i] = i % 2;
  for (auto _ : state) {
    auto g = grad_batch(model, xs, labels, policy(state));
    benchmark::DoNotOptimize(g.loss_sum);
  }
}
BENCHMARK(BM_GradBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EvaluateRulesOnly(benchmark::State& state) {
  test::TreeGenerator gen(3);
  std::vector<LabeledSentence> data;
  for (int i = 0; i < 3000; ++i) data.push_back({gen.next(40), i % 2 ? Polarity::Negative : Polarity::Positive});
  Lexicon::Map entries;
  for (int w = 0; w <= 40; w += 2) entries["w" + std::to_string(w)] = (w % 4 ? 0.1 : -0.1) * (1 + w % 5);
  const Lexicon lex("synthetic", entries);
  const auto cfg = RuleConfig::defaults();
  for (auto _ : state) {
    auto r = evaluate_rules_only(data, lex, cfg, policy(state));
    benchmark::DoNotOptimize(r.metrics.accuracy);
  }
}
BENCHMARK(BM_EvaluateRulesOnly)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
