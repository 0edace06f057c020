#include <algorithm>
#include <cmath>
#include <random>

#include "depsent/fallback.hpp"

namespace depsent {

namespace {

using kernels::Policy;

void softmax_rows(std::span<double> z, std::size_t batch) {
  for (std::size_t b = 0; b < batch; ++b) {
    double* row = z.data() + 2 * b;
    const double m = std::max(row[0], row[1]);
    const double e0 = std::exp(row[0] - m);
    const double e1 = std::exp(row[1] - m);
    const double s = e0 + e1;
    row[0] = e0 / s;
    row[1] = e1 / s;
  }
}

void check_input(const FallbackModel& model, std::size_t size, std::size_t batch) {
  if (size != batch * model.shape().input()) {
    throw Error("input has " + std::to_string(size) + " values, expected " +
                std::to_string(batch * model.shape().input()));
  }
}

struct Activations {
  std::vector<double> z1;  // batch x hidden, pre-activation
  std::vector<double> h;   // batch x hidden
  std::vector<double> p;   // batch x 2
};

Activations run_forward(const FallbackModel& model, std::span<const double> xs, std::size_t batch, Policy policy) {
  const auto& s = model.shape();
  Activations a;
  a.z1.resize(batch * s.hidden);
  a.h.resize(batch * s.hidden);
  a.p.resize(batch * 2);
  kernels::affine_batch(policy, model.params.w1(), model.params.b1(), xs, batch, s.hidden, s.input(), a.z1);
  for (std::size_t i = 0; i < a.z1.size(); ++i) a.h[i] = a.z1[i] > 0.0 ? a.z1[i] : 0.0;
  kernels::affine_batch(Policy::Serial, model.params.w2(), model.params.b2(), a.h, batch, 2, s.hidden, a.p);
  softmax_rows(a.p, batch);
  return a;
}

}  // namespace

std::size_t class_index(Polarity p) {
  switch (p) {
    case Polarity::Positive:
      return kPositiveClass;
    case Polarity::Negative:
      return kNegativeClass;
    case Polarity::Unclassified:
      break;
  }
  throw Error("Unclassified has no class index");
}

FallbackModel FallbackModel::initialize(ModelShape shape, std::uint64_t seed) {
  FallbackModel m = zeros(shape);
  m.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> hidden(0.0, std::sqrt(2.0 / static_cast<double>(shape.input())));
  for (double& w : m.params.w1()) w = hidden(rng);
  std::normal_distribution<double> output(0.0, std::sqrt(2.0 / static_cast<double>(shape.hidden + 2)));
  for (double& w : m.params.w2()) w = output(rng);
  return m;
}

FallbackModel FallbackModel::zeros(ModelShape shape) {
  if (shape.max_len == 0 || shape.dim == 0 || shape.hidden == 0) throw Error("model dimensions must be positive");
  FallbackModel m;
  m.params = ParameterBlock(shape);
  m.adam_m = ParameterBlock(shape);
  m.adam_v = ParameterBlock(shape);
  return m;
}

Probabilities forward(const FallbackModel& model, std::span<const double> x) {
  check_input(model, x.size(), 1);
  const auto a = run_forward(model, x, 1, Policy::Serial);
  return {a.p[0], a.p[1]};
}

std::vector<double> forward_batch(const FallbackModel& model, std::span<const double> xs, std::size_t batch,
                                  Policy policy) {
  check_input(model, xs.size(), batch);
  return run_forward(model, xs, batch, policy).p;
}

double loss(const Probabilities& p, std::size_t label) { return -std::log(std::max(p.at(label), 1e-12)); }

Gradients grad(const FallbackModel& model, std::span<const double> x, std::size_t label) {
  const std::size_t labels[] = {label};
  return grad_batch(model, x, labels, Policy::Serial).gradients;
}

BatchGradient grad_batch(const FallbackModel& model, std::span<const double> xs, std::span<const std::size_t> labels,
                         Policy policy) {
  const auto& s = model.shape();
  const auto batch = labels.size();
  check_input(model, xs.size(), batch);
  for (auto y : labels) {
    if (y > 1) throw Error("label must be 0 or 1");
  }

  const auto a = run_forward(model, xs, batch, policy);
  BatchGradient out{Gradients(s), 0.0};
  auto& g = out.gradients;

  std::vector<double> d2(a.p);
  for (std::size_t b = 0; b < batch; ++b) {
    out.loss_sum += loss({a.p[2 * b], a.p[2 * b + 1]}, labels[b]);
    d2[2 * b + labels[b]] -= 1.0;
  }

  kernels::serial::accumulate_outer(d2, a.h, batch, 2, s.hidden, g.w2());
  for (std::size_t b = 0; b < batch; ++b) {
    g.b2()[0] += d2[2 * b];
    g.b2()[1] += d2[2 * b + 1];
  }

  const auto w2 = model.params.w2();
  std::vector<double> d1(batch * s.hidden);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t j = 0; j < s.hidden; ++j) {
      const auto i = b * s.hidden + j;
      d1[i] = a.z1[i] > 0.0 ? d2[2 * b] * w2[j] + d2[2 * b + 1] * w2[s.hidden + j] : 0.0;
    }
  }
  kernels::accumulate_outer(policy, d1, xs, batch, s.hidden, s.input(), g.w1());
  auto b1 = g.b1();
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t j = 0; j < s.hidden; ++j) b1[j] += d1[b * s.hidden + j];
  }
  return out;
}

void adam_step(FallbackModel& model, const Gradients& g, const AdamOptions& opt, Policy policy) {
  if (!(g.shape() == model.shape())) throw Error("gradient shape does not match the model");
  ++model.step;
  const kernels::AdamCoefficients k{opt.lr, opt.beta1, opt.beta2, opt.eps, model.step};
  kernels::adam_update(policy, model.params.values(), g.values(), model.adam_m.values(), model.adam_v.values(), k);
}

void Dataset::add(std::span<const double> row, std::size_t label) {
  if (row.size() != dim) throw Error("dataset row has the wrong dimension");
  if (label > 1) throw Error("label must be 0 or 1");
  x.insert(x.end(), row.begin(), row.end());
  labels.push_back(label);
}

Polarity predict(const FallbackModel& model, std::span<const double> x) {
  const auto p = forward(model, x);
  return p[kPositiveClass] >= p[kNegativeClass] ? Polarity::Positive : Polarity::Negative;
}

}  // namespace depsent
