#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "depsent/fallback.hpp"

namespace depsent {

double mean_loss(const FallbackModel& model, const Dataset& data, kernels::Policy policy) {
  if (data.empty()) throw EmptyDatasetError("cannot compute the loss of an empty dataset");
  constexpr std::size_t kChunk = 256;
  double total = 0.0;
  for (std::size_t start = 0; start < data.size(); start += kChunk) {
    const auto n = std::min(kChunk, data.size() - start);
    const auto p = forward_batch(model, {data.x.data() + start * data.dim, n * data.dim}, n, policy);
    for (std::size_t i = 0; i < n; ++i) total += loss({p[2 * i], p[2 * i + 1]}, data.labels[start + i]);
  }
  return total / static_cast<double>(data.size());
}

TrainHistory train(FallbackModel& model, const Dataset& data, const TrainOptions& options) {
  if (data.empty()) throw EmptyDatasetError("training set is empty");
  if (data.dim != model.shape().input()) throw Error("dataset dimension does not match the model input");
  if (options.batch_size == 0) throw Error("batch size must be positive");
  const Dataset* val = options.validation;
  if (val && val->empty()) val = nullptr;

  TrainHistory history;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);

  std::vector<double> xs;
  std::vector<std::size_t> ys;
  std::optional<FallbackModel> best;
  double best_val = std::numeric_limits<double>::infinity();
  std::size_t stale = 0;

  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += options.batch_size) {
      const auto n = std::min(options.batch_size, order.size() - start);
      xs.clear();
      ys.clear();
      for (std::size_t i = start; i < start + n; ++i) {
        const auto row = data.row(order[i]);
        xs.insert(xs.end(), row.begin(), row.end());
        ys.push_back(data.labels[order[i]]);
      }
      auto bg = grad_batch(model, xs, ys, options.policy);
      const double inv = 1.0 / static_cast<double>(n);
      for (double& g : bg.gradients.values()) g *= inv;
      adam_step(model, bg.gradients, options.adam, options.policy);
      epoch_loss += bg.loss_sum;
    }
    history.loss.push_back(epoch_loss / static_cast<double>(data.size()));

    if (!val) continue;
    const double v = mean_loss(model, *val, options.policy);
    history.val_loss.push_back(v);
    if (v < best_val) {
      best_val = v;
      history.best_epoch = epoch;
      stale = 0;
      if (options.patience > 0) best = model;
    } else if (options.patience > 0 && ++stale >= options.patience) {
      history.stopped_early = true;
      break;
    }
  }
  if (best) model = std::move(*best);
  return history;
}

}  // namespace depsent
