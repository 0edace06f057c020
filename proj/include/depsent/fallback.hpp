#ifndef DEPSENT_FALLBACK_HPP
#define DEPSENT_FALLBACK_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "depsent/core.hpp"
#include "depsent/ingest.hpp"
#include "depsent/kernels.hpp"

namespace depsent {

class DimMismatchError : public FormatError {
 public:
  using FormatError::FormatError;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

class ModelFileError : public Error {
 public:
  using Error::Error;
};

class VersionError : public ModelFileError {
 public:
  using ModelFileError::ModelFileError;
};

class ChecksumError : public ModelFileError {
 public:
  using ModelFileError::ModelFileError;
};

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim = 300);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }
  bool contains(std::string_view word) const;

  /// Adds a vector; returns false (and keeps the old one) if `word` exists.
  /// Throws DimMismatchError on a wrong length or non-finite component.
  bool add(std::string word, std::span<const double> vector);

  /// The word's vector, or the all-zero vector when it is unknown.
  std::span<const double> lookup(std::string_view word) const;

 private:
  std::size_t dim_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
  std::vector<double> zeros_;
};

struct EmbeddingLoad {
  EmbeddingTable table;
  std::size_t declared_count = 0;
  std::vector<std::string> warnings;
};

/// fastText text format: a "count dim" header, then "word v1 ... vk" rows.
/// Words are stored in normalized form so they match Token::normalized; when
/// two rows normalize to the same word the first one is kept.
EmbeddingLoad load_embeddings(std::istream& in, const Normalizer* normalizer = nullptr);
EmbeddingLoad load_embeddings(const std::filesystem::path& path, const Normalizer* normalizer = nullptr);

/// Concatenates the vectors of the first min(len, n) words and zero-pads to n*k.
std::vector<double> vectorize(std::span<const std::string> words, const EmbeddingTable& table, std::size_t n);
/// Uses the normalized token forms.
std::vector<double> vectorize(const DepSentence& sentence, const EmbeddingTable& table, std::size_t n);

// ---------------------------------------------------------------------------
// Network
// ---------------------------------------------------------------------------

struct ModelShape {
  std::size_t max_len = 50;
  std::size_t dim = 300;
  std::size_t hidden = 128;

  std::size_t input() const { return max_len * dim; }
  std::size_t parameter_count() const { return hidden * input() + hidden + 2 * hidden + 2; }
  bool operator==(const ModelShape&) const = default;
};

/// Output class 0 is Negative, class 1 is Positive.
inline constexpr std::size_t kNegativeClass = 0;
inline constexpr std::size_t kPositiveClass = 1;
std::size_t class_index(Polarity p);

/// A flat parameter vector laid out as W1 (hidden x input, row-major), b1,
/// W2 (2 x hidden), b2. Gradients and Adam moments share the layout.
class ParameterBlock {
 public:
  ParameterBlock() = default;
  explicit ParameterBlock(ModelShape shape) : shape_(shape), values_(shape.parameter_count(), 0.0) {}

  const ModelShape& shape() const { return shape_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  std::span<double> w1() { return span(0, shape_.hidden * shape_.input()); }
  std::span<double> b1() { return span(w1_end(), shape_.hidden); }
  std::span<double> w2() { return span(w1_end() + shape_.hidden, 2 * shape_.hidden); }
  std::span<double> b2() { return span(w1_end() + 3 * shape_.hidden, 2); }
  std::span<const double> w1() const { return cspan(0, shape_.hidden * shape_.input()); }
  std::span<const double> b1() const { return cspan(w1_end(), shape_.hidden); }
  std::span<const double> w2() const { return cspan(w1_end() + shape_.hidden, 2 * shape_.hidden); }
  std::span<const double> b2() const { return cspan(w1_end() + 3 * shape_.hidden, 2); }

 private:
  std::size_t w1_end() const { return shape_.hidden * shape_.input(); }
  std::span<double> span(std::size_t off, std::size_t len) { return {values_.data() + off, len}; }
  std::span<const double> cspan(std::size_t off, std::size_t len) const { return {values_.data() + off, len}; }

  ModelShape shape_;
  std::vector<double> values_;
};

using Gradients = ParameterBlock;

struct FallbackModel {
  ParameterBlock params;
  ParameterBlock adam_m;
  ParameterBlock adam_v;
  long step = 0;
  std::uint64_t seed = 0;

  /// He-normal hidden weights, Glorot-normal output weights, zero biases.
  static FallbackModel initialize(ModelShape shape, std::uint64_t seed);
  /// All parameters zero; predicts the tie class for every input.
  static FallbackModel zeros(ModelShape shape);

  const ModelShape& shape() const { return params.shape(); }
};

using Probabilities = std::array<double, 2>;

/// Softmax(W2 relu(W1 x + b1) + b2), log-sum-exp stabilised.
Probabilities forward(const FallbackModel& model, std::span<const double> x);
/// Row-major batch of inputs; returns 2 probabilities per row.
std::vector<double> forward_batch(const FallbackModel& model, std::span<const double> xs, std::size_t batch,
                                  kernels::Policy policy = kernels::Policy::Serial);

/// -log p[label], with p clamped to at least 1e-12.
double loss(const Probabilities& p, std::size_t label);

Gradients grad(const FallbackModel& model, std::span<const double> x, std::size_t label);

struct BatchGradient {
  Gradients gradients;  // of the summed (not averaged) loss
  double loss_sum = 0.0;
};
BatchGradient grad_batch(const FallbackModel& model, std::span<const double> xs, std::span<const std::size_t> labels,
                         kernels::Policy policy = kernels::Policy::Serial);

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// One bias-corrected Adam update; increments model.step.
void adam_step(FallbackModel& model, const Gradients& g, const AdamOptions& opt = {},
               kernels::Policy policy = kernels::Policy::Serial);

struct Dataset {
  std::size_t dim = 0;
  std::vector<double> x;
  std::vector<std::size_t> labels;

  explicit Dataset(std::size_t input_dim = 0) : dim(input_dim) {}
  std::size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }
  void add(std::span<const double> row, std::size_t label);
  std::span<const double> row(std::size_t i) const { return {x.data() + i * dim, dim}; }
};

struct TrainOptions {
  std::size_t epochs = 200;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  AdamOptions adam;
  /// Validation data for val_loss and early stopping; may be null.
  const Dataset* validation = nullptr;
  /// Stop after this many epochs without a validation-loss improvement and
  /// restore the best weights. 0 disables early stopping.
  std::size_t patience = 0;
  kernels::Policy policy = kernels::Policy::Parallel;
};

struct TrainHistory {
  std::vector<double> loss;      // mean training loss per epoch
  std::vector<double> val_loss;  // empty without validation data
  std::size_t best_epoch = 0;    // 1-based, 0 when no validation data
  bool stopped_early = false;
};

/// Mini-batch Adam on mean cross-entropy. The shuffle order is driven by
/// options.seed, so equal inputs give bitwise-equal results.
TrainHistory train(FallbackModel& model, const Dataset& data, const TrainOptions& options);

double mean_loss(const FallbackModel& model, const Dataset& data, kernels::Policy policy = kernels::Policy::Serial);

/// Argmax of forward(); an exact tie goes to Positive. Never Unclassified.
Polarity predict(const FallbackModel& model, std::span<const double> x);

/// Binary layout: magic "HPSAFFN\0", u32 version, u32 n, k, h, u64 seed,
/// u64 parameter count, the parameters as little-endian f64, then a 64-bit
/// FNV-1a checksum of everything before it.
void save_model(const FallbackModel& model, const std::filesystem::path& path);
void save_model(const FallbackModel& model, std::ostream& out);
FallbackModel load_model(const std::filesystem::path& path);
FallbackModel load_model(std::istream& in);

inline constexpr std::uint32_t kModelFileVersion = 1;

}  // namespace depsent

#endif  // DEPSENT_FALLBACK_HPP
