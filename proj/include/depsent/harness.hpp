#ifndef DEPSENT_HARNESS_HPP
#define DEPSENT_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depsent/core.hpp"
#include "depsent/fallback.hpp"
#include "depsent/kernels.hpp"
#include "depsent/lexicon.hpp"
#include "depsent/rules.hpp"

namespace depsent {

class TooSmallError : public Error {
 public:
  using Error::Error;
};

class EmptyError : public Error {
 public:
  using Error::Error;
};

struct LabeledSentence {
  DepSentence sentence;
  Polarity label = Polarity::Positive;
};

/// Pairs corpus record i with tree i; throws FormatError on a count mismatch.
std::vector<LabeledSentence> pair_corpus(const RawCorpus& corpus, std::vector<DepSentence> trees);

// ---------------------------------------------------------------------------
// Hybrid routing
// ---------------------------------------------------------------------------

enum class Provenance { Rule, Fallback };
std::string_view to_string(Provenance p);

struct HybridResult {
  Polarity polarity = Polarity::Unclassified;
  Provenance provenance = Provenance::Rule;
  RuleOutcome rules;  // the rule engine's outcome, always computed
};

/// The fallback network plus the embeddings it was trained on.
struct FallbackClassifier {
  const FallbackModel* model = nullptr;
  const EmbeddingTable* embeddings = nullptr;
};

/// Rules first; the network decides exactly when the rules return
/// Unclassified. Without a fallback (null model) an Unclassified outcome is
/// returned as is, tagged Rule.
HybridResult hybrid_classify(const DepSentence& sentence, const Lexicon& lexicon, const RuleConfig& cfg,
                             const FallbackClassifier& fallback);

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

/// Stratified 60/10/30 split of item indices by label, deterministic in
/// `seed`. Split totals are round-half-up of 60% and 10%; each class gets its
/// share by largest remainder. Throws TooSmallError below 10 items.
DatasetSplit split_dataset(std::span<const Polarity> labels, std::uint64_t seed);

template <typename T>
std::vector<T> select(std::span<const T> items, std::span<const std::size_t> indices) {
  std::vector<T> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(items[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// Positive is the reference class.
struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  void add(Polarity gold, Polarity predicted);
  bool operator==(const Confusion&) const = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double accuracy = 0.0;
  // Set when the matching denominator was zero and the value defaulted to 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f_undefined = false;

  // Means of the positive-reference and negative-reference values.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f_measure = 0.0;
};

/// Throws EmptyError on an all-zero matrix.
Metrics compute_metrics(const Confusion& c);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct AblationRow;

struct EvalReport {
  Confusion confusion;
  Metrics metrics;
  double unclassified_rate = 0.0;  // rules-only mode
  double fallback_rate = 0.0;      // hybrid mode
  std::size_t fallback_positive = 0;
  std::size_t fallback_negative = 0;
  std::vector<Polarity> predictions;
  std::vector<AblationRow> per_rule_rows;
};

struct AblationRow {
  Rule rule;
  EvalReport report;
};

/// Unclassified outcomes count toward unclassified_rate and are scored as
/// Positive.
EvalReport evaluate_rules_only(std::span<const LabeledSentence> data, const Lexicon& lexicon, const RuleConfig& cfg,
                               kernels::Policy policy = kernels::Policy::Parallel);

EvalReport evaluate_hybrid(std::span<const LabeledSentence> data, const Lexicon& lexicon, const RuleConfig& cfg,
                           const FallbackClassifier& fallback, kernels::Policy policy = kernels::Policy::Parallel);

/// One rules-only evaluation per rule with only that rule enabled (within
/// cfg.mask), sorted by accuracy ascending; ties keep rule order.
std::vector<AblationRow> ablate(std::span<const LabeledSentence> data, const Lexicon& lexicon, const RuleConfig& cfg,
                                kernels::Policy policy = kernels::Policy::Parallel);

// ---------------------------------------------------------------------------
// Report formatting
// ---------------------------------------------------------------------------

enum class EvalMode { Rules, Hybrid };

std::string report_tsv(const EvalReport& r, EvalMode mode, bool macro = false);
std::string report_table(const EvalReport& r, EvalMode mode, bool macro = false);
std::string ablation_tsv(std::span<const AblationRow> rows);
std::string ablation_table(std::span<const AblationRow> rows);

}  // namespace depsent

#endif  // DEPSENT_HARNESS_HPP
