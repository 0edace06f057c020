#include <algorithm>
#include <exception>

#include "depsent/harness.hpp"

namespace depsent {

namespace {

// Classifies every item; the parallel policy spreads items over OpenMP
// threads. Results land at fixed indices, so the reduction below sees the
// same sequence either way.
std::vector<HybridResult> classify_all(std::span<const LabeledSentence> data, const Lexicon& lexicon,
                                       const RuleConfig& cfg, const FallbackClassifier& fallback,
                                       kernels::Policy policy) {
  std::vector<HybridResult> results(data.size());
  const auto n = static_cast<long long>(data.size());
  if (policy == kernels::Policy::Serial) {
    for (long long i = 0; i < n; ++i) results[i] = hybrid_classify(data[i].sentence, lexicon, cfg, fallback);
    return results;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < n; ++i) {
    try {
      results[i] = hybrid_classify(data[i].sentence, lexicon, cfg, fallback);
    } catch (...) {
#pragma omp critical(depsent_eval_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return results;
}

EvalReport reduce(std::span<const LabeledSentence> data, const std::vector<HybridResult>& results) {
  if (data.empty()) throw EmptyError("evaluation set is empty");
  EvalReport r;
  std::size_t unclassified = 0;
  std::size_t routed = 0;
  r.predictions.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto p = results[i].polarity;
    if (results[i].rules.polarity == Polarity::Unclassified) ++unclassified;
    if (results[i].provenance == Provenance::Fallback) {
      ++routed;
      ++(p == Polarity::Positive ? r.fallback_positive : r.fallback_negative);
    }
    if (p == Polarity::Unclassified) p = Polarity::Positive;
    r.predictions.push_back(p);
    r.confusion.add(data[i].label, p);
  }
  const auto n = static_cast<double>(data.size());
  r.unclassified_rate = static_cast<double>(unclassified) / n;
  r.fallback_rate = static_cast<double>(routed) / n;
  r.metrics = compute_metrics(r.confusion);
  return r;
}

}  // namespace

EvalReport evaluate_rules_only(std::span<const LabeledSentence> data, const Lexicon& lexicon, const RuleConfig& cfg,
                               kernels::Policy policy) {
  return reduce(data, classify_all(data, lexicon, cfg, {}, policy));
}

EvalReport evaluate_hybrid(std::span<const LabeledSentence> data, const Lexicon& lexicon, const RuleConfig& cfg,
                           const FallbackClassifier& fallback, kernels::Policy policy) {
  if (!fallback.model || !fallback.embeddings) throw Error("hybrid evaluation needs a model and embeddings");
  return reduce(data, classify_all(data, lexicon, cfg, fallback, policy));
}

std::vector<AblationRow> ablate(std::span<const LabeledSentence> data, const Lexicon& lexicon, const RuleConfig& cfg,
                                kernels::Policy policy) {
  std::vector<AblationRow> rows;
  for (auto rule : kAllRules) {
    RuleConfig single = cfg;
    single.mask = cfg.mask & RuleMask::only(rule);
    rows.push_back({rule, evaluate_rules_only(data, lexicon, single, policy)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const AblationRow& a, const AblationRow& b) {
    return a.report.metrics.accuracy < b.report.metrics.accuracy;
  });
  return rows;
}

}  // namespace depsent
