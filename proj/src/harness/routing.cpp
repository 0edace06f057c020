#include "depsent/harness.hpp"

namespace depsent {

std::string_view to_string(Provenance p) { return p == Provenance::Rule ? "rule" : "fallback"; }

std::vector<LabeledSentence> pair_corpus(const RawCorpus& corpus, std::vector<DepSentence> trees) {
  if (corpus.records.size() != trees.size()) {
    throw FormatError(0, "corpus has " + std::to_string(corpus.records.size()) + " records but the tree file has " +
                             std::to_string(trees.size()) + " sentences");
  }
  std::vector<LabeledSentence> out;
  out.reserve(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    out.push_back({std::move(trees[i]), corpus.records[i].label});
  }
  return out;
}

HybridResult hybrid_classify(const DepSentence& sentence, const Lexicon& lexicon, const RuleConfig& cfg,
                             const FallbackClassifier& fallback) {
  HybridResult r;
  r.rules = classify_rules(assign_strengths(sentence, lexicon), cfg);
  r.polarity = r.rules.polarity;
  if (r.polarity != Polarity::Unclassified || !fallback.model) return r;
  if (!fallback.embeddings) throw Error("fallback model given without embeddings");
  const auto& shape = fallback.model->shape();
  if (fallback.embeddings->dim() != shape.dim) {
    throw Error("embedding dimension " + std::to_string(fallback.embeddings->dim()) + " does not match the model's " +
                std::to_string(shape.dim));
  }
  r.polarity = predict(*fallback.model, vectorize(sentence, *fallback.embeddings, shape.max_len));
  r.provenance = Provenance::Fallback;
  return r;
}

}  // namespace depsent
