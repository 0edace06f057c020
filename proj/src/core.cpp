#include "depsent/core.hpp"

#include <algorithm>
#include <string>

namespace depsent {

void TreeError::set_sentence_ordinal(std::size_t ordinal) {
  sentence_ = ordinal;
  message_ = "sentence " + std::to_string(ordinal) + ": " + detail_;
}

std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive:
      return "positive";
    case Polarity::Negative:
      return "negative";
    case Polarity::Unclassified:
      return "unclassified";
  }
  return "unclassified";
}

std::optional<Polarity> parse_polarity(std::string_view s) {
  if (s == "pos" || s == "positive") return Polarity::Positive;
  if (s == "neg" || s == "negative") return Polarity::Negative;
  return std::nullopt;
}

DepSentence::DepSentence(std::vector<Token> tokens, std::vector<DepArc> arcs, std::vector<Emoji> emojis)
    : tokens_(std::move(tokens)), arcs_(std::move(arcs)), emojis_(std::move(emojis)) {
  std::stable_sort(arcs_.begin(), arcs_.end(),
                   [](const DepArc& a, const DepArc& b) { return a.dependent < b.dependent; });
}

std::vector<int> DepSentence::dependents(int index) const {
  std::vector<int> out;
  for (const auto& arc : arcs_) {
    if (arc.head == index) out.push_back(arc.dependent);
  }
  return out;
}

std::vector<double> DepSentence::strengths() const {
  std::vector<double> out;
  out.reserve(tokens_.size());
  for (const auto& t : tokens_) out.push_back(t.strength);
  return out;
}

DepSentence DepSentence::with_strengths(std::span<const double> strengths) const {
  if (strengths.size() != tokens_.size()) {
    throw Error("with_strengths: expected " + std::to_string(tokens_.size()) + " values, got " +
                std::to_string(strengths.size()));
  }
  DepSentence copy = *this;
  for (std::size_t i = 0; i < strengths.size(); ++i) copy.tokens_[i].strength = strengths[i];
  return copy;
}

const DepSentence& validate_tree(const DepSentence& sentence) {
  const auto& tokens = sentence.tokens();
  const auto& arcs = sentence.arcs();
  const int n = static_cast<int>(tokens.size());

  for (int i = 0; i < n; ++i) {
    if (tokens[static_cast<std::size_t>(i)].index != i + 1) {
      throw TreeError("token " + std::to_string(i + 1) + " has index " +
                      std::to_string(tokens[static_cast<std::size_t>(i)].index));
    }
  }
  if (static_cast<int>(arcs.size()) != n) {
    throw TreeError("expected " + std::to_string(n) + " arcs, found " + std::to_string(arcs.size()));
  }
  // Arcs are sorted by dependent, so a permutation check is a positional one.
  for (int i = 0; i < n; ++i) {
    const auto& arc = arcs[static_cast<std::size_t>(i)];
    if (arc.dependent != i + 1) {
      throw TreeError("token " + std::to_string(i + 1) + " does not have exactly one head");
    }
    if (arc.head < 0 || arc.head > n) {
      throw DanglingHeadError("token " + std::to_string(arc.dependent) + " has head " +
                              std::to_string(arc.head) + " outside 0.." + std::to_string(n));
    }
  }

  int roots = 0;
  for (const auto& arc : arcs) roots += arc.head == 0 ? 1 : 0;
  if (roots > 1) throw MultiRootError(std::to_string(roots) + " tokens attach to the root");

  // Walk up from every token; 0 = unvisited, 1 = on current path, 2 = reaches root.
  std::vector<char> state(static_cast<std::size_t>(n + 1), 0);
  state[0] = 2;
  for (int start = 1; start <= n; ++start) {
    std::vector<int> path;
    int cur = start;
    while (state[static_cast<std::size_t>(cur)] == 0) {
      state[static_cast<std::size_t>(cur)] = 1;
      path.push_back(cur);
      cur = arcs[static_cast<std::size_t>(cur - 1)].head;
    }
    if (state[static_cast<std::size_t>(cur)] == 1) {
      throw CycleError("cycle through token " + std::to_string(cur));
    }
    for (int t : path) state[static_cast<std::size_t>(t)] = 2;
  }
  if (n > 0 && roots == 0) throw MultiRootError("no token attaches to the root");
  return sentence;
}

}  // namespace depsent
