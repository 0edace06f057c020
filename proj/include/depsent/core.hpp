#ifndef DEPSENT_CORE_HPP
#define DEPSENT_CORE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace depsent {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed dependency tree. Carries the 1-based ordinal of the sentence in
/// its source file once a reader has attached it (0 = unknown).
class TreeError : public Error {
 public:
  explicit TreeError(const std::string& what) : Error(what), detail_(what) {}

  std::size_t sentence_ordinal() const { return sentence_; }
  const char* what() const noexcept override { return message_.empty() ? detail_.c_str() : message_.c_str(); }
  void set_sentence_ordinal(std::size_t ordinal);

 private:
  std::string detail_;
  std::string message_;
  std::size_t sentence_ = 0;
};

class CycleError : public TreeError {
 public:
  using TreeError::TreeError;
};

class MultiRootError : public TreeError {
 public:
  using TreeError::TreeError;
};

class DanglingHeadError : public TreeError {
 public:
  using TreeError::TreeError;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class Polarity { Positive, Negative, Unclassified };

std::string_view to_string(Polarity p);
/// Accepts "positive"/"pos" and "negative"/"neg" (case-sensitive).
std::optional<Polarity> parse_polarity(std::string_view s);

struct Token {
  int index = 0;           // 1-based
  std::string surface;     // form as it appeared in the input
  std::string normalized;  // form used for lexicon and rule matching
  std::string pos;
  double strength = 0.0;   // lexicon polarity, 0 when absent
};

/// head == 0 attaches the dependent to the artificial root.
struct DepArc {
  int dependent = 0;
  int head = 0;
  std::string relation;
};

enum class EmojiClass { Positive, Negative };

/// An emoji removed from the token stream. `position` is the number of
/// retained tokens that precede it, so list order is surface order.
struct Emoji {
  std::size_t position = 0;
  EmojiClass cls = EmojiClass::Positive;
  std::string text;

  bool operator==(const Emoji&) const = default;
};

/// 1-based inclusive token range.
struct Segment {
  int start = 1;
  int end = 0;

  int length() const { return end - start + 1; }
  bool contains(int index) const { return index >= start && index <= end; }
  bool operator==(const Segment&) const = default;
};

/// A parsed sentence: tokens, one arc per token, and the emojis that were
/// stripped out of it. Immutable once built; use the with_* helpers to derive
/// modified copies.
class DepSentence {
 public:
  DepSentence() = default;
  /// Arcs may be given in any order; they are stored sorted by dependent.
  /// Does not validate, see validate_tree().
  DepSentence(std::vector<Token> tokens, std::vector<DepArc> arcs, std::vector<Emoji> emojis = {});

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

  const std::vector<Token>& tokens() const { return tokens_; }
  const std::vector<DepArc>& arcs() const { return arcs_; }
  const std::vector<Emoji>& emojis() const { return emojis_; }

  /// 1-based accessors. Valid only on a validated sentence.
  const Token& token(int index) const { return tokens_[static_cast<std::size_t>(index - 1)]; }
  int head(int index) const { return arcs_[static_cast<std::size_t>(index - 1)].head; }
  const std::string& relation(int index) const { return arcs_[static_cast<std::size_t>(index - 1)].relation; }
  /// Direct dependents of `index` (0 = root), ascending.
  std::vector<int> dependents(int index) const;

  Segment whole() const { return Segment{1, static_cast<int>(tokens_.size())}; }

  std::vector<double> strengths() const;
  DepSentence with_strengths(std::span<const double> strengths) const;

 private:
  std::vector<Token> tokens_;
  std::vector<DepArc> arcs_;
  std::vector<Emoji> emojis_;
};

/// Returns `sentence` unchanged when it is a well-formed single-headed tree.
/// Token indices must be 1..n in order, one arc per token, heads in 0..n,
/// exactly one root arc and no cycles. An empty sentence is valid.
const DepSentence& validate_tree(const DepSentence& sentence);

/// One step of the rule engine's trace.
struct TraceStep {
  std::string rule;  // rule name, or "aggregate" / "length-cap"
  Segment span;      // tokens acted on (for splits: the selected segment)
  double aggregate = 0.0;

  bool operator==(const TraceStep&) const = default;
};

struct RuleOutcome {
  Polarity polarity = Polarity::Unclassified;
  std::vector<TraceStep> trace;
};

}  // namespace depsent

#endif  // DEPSENT_CORE_HPP
