#ifndef DEPSENT_RULES_HPP
#define DEPSENT_RULES_HPP

#include <array>
#include <bitset>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depsent/core.hpp"

namespace depsent {

class ConfigError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Rule inventory
// ---------------------------------------------------------------------------

enum class Rule {
  PolarityInversion,
  ComplementClause,
  AdverbialClause,
  AdjectiveClause,
  JointNounAdjective,
  Adversative,
  Preposition,
  Demonstrative,
  PrepositionSubrule,
  EmojiSubrule,
};

inline constexpr std::array<Rule, 10> kAllRules = {
    Rule::PolarityInversion,  Rule::ComplementClause, Rule::AdverbialClause, Rule::AdjectiveClause,
    Rule::JointNounAdjective, Rule::Adversative,      Rule::Preposition,     Rule::Demonstrative,
    Rule::PrepositionSubrule, Rule::EmojiSubrule,
};

/// Display name, e.g. "Joint Noun and Adjective".
std::string_view rule_name(Rule r);
/// Config/CLI key, e.g. "joint_noun_adjective".
std::string_view rule_key(Rule r);
std::optional<Rule> parse_rule_key(std::string_view key);
std::optional<Rule> parse_rule_name(std::string_view name);

class RuleMask {
 public:
  static RuleMask all() { return RuleMask(std::bitset<10>().set()); }
  static RuleMask none() { return RuleMask(std::bitset<10>()); }
  static RuleMask only(Rule r) { return none().with(r, true); }

  bool enabled(Rule r) const { return bits_.test(static_cast<std::size_t>(r)); }
  RuleMask with(Rule r, bool on) const {
    RuleMask m = *this;
    m.bits_.set(static_cast<std::size_t>(r), on);
    return m;
  }
  RuleMask operator&(const RuleMask& o) const { return RuleMask(bits_ & o.bits_); }
  bool operator==(const RuleMask&) const = default;

 private:
  explicit RuleMask(std::bitset<10> bits) : bits_(bits) {}
  std::bitset<10> bits_;
};

/// A trigger word or multi-word marker, one normalized form per token.
using Phrase = std::vector<std::string>;

enum class EmojiResolution { Last, First };

struct RuleConfig {
  std::vector<Phrase> negation_words;
  std::vector<Phrase> adversative_words;
  std::vector<Phrase> whereas_markers;
  Phrase complement_marker;
  Phrase adjective_clause_marker;
  std::vector<std::string> against_words;
  std::vector<std::string> positive_prepositions;
  std::vector<std::string> negative_prefixes;
  std::string demonstrative;

  std::vector<std::string> noun_tags;
  std::vector<std::string> adjective_tags;
  std::vector<std::string> verb_tags;
  std::vector<std::string> pronoun_tags;
  std::vector<std::string> subject_relations;
  std::vector<std::string> joint_relations;
  std::vector<std::string> predicate_relations;

  double against_lean = 0.1;
  double forced_strength = 0.5;
  EmojiResolution emoji_resolution = EmojiResolution::Last;
  int max_tokens = 100;
  RuleMask mask = RuleMask::all();

  /// Persian trigger inventories and Dadegan-style tag/relation labels.
  static RuleConfig defaults();

  /// Throws ConfigError when an enabled rule has an empty trigger set.
  void validate() const;
};

/// Plain-text `key = v1, v2, ...` file; unspecified keys keep their defaults.
/// Trigger words are normalized on load.
RuleConfig load_rule_config(std::istream& in);
RuleConfig load_rule_config(const std::filesystem::path& path);
std::string to_config_text(const RuleConfig& cfg);

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

enum class Signal { Positive, Negative, Zero };

/// Sign of the sum. A sum within 1e-9 of the total magnitude counts as zero,
/// so exact decimal cancellations are recognised at any scale.
Signal aggregate(std::span<const double> contributions);

/// Per-token contributions of one segment, indexed from segment.start.
/// `lexical` holds lexicon-derived strengths; `prior` holds the constant
/// leans some rules add. The prior tier only decides when the lexical tier
/// is zero, which keeps decisions invariant to rescaling the lexicon.
struct SegmentSignal {
  Segment segment;
  std::vector<double> lexical;
  std::vector<double> prior;

  static SegmentSignal from(const DepSentence& sentence, Segment segment);

  double& lexical_at(int token) { return lexical[static_cast<std::size_t>(token - segment.start)]; }
  double& prior_at(int token) { return prior[static_cast<std::size_t>(token - segment.start)]; }
  double lexical_at(int token) const { return lexical[static_cast<std::size_t>(token - segment.start)]; }
  double prior_at(int token) const { return prior[static_cast<std::size_t>(token - segment.start)]; }
  bool carries_signal(int token) const { return lexical_at(token) != 0.0 || prior_at(token) != 0.0; }
};

Signal aggregate(const SegmentSignal& signal);
/// Lexical sum, or the prior sum when the lexical tier is zero.
double effective_sum(const SegmentSignal& signal);

// ---------------------------------------------------------------------------
// Clause-splitting rules. Each returns the segment that carries the polarity.
// ---------------------------------------------------------------------------

std::optional<Segment> rule_adversative(const DepSentence& s, Segment seg, const RuleConfig& cfg);
std::optional<Segment> rule_adverbial_clause(const DepSentence& s, Segment seg, const RuleConfig& cfg);
std::optional<Segment> rule_complement_clause(const DepSentence& s, Segment seg, const RuleConfig& cfg);
std::optional<Segment> rule_adjective_clause(const DepSentence& s, Segment seg, const RuleConfig& cfg);
std::optional<Segment> rule_demonstrative(const DepSentence& s, Segment seg, const RuleConfig& cfg);

// ---------------------------------------------------------------------------
// Local rules. Each transforms `signal` in place and returns the token span
// it acted on, or nullopt when it did not fire (and left `signal` untouched).
// ---------------------------------------------------------------------------

std::optional<Segment> rule_polarity_inversion(const DepSentence& s, SegmentSignal& signal, const RuleConfig& cfg);
std::optional<Segment> rule_preposition(const DepSentence& s, SegmentSignal& signal, const RuleConfig& cfg);
std::optional<Segment> rule_preposition_subrule(const DepSentence& s, SegmentSignal& signal, const RuleConfig& cfg);
std::optional<Segment> rule_joint_noun_adjective(const DepSentence& s, SegmentSignal& signal,
                                                 const RuleConfig& cfg);

/// Decides a zero-signal sentence from its emojis; Unclassified when it has none.
Polarity rule_emoji(const DepSentence& s, const RuleConfig& cfg);

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

/// Runs the rule pipeline over the whole sentence. Clause splits are tried in
/// precedence order (adversative, adverbial, complement, adjective clause,
/// demonstrative); the first whose selected segment classifies is taken and
/// the pipeline recurses into it. On a split-free segment the local rules run
/// (inversion, preposition, preposition sub-rule, joint noun-adjective), then
/// the contributions are aggregated; a zero aggregate defers to the emojis.
RuleOutcome classify_rules(const DepSentence& sentence, const RuleConfig& cfg);

/// The same pipeline restricted to `segment`.
RuleOutcome classify_segment(const DepSentence& sentence, Segment segment, const RuleConfig& cfg);

/// Recomputes the polarity from a trace alone: the last selected segment,
/// with only the rules recorded in the trace enabled.
Polarity replay(const DepSentence& sentence, const RuleOutcome& outcome, const RuleConfig& cfg);

/// Sign of the raw strength sum, no rules applied.
Polarity naive_polarity(const DepSentence& sentence);

/// One line per trace step: rule, span, aggregate, span text.
std::string render_trace(const DepSentence& sentence, const RuleOutcome& outcome);

}  // namespace depsent

#endif  // DEPSENT_RULES_HPP
