#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "../ingest/utf8.hpp"
#include "depsent/rules.hpp"

namespace depsent {

namespace {

bool in_set(const std::vector<std::string>& set, std::string_view s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

const std::string& word(const DepSentence& s, int i) { return s.token(i).normalized; }

bool is_noun(const DepSentence& s, int i, const RuleConfig& c) { return in_set(c.noun_tags, s.token(i).pos); }
bool is_adjective(const DepSentence& s, int i, const RuleConfig& c) {
  return in_set(c.adjective_tags, s.token(i).pos);
}
bool is_verb(const DepSentence& s, int i, const RuleConfig& c) { return in_set(c.verb_tags, s.token(i).pos); }

// Start positions of `phrase` fully inside `seg`, ascending.
std::vector<int> find_phrase(const DepSentence& s, Segment seg, const Phrase& phrase) {
  std::vector<int> out;
  const int len = static_cast<int>(phrase.size());
  if (len == 0) return out;
  for (int p = seg.start; p + len - 1 <= seg.end; ++p) {
    bool match = true;
    for (int k = 0; k < len && match; ++k) match = word(s, p + k) == phrase[static_cast<std::size_t>(k)];
    if (match) out.push_back(p);
  }
  return out;
}

struct Occurrence {
  int first;
  int last;
};

std::vector<Occurrence> find_any(const DepSentence& s, Segment seg, const std::vector<Phrase>& set) {
  std::vector<Occurrence> out;
  for (const auto& phrase : set) {
    for (int p : find_phrase(s, seg, phrase)) out.push_back({p, p + static_cast<int>(phrase.size()) - 1});
  }
  std::sort(out.begin(), out.end(),
            [](const Occurrence& a, const Occurrence& b) { return a.first != b.first ? a.first < b.first : a.last > b.last; });
  return out;
}

// Positions covered by multi-word markers of the other splitting rules, so
// their embedded "ke"/"in" do not re-trigger the single-word rules.
std::vector<bool> covered_by_markers(const DepSentence& s, Segment seg, const RuleConfig& c) {
  std::vector<bool> covered(s.size() + 1, false);
  auto mark = [&](const std::vector<Occurrence>& occ) {
    for (const auto& o : occ) {
      if (o.last == o.first) continue;
      for (int i = o.first; i <= o.last; ++i) covered[static_cast<std::size_t>(i)] = true;
    }
  };
  mark(find_any(s, seg, c.adversative_words));
  mark(find_any(s, seg, c.whereas_markers));
  mark(find_any(s, seg, {c.adjective_clause_marker}));
  return covered;
}

bool is_descendant_or_self(const DepSentence& s, int token, int ancestor) {
  for (int cur = token; cur != 0; cur = s.head(cur)) {
    if (cur == ancestor) return true;
  }
  return false;
}

void widen(std::optional<Segment>& span, int lo, int hi) {
  if (!span) {
    span = Segment{lo, hi};
  } else {
    span->start = std::min(span->start, lo);
    span->end = std::max(span->end, hi);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

Signal aggregate(std::span<const double> contributions) {
  double sum = 0.0;
  double magnitude = 0.0;
  for (double x : contributions) {
    sum += x;
    magnitude += std::abs(x);
  }
  if (magnitude == 0.0 || std::abs(sum) <= 1e-9 * magnitude) return Signal::Zero;
  return sum > 0.0 ? Signal::Positive : Signal::Negative;
}

SegmentSignal SegmentSignal::from(const DepSentence& sentence, Segment segment) {
  SegmentSignal sig;
  sig.segment = segment;
  const auto n = static_cast<std::size_t>(std::max(0, segment.length()));
  sig.lexical.reserve(n);
  for (int i = segment.start; i <= segment.end; ++i) sig.lexical.push_back(sentence.token(i).strength);
  sig.prior.assign(n, 0.0);
  return sig;
}

Signal aggregate(const SegmentSignal& signal) {
  const Signal lexical = aggregate(signal.lexical);
  return lexical != Signal::Zero ? lexical : aggregate(signal.prior);
}

double effective_sum(const SegmentSignal& signal) {
  double sum = 0.0;
  for (double x : signal.lexical) sum += x;
  if (aggregate(signal.lexical) != Signal::Zero) return sum;
  double prior = 0.0;
  for (double x : signal.prior) prior += x;
  return aggregate(signal.prior) != Signal::Zero ? prior : 0.0;
}

// ---------------------------------------------------------------------------
// Clause splits
// ---------------------------------------------------------------------------

std::optional<Segment> rule_adversative(const DepSentence& s, Segment seg, const RuleConfig& c) {
  for (const auto& o : find_any(s, seg, c.adversative_words)) {
    if (o.first > seg.start && o.last < seg.end) return Segment{o.last + 1, seg.end};
  }
  return std::nullopt;
}

std::optional<Segment> rule_adverbial_clause(const DepSentence& s, Segment seg, const RuleConfig& c) {
  for (const auto& o : find_any(s, seg, c.whereas_markers)) {
    if (o.last >= seg.end) continue;
    bool subject = false;
    bool verb = false;
    for (int i = o.last + 1; i <= seg.end; ++i) {
      subject = subject || in_set(c.subject_relations, s.relation(i));
      verb = verb || is_verb(s, i, c);
    }
    if (subject && verb) return Segment{o.last + 1, seg.end};
  }
  return std::nullopt;
}

std::optional<Segment> rule_complement_clause(const DepSentence& s, Segment seg, const RuleConfig& c) {
  const auto covered = covered_by_markers(s, seg, c);
  for (int p : find_phrase(s, seg, c.complement_marker)) {
    if (p <= seg.start || covered[static_cast<std::size_t>(p)]) continue;
    const int h = s.head(p);
    if (h != 0 && (is_noun(s, h, c) || is_verb(s, h, c) || is_adjective(s, h, c))) return Segment{seg.start, p - 1};
  }
  return std::nullopt;
}

std::optional<Segment> rule_adjective_clause(const DepSentence& s, Segment seg, const RuleConfig& c) {
  const int len = static_cast<int>(c.adjective_clause_marker.size());
  for (int p : find_phrase(s, seg, c.adjective_clause_marker)) {
    const int last = p + len - 1;
    if (last < seg.end) return Segment{last + 1, seg.end};
  }
  return std::nullopt;
}

std::optional<Segment> rule_demonstrative(const DepSentence& s, Segment seg, const RuleConfig& c) {
  if (c.demonstrative.empty()) return std::nullopt;
  const auto covered = covered_by_markers(s, seg, c);
  for (int p : find_phrase(s, seg, {c.demonstrative})) {
    // Mid-sentence only: not first, not right after the first token, not last.
    if (p >= seg.start + 2 && p < seg.end && !covered[static_cast<std::size_t>(p)]) {
      return Segment{seg.start, p - 1};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Local rules
// ---------------------------------------------------------------------------

std::optional<Segment> rule_polarity_inversion(const DepSentence& s, SegmentSignal& sig, const RuleConfig& c) {
  const Segment seg = sig.segment;
  const auto negations = find_any(s, seg, c.negation_words);
  if (negations.empty()) return std::nullopt;

  std::vector<bool> is_negation(s.size() + 1, false);
  for (const auto& o : negations) {
    for (int i = o.first; i <= o.last; ++i) is_negation[static_cast<std::size_t>(i)] = true;
  }

  std::optional<Segment> span;
  for (const auto& o : negations) {
    const int q = o.first;
    const int h = s.head(q);
    // A negated verb governs its own clause; a negation particle scopes over its head.
    const int anchor = (is_verb(s, q, c) || h == 0 || !seg.contains(h)) ? q : h;
    widen(span, o.first, o.last);
    for (int t = seg.start; t <= seg.end; ++t) {
      if (is_negation[static_cast<std::size_t>(t)] || !is_descendant_or_self(s, t, anchor)) continue;
      sig.lexical_at(t) = -sig.lexical_at(t);
      widen(span, t, t);
    }
  }
  return span;
}

std::optional<Segment> rule_preposition(const DepSentence& s, SegmentSignal& sig, const RuleConfig& c) {
  const Segment seg = sig.segment;
  int against = 0;
  std::vector<bool> is_against(s.size() + 1, false);
  for (int i = seg.start; i <= seg.end; ++i) {
    if (in_set(c.against_words, word(s, i))) {
      is_against[static_cast<std::size_t>(i)] = true;
      if (against == 0) against = i;
    }
  }
  if (against == 0) return std::nullopt;

  std::vector<double> activity;
  for (int i = seg.start; i <= seg.end; ++i) {
    if (!is_against[static_cast<std::size_t>(i)]) activity.push_back(sig.lexical_at(i));
  }
  if (aggregate(activity) == Signal::Zero) {
    // A bare "against X" leans negative.
    sig.prior_at(against) -= c.against_lean;
  } else {
    for (int i = seg.start; i <= seg.end; ++i) {
      if (!is_against[static_cast<std::size_t>(i)]) sig.lexical_at(i) = -sig.lexical_at(i);
    }
  }
  return seg;
}

std::optional<Segment> rule_preposition_subrule(const DepSentence& s, SegmentSignal& sig, const RuleConfig& c) {
  const Segment seg = sig.segment;
  std::optional<Segment> span;
  auto force = [&](int adj, double sign) {
    double& lex = sig.lexical_at(adj);
    if (lex != 0.0) {
      lex = sign * std::abs(lex);
    } else {
      sig.prior_at(adj) = sign * c.forced_strength;
    }
  };
  for (int a = seg.start; a <= seg.end; ++a) {
    if (!is_adjective(s, a, c)) continue;
    const bool has_prev = a > seg.start;
    if (has_prev && in_set(c.positive_prepositions, word(s, a - 1))) {
      force(a, 1.0);
      widen(span, a - 1, a);
    }
    if (has_prev && in_set(c.negative_prefixes, word(s, a - 1))) {
      force(a, -1.0);
      widen(span, a - 1, a);
      continue;
    }
    // Prefix fused onto the adjective: only for words the lexicon does not know.
    if (sig.lexical_at(a) != 0.0) continue;
    const std::string& w = word(s, a);
    for (const auto& prefix : c.negative_prefixes) {
      if (w.size() > prefix.size() && w.starts_with(prefix) &&
          utf8::length(std::string_view(w).substr(prefix.size())) >= 2) {
        force(a, -1.0);
        widen(span, a, a);
        break;
      }
    }
  }
  return span;
}

std::optional<Segment> rule_joint_noun_adjective(const DepSentence& s, SegmentSignal& sig, const RuleConfig& c) {
  const Segment seg = sig.segment;
  std::optional<Segment> span;
  std::vector<int> suppress;
  auto pair = [&](int noun, int adj) {
    if (!sig.carries_signal(adj)) return;
    suppress.push_back(noun);
    widen(span, std::min(noun, adj), std::max(noun, adj));
  };
  for (int i = seg.start; i <= seg.end; ++i) {
    const int h = s.head(i);
    if (h != 0 && seg.contains(h) && in_set(c.joint_relations, s.relation(i))) {
      if (is_noun(s, i, c) && is_adjective(s, h, c)) pair(i, h);
      if (is_adjective(s, i, c) && is_noun(s, h, c)) pair(h, i);
    }
  }
  // Copular pattern: subject noun and predicate adjective under one verb.
  for (int n = seg.start; n <= seg.end; ++n) {
    if (!is_noun(s, n, c) || !in_set(c.subject_relations, s.relation(n)) || s.head(n) == 0) continue;
    for (int a = seg.start; a <= seg.end; ++a) {
      if (a != n && s.head(a) == s.head(n) && is_adjective(s, a, c) && in_set(c.predicate_relations, s.relation(a))) {
        pair(n, a);
      }
    }
  }
  // Suppress after pairing so a noun's own signal never gates another pair.
  for (int n : suppress) {
    sig.lexical_at(n) = 0.0;
    sig.prior_at(n) = 0.0;
  }
  return span;
}

Polarity rule_emoji(const DepSentence& s, const RuleConfig& c) {
  const auto& emojis = s.emojis();
  if (emojis.empty()) return Polarity::Unclassified;
  const Emoji& e = c.emoji_resolution == EmojiResolution::Last ? emojis.back() : emojis.front();
  return e.cls == EmojiClass::Positive ? Polarity::Positive : Polarity::Negative;
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kAggregateStep = "aggregate";
constexpr std::string_view kLengthCapStep = "length-cap";

using SplitFn = std::optional<Segment> (*)(const DepSentence&, Segment, const RuleConfig&);
using LocalFn = std::optional<Segment> (*)(const DepSentence&, SegmentSignal&, const RuleConfig&);

constexpr std::array<std::pair<Rule, SplitFn>, 5> kSplits = {{
    {Rule::Adversative, &rule_adversative},
    {Rule::AdverbialClause, &rule_adverbial_clause},
    {Rule::ComplementClause, &rule_complement_clause},
    {Rule::AdjectiveClause, &rule_adjective_clause},
    {Rule::Demonstrative, &rule_demonstrative},
}};

constexpr std::array<std::pair<Rule, LocalFn>, 4> kLocals = {{
    {Rule::PolarityInversion, &rule_polarity_inversion},
    {Rule::Preposition, &rule_preposition},
    {Rule::PrepositionSubrule, &rule_preposition_subrule},
    {Rule::JointNounAdjective, &rule_joint_noun_adjective},
}};

Polarity to_polarity(Signal s) {
  switch (s) {
    case Signal::Positive:
      return Polarity::Positive;
    case Signal::Negative:
      return Polarity::Negative;
    case Signal::Zero:
      return Polarity::Unclassified;
  }
  return Polarity::Unclassified;
}

// Local rules, aggregation and the emoji fallback on one split-free segment.
RuleOutcome run_local(const DepSentence& s, Segment seg, const RuleConfig& c) {
  RuleOutcome out;
  SegmentSignal sig = SegmentSignal::from(s, seg);
  for (const auto& [rule, fn] : kLocals) {
    if (!c.mask.enabled(rule)) continue;
    if (auto span = fn(s, sig, c)) out.trace.push_back({std::string(rule_name(rule)), *span, effective_sum(sig)});
  }
  const Signal signal = aggregate(sig);
  out.trace.push_back({std::string(kAggregateStep), seg, effective_sum(sig)});
  out.polarity = to_polarity(signal);
  if (signal == Signal::Zero && c.mask.enabled(Rule::EmojiSubrule)) {
    out.polarity = rule_emoji(s, c);
    if (out.polarity != Polarity::Unclassified) {
      const auto& e = c.emoji_resolution == EmojiResolution::Last ? s.emojis().back() : s.emojis().front();
      const int at = static_cast<int>(e.position);
      out.trace.push_back({std::string(rule_name(Rule::EmojiSubrule)), Segment{at, at}, 0.0});
    }
  }
  return out;
}

class Engine {
 public:
  Engine(const DepSentence& s, const RuleConfig& c) : s_(s), c_(c) {}

  const RuleOutcome& run(Segment seg) {
    const auto key = std::make_pair(seg.start, seg.end);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    RuleOutcome result;
    bool split = false;
    for (const auto& [rule, fn] : kSplits) {
      if (!c_.mask.enabled(rule) || seg.length() < 1) continue;
      const auto selected = fn(s_, seg, c_);
      if (!selected) continue;
      const RuleOutcome& inner = run(*selected);
      if (inner.polarity == Polarity::Unclassified) continue;
      result.polarity = inner.polarity;
      double agg = 0.0;
      for (const auto& step : inner.trace) {
        if (step.rule == kAggregateStep) agg = step.aggregate;
      }
      result.trace.push_back({std::string(rule_name(rule)), *selected, agg});
      result.trace.insert(result.trace.end(), inner.trace.begin(), inner.trace.end());
      split = true;
      break;
    }
    if (!split) result = run_local(s_, seg, c_);
    return memo_.emplace(key, std::move(result)).first->second;
  }

 private:
  const DepSentence& s_;
  const RuleConfig& c_;
  std::map<std::pair<int, int>, RuleOutcome> memo_;
};

}  // namespace

RuleOutcome classify_segment(const DepSentence& sentence, Segment segment, const RuleConfig& cfg) {
  if (segment.start < 1 || segment.end > static_cast<int>(sentence.size()) || segment.start > segment.end + 1) {
    throw Error("segment out of range");
  }
  Engine engine(sentence, cfg);
  return engine.run(segment);
}

RuleOutcome classify_rules(const DepSentence& sentence, const RuleConfig& cfg) {
  if (static_cast<int>(sentence.size()) > cfg.max_tokens) {
    return RuleOutcome{Polarity::Unclassified, {{std::string(kLengthCapStep), sentence.whole(), 0.0}}};
  }
  return classify_segment(sentence, sentence.whole(), cfg);
}

Polarity replay(const DepSentence& sentence, const RuleOutcome& outcome, const RuleConfig& cfg) {
  Segment seg = sentence.whole();
  RuleMask mask = RuleMask::none();
  for (const auto& step : outcome.trace) {
    if (step.rule == kLengthCapStep) return Polarity::Unclassified;
    const auto rule = parse_rule_name(step.rule);
    if (!rule) continue;
    mask = mask.with(*rule, true);
    for (const auto& [split_rule, fn] : kSplits) {
      if (split_rule == *rule) seg = step.span;
    }
  }
  RuleConfig restricted = cfg;
  restricted.mask = mask;
  return run_local(sentence, seg, restricted).polarity;
}

Polarity naive_polarity(const DepSentence& sentence) {
  const auto s = sentence.strengths();
  return to_polarity(aggregate(s));
}

std::string render_trace(const DepSentence& sentence, const RuleOutcome& outcome) {
  std::ostringstream out;
  for (const auto& step : outcome.trace) {
    char agg[32];
    std::snprintf(agg, sizeof agg, "%+.4f", step.aggregate);
    out << step.rule << '\t' << step.span.start << '-' << step.span.end << '\t' << agg << '\t';
    for (int i = std::max(1, step.span.start); i <= std::min(step.span.end, static_cast<int>(sentence.size())); ++i) {
      if (i > std::max(1, step.span.start)) out << ' ';
      out << sentence.token(i).surface;
    }
    out << '\n';
  }
  out << "=> " << to_string(outcome.polarity) << '\n';
  return out.str();
}

}  // namespace depsent
