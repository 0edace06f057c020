#include <doctest.h>

#include <random>

#include "depsent/lexicon.hpp"
#include "depsent/rules.hpp"
#include "support/support.hpp"

using namespace depsent;

namespace {

const RuleConfig& cfg() {
  static const RuleConfig c = RuleConfig::defaults();
  return c;
}

bool is_split(const std::string& name) {
  for (auto r : {Rule::Adversative, Rule::AdverbialClause, Rule::ComplementClause, Rule::AdjectiveClause,
                 Rule::Demonstrative}) {
    if (name == rule_name(r)) return true;
  }
  return false;
}

DepSentence continuous(const DepSentence& s, std::mt19937_64& rng) {
  std::vector<double> v;
  for (double x : s.strengths()) v.push_back(x == 0.0 ? 0.0 : std::uniform_real_distribution<double>(-1, 1)(rng));
  return s.with_strengths(v);
}

}  // namespace

TEST_CASE("classification is deterministic and replayable") {
  test::TreeGenerator gen(101);
  for (int i = 0; i < 500; ++i) {
    const auto s = gen.next();
    const auto a = classify_rules(s, cfg());
    const auto b = classify_rules(s, cfg());
    CHECK(a.polarity == b.polarity);
    CHECK(a.trace == b.trace);
    CHECK(replay(s, a, cfg()) == a.polarity);
  }
}

TEST_CASE("splits are sound") {
  test::TreeGenerator gen(102);
  int fired = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = gen.next();
    const auto out = classify_rules(s, cfg());
    if (out.trace.empty() || !is_split(out.trace.front().rule)) continue;
    ++fired;
    CHECK(classify_segment(s, out.trace.front().span, cfg()).polarity == out.polarity);
  }
  CHECK(fired > 20);
}

TEST_CASE("unclassified exactly when the aggregate is zero and there is no emoji") {
  test::TreeGenerator gen(103);
  for (int i = 0; i < 1000; ++i) {
    const auto s = gen.next();
    const auto out = classify_rules(s, cfg());
    if (out.polarity == Polarity::Unclassified) {
      CHECK(s.emojis().empty());
      CHECK(out.trace.back().rule == "aggregate");
      CHECK(out.trace.back().aggregate == 0.0);
    } else if (out.trace.back().rule == "aggregate") {
      CHECK(out.trace.back().aggregate != 0.0);
    }
    if (!s.emojis().empty()) CHECK(out.polarity != Polarity::Unclassified);
  }
}

TEST_CASE("rescaling strengths never changes the polarity") {
  test::TreeGenerator gen(104);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const auto s = gen.next();
    const auto base = classify_rules(s, cfg()).polarity;
    for (int k = 0; k < 5; ++k) {
      const double c = std::exp(std::uniform_real_distribution<double>(-7, 7)(rng));
      auto v = s.strengths();
      for (auto& x : v) x *= c;
      CHECK(classify_rules(s.with_strengths(v), cfg()).polarity == base);
    }
  }
}

TEST_CASE("inversion applied twice is the identity") {
  test::TreeGenerator gen(105);
  for (int i = 0; i < 500; ++i) {
    const auto s = gen.next();
    auto sig = SegmentSignal::from(s, s.whole());
    const auto before = sig.lexical;
    rule_polarity_inversion(s, sig, cfg());
    rule_polarity_inversion(s, sig, cfg());
    CHECK(sig.lexical == before);
  }
}

TEST_CASE("disabling a split or the emoji rule never gains coverage") {
  test::TreeGenerator gen(106);
  for (int i = 0; i < 1000; ++i) {
    const auto s = gen.next();
    if (classify_rules(s, cfg()).polarity != Polarity::Unclassified) continue;
    for (auto r : {Rule::Adversative, Rule::AdverbialClause, Rule::ComplementClause, Rule::AdjectiveClause,
                   Rule::Demonstrative, Rule::EmojiSubrule}) {
      RuleConfig c = cfg();
      c.mask = c.mask.with(r, false);
      CHECK(classify_rules(s, c).polarity == Polarity::Unclassified);
    }
  }
}

TEST_CASE("disabling a local rule never gains coverage on generic strengths") {
  // Exact cancellations created by a transform (e.g. -0.3 + 0.3 after a
  // suppression) are excluded by drawing continuous strengths.
  test::TreeGenerator gen(107);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const auto s = continuous(gen.next(), rng);
    if (classify_rules(s, cfg()).polarity != Polarity::Unclassified) continue;
    for (auto r : kAllRules) {
      RuleConfig c = cfg();
      c.mask = c.mask.with(r, false);
      CAPTURE(rule_name(r));
      CHECK(classify_rules(s, c).polarity == Polarity::Unclassified);
    }
  }
}

TEST_CASE("with every rule off the engine is the naive sign of the sum") {
  test::TreeGenerator gen(108);
  RuleConfig c = cfg();
  c.mask = RuleMask::none();
  for (int i = 0; i < 500; ++i) {
    const auto s = gen.next();
    CHECK(classify_rules(s, c).polarity == naive_polarity(s));
  }
}
