#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "depsent/ingest.hpp"
#include "depsent/rules.hpp"

namespace depsent {

namespace {

struct RuleNames {
  Rule rule;
  std::string_view name;
  std::string_view key;
};

constexpr std::array<RuleNames, 10> kNames = {{
    {Rule::PolarityInversion, "Polarity Inversion", "polarity_inversion"},
    {Rule::ComplementClause, "Complement Clause", "complement_clause"},
    {Rule::AdverbialClause, "Adverbial Clause", "adverbial_clause"},
    {Rule::AdjectiveClause, "Adjective Clause", "adjective_clause"},
    {Rule::JointNounAdjective, "Joint Noun and Adjective", "joint_noun_adjective"},
    {Rule::Adversative, "Adversative", "adversative"},
    {Rule::Preposition, "Preposition", "preposition"},
    {Rule::Demonstrative, "Additional Rule", "demonstrative"},
    {Rule::PrepositionSubrule, "Preposition Sub-rule", "preposition_subrule"},
    {Rule::EmojiSubrule, "Emoji Sub-rule", "emoji_subrule"},
}};

Phrase split_words(std::string_view s) {
  Phrase out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::vector<Phrase> phrases(std::initializer_list<std::string_view> list) {
  std::vector<Phrase> out;
  for (auto s : list) out.push_back(split_words(s));
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    auto item = trim(value.substr(start, comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

Phrase normalized_phrase(std::string_view s) {
  Phrase out;
  for (const auto& w : split_words(s)) {
    auto n = normalize(w);
    if (!n.empty()) out.push_back(std::move(n));
  }
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string join_phrase(const Phrase& p) { return join(p, " "); }

std::string join_phrases(const std::vector<Phrase>& ps) {
  std::vector<std::string> items;
  for (const auto& p : ps) items.push_back(join_phrase(p));
  return join(items, ", ");
}

double parse_double(std::size_t line, std::string_view key, const std::string& v) {
  double d = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw FormatError(line, std::string(key) + ": '" + v + "' is not a number");
  }
  return d;
}

}  // namespace

std::string_view rule_name(Rule r) { return kNames[static_cast<std::size_t>(r)].name; }
std::string_view rule_key(Rule r) { return kNames[static_cast<std::size_t>(r)].key; }

std::optional<Rule> parse_rule_key(std::string_view key) {
  for (const auto& n : kNames) {
    if (n.key == key) return n.rule;
  }
  return std::nullopt;
}

std::optional<Rule> parse_rule_name(std::string_view name) {
  for (const auto& n : kNames) {
    if (n.name == name) return n.rule;
  }
  return std::nullopt;
}

RuleConfig RuleConfig::defaults() {
  RuleConfig c;
  c.negation_words = phrases({"نبود",  "نیست",   "نیستم",  "نیستند", "نبودند", "نبودم", "ندارم", "ندارد",
                              "نداره", "ندارند", "نداشت",  "نداشتم", "نداشته", "نمی",   "نمیشه", "نمیکنه",
                              "نکرد",  "نکردم",  "نخریدی", "نخریدم", "نشد",    "نشده",  "نخواهد", "نه"});
  c.adversative_words = phrases({"اما", "ولی", "اگر چه", "اگرچه", "با اینکه", "با این که"});
  c.whereas_markers = phrases({"در صورتی که", "در صورتیکه", "درصورتیکه"});
  c.complement_marker = {"که"};
  c.adjective_clause_marker = {"که", "این"};
  c.against_words = {"مخالف"};
  c.positive_prepositions = {"با", "خوش", "صفای"};
  c.negative_prefixes = {"بی", "ضد", "نا", "زهر", "لا"};
  c.demonstrative = "این";

  c.noun_tags = {"N", "Ne", "NOUN", "PROPN"};
  c.adjective_tags = {"ADJ", "AJ", "AJe"};
  c.verb_tags = {"V", "VERB", "AUX"};
  c.pronoun_tags = {"PR", "PRO", "PRON"};
  c.subject_relations = {"SBJ", "nsubj"};
  c.joint_relations = {"SBJ", "MOS", "NPOSTMOD", "ADJ", "amod"};
  c.predicate_relations = {"MOS"};
  return c;
}

void RuleConfig::validate() const {
  auto need = [&](Rule r, bool ok) {
    if (mask.enabled(r) && !ok) {
      throw ConfigError(std::string(rule_name(r)) + " is enabled but its trigger set is empty");
    }
  };
  need(Rule::PolarityInversion, !negation_words.empty());
  need(Rule::Adversative, !adversative_words.empty());
  need(Rule::AdverbialClause, !whereas_markers.empty() && !subject_relations.empty() && !verb_tags.empty());
  need(Rule::ComplementClause, !complement_marker.empty());
  need(Rule::AdjectiveClause, !adjective_clause_marker.empty());
  need(Rule::Preposition, !against_words.empty());
  need(Rule::PrepositionSubrule, !(positive_prepositions.empty() && negative_prefixes.empty()) &&
                                     !adjective_tags.empty());
  need(Rule::Demonstrative, !demonstrative.empty());
  need(Rule::JointNounAdjective, !noun_tags.empty() && !adjective_tags.empty() && !joint_relations.empty());
  for (const auto* set : {&negation_words, &adversative_words, &whereas_markers}) {
    for (const auto& p : *set) {
      if (p.empty()) throw ConfigError("empty trigger phrase");
    }
  }
  if (!(against_lean > 0.0) || !(forced_strength > 0.0)) {
    throw ConfigError("against_lean and forced_strength must be positive");
  }
  if (max_tokens < 1) throw ConfigError("max_tokens must be at least 1");
}

RuleConfig load_rule_config(std::istream& in) {
  RuleConfig c = RuleConfig::defaults();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw FormatError(lineno, "expected key = value");
    const auto key = trim(std::string_view(text).substr(0, eq));
    const auto value = trim(std::string_view(text).substr(eq + 1));
    const auto items = split_list(value);

    auto phrase_list = [&] {
      std::vector<Phrase> out;
      for (const auto& i : items) {
        if (auto p = normalized_phrase(i); !p.empty()) out.push_back(std::move(p));
      }
      return out;
    };
    auto word_list = [&] {
      std::vector<std::string> out;
      for (const auto& i : items) {
        if (auto w = normalize(i); !w.empty()) out.push_back(std::move(w));
      }
      return out;
    };

    if (key == "negation_words") {
      c.negation_words = phrase_list();
    } else if (key == "adversative_words") {
      c.adversative_words = phrase_list();
    } else if (key == "whereas_markers") {
      c.whereas_markers = phrase_list();
    } else if (key == "complement_marker") {
      c.complement_marker = normalized_phrase(value);
    } else if (key == "adjective_clause_marker") {
      c.adjective_clause_marker = normalized_phrase(value);
    } else if (key == "against_words") {
      c.against_words = word_list();
    } else if (key == "positive_prepositions") {
      c.positive_prepositions = word_list();
    } else if (key == "negative_prefixes") {
      c.negative_prefixes = word_list();
    } else if (key == "demonstrative") {
      c.demonstrative = normalize(value);
    } else if (key == "noun_tags") {
      c.noun_tags = items;
    } else if (key == "adjective_tags") {
      c.adjective_tags = items;
    } else if (key == "verb_tags") {
      c.verb_tags = items;
    } else if (key == "pronoun_tags") {
      c.pronoun_tags = items;
    } else if (key == "subject_relations") {
      c.subject_relations = items;
    } else if (key == "joint_relations") {
      c.joint_relations = items;
    } else if (key == "predicate_relations") {
      c.predicate_relations = items;
    } else if (key == "against_lean") {
      c.against_lean = parse_double(lineno, key, value);
    } else if (key == "forced_strength") {
      c.forced_strength = parse_double(lineno, key, value);
    } else if (key == "max_tokens") {
      c.max_tokens = static_cast<int>(parse_double(lineno, key, value));
    } else if (key == "emoji_resolution") {
      if (value == "last") {
        c.emoji_resolution = EmojiResolution::Last;
      } else if (value == "first") {
        c.emoji_resolution = EmojiResolution::First;
      } else {
        throw FormatError(lineno, "emoji_resolution must be 'last' or 'first'");
      }
    } else if (key == "disabled_rules") {
      c.mask = RuleMask::all();
      for (const auto& i : items) {
        auto r = parse_rule_key(i);
        if (!r) throw FormatError(lineno, "unknown rule '" + i + "'");
        c.mask = c.mask.with(*r, false);
      }
    } else {
      throw FormatError(lineno, "unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

RuleConfig load_rule_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open rule config " + path.string());
  return load_rule_config(in);
}

std::string to_config_text(const RuleConfig& c) {
  std::ostringstream out;
  out << "negation_words = " << join_phrases(c.negation_words) << '\n';
  out << "adversative_words = " << join_phrases(c.adversative_words) << '\n';
  out << "whereas_markers = " << join_phrases(c.whereas_markers) << '\n';
  out << "complement_marker = " << join_phrase(c.complement_marker) << '\n';
  out << "adjective_clause_marker = " << join_phrase(c.adjective_clause_marker) << '\n';
  out << "against_words = " << join(c.against_words, ", ") << '\n';
  out << "positive_prepositions = " << join(c.positive_prepositions, ", ") << '\n';
  out << "negative_prefixes = " << join(c.negative_prefixes, ", ") << '\n';
  out << "demonstrative = " << c.demonstrative << '\n';
  out << "noun_tags = " << join(c.noun_tags, ", ") << '\n';
  out << "adjective_tags = " << join(c.adjective_tags, ", ") << '\n';
  out << "verb_tags = " << join(c.verb_tags, ", ") << '\n';
  out << "pronoun_tags = " << join(c.pronoun_tags, ", ") << '\n';
  out << "subject_relations = " << join(c.subject_relations, ", ") << '\n';
  out << "joint_relations = " << join(c.joint_relations, ", ") << '\n';
  out << "predicate_relations = " << join(c.predicate_relations, ", ") << '\n';
  out << "against_lean = " << c.against_lean << '\n';
  out << "forced_strength = " << c.forced_strength << '\n';
  out << "emoji_resolution = " << (c.emoji_resolution == EmojiResolution::Last ? "last" : "first") << '\n';
  out << "max_tokens = " << c.max_tokens << '\n';
  std::vector<std::string> disabled;
  for (auto r : kAllRules) {
    if (!c.mask.enabled(r)) disabled.emplace_back(rule_key(r));
  }
  out << "disabled_rules = " << join(disabled, ", ") << '\n';
  return out.str();
}

}  // namespace depsent
