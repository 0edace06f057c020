#ifndef DEPSENT_TESTS_SUPPORT_HPP
#define DEPSENT_TESTS_SUPPORT_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "depsent/core.hpp"
#include "depsent/ingest.hpp"
#include "depsent/lexicon.hpp"
#include "depsent/rules.hpp"

namespace depsent::test {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(DEPSENT_SOURCE_DIR) / "data" / name;
}

inline std::filesystem::path source_path(const std::string& name) {
  return std::filesystem::path(DEPSENT_SOURCE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// `# key = value` comments of every tree block, in block order. Comment
/// lines before a block's first token row belong to that block.
inline std::vector<std::map<std::string, std::string>> block_annotations(const std::filesystem::path& p) {
  std::vector<std::map<std::string, std::string>> out;
  std::map<std::string, std::string> pending;
  bool in_block = false;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      if (in_block) out.push_back(std::move(pending));
      pending.clear();
      in_block = false;
      continue;
    }
    if (line[0] == '#') {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos) pending[line.substr(2, eq - 2)] = line.substr(eq + 3);
      continue;
    }
    in_block = true;
  }
  if (in_block) out.push_back(std::move(pending));
  return out;
}

inline Polarity expect_polarity(const std::string& s) {
  if (s == "positive" || s == "pos") return Polarity::Positive;
  if (s == "negative" || s == "neg") return Polarity::Negative;
  return Polarity::Unclassified;
}

inline const Lexicon& mini_lexicon() {
  static const Lexicon lex = load_lexicon(data_path("mini_lexicon.tsv")).lexicon;
  return lex;
}

struct Row {
  std::string form;
  std::string pos;
  int head;
  std::string rel;
  double strength = 0.0;
};

/// Builds a sentence from rows; the normalized form is computed, strengths
/// are taken from the rows as given.
inline DepSentence sentence(const std::vector<Row>& rows, std::vector<Emoji> emojis = {}) {
  std::vector<Token> tokens;
  std::vector<DepArc> arcs;
  int i = 0;
  for (const auto& r : rows) {
    ++i;
    tokens.push_back(Token{i, r.form, normalize(r.form), r.pos, r.strength});
    arcs.push_back(DepArc{i, r.head, r.rel});
  }
  return validate_tree(DepSentence(std::move(tokens), std::move(arcs), std::move(emojis)));
}

/// Random well-formed trees over a vocabulary that mixes trigger words of
/// the default configuration with neutral filler.
class TreeGenerator {
 public:
  explicit TreeGenerator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  DepSentence next(int max_len = 18) {
    static const std::vector<std::string> triggers = {
        "اما", "ولی", "که", "این", "مخالف", "نبود", "نیست", "نداره", "نمی", "با",
        "بی",  "خوش", "در", "صورتیکه", "نادرست", "بیکار", "اگرچه", "نه"};
    static const std::vector<std::string> tags = {"N", "N", "ADJ", "ADJ", "V", "PR", "ADV", "P", "CONJ"};
    static const std::vector<std::string> rels = {"SBJ", "MOS", "NPOSTMOD", "OBJ", "ADV", "MOZ", "NPREMOD", "POSDEP"};

    const int n = std::uniform_int_distribution<int>(1, max_len)(rng_);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(order.begin(), order.end(), rng_);
    std::vector<int> head(static_cast<std::size_t>(n + 1), 0);
    for (int k = 1; k < n; ++k) {
      const int parent = order[std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(k - 1))(rng_)];
      head[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = parent;
    }

    std::vector<Token> tokens;
    std::vector<DepArc> arcs;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 1; i <= n; ++i) {
      std::string w;
      if (unit(rng_) < 0.3) {
        w = triggers[std::uniform_int_distribution<std::size_t>(0, triggers.size() - 1)(rng_)];
      } else {
        w = "w" + std::to_string(std::uniform_int_distribution<int>(0, 40)(rng_));
      }
      double strength = 0.0;
      if (unit(rng_) < 0.5) strength = std::round(std::uniform_real_distribution<double>(-1.0, 1.0)(rng_) * 10) / 10;
      const auto& tag = tags[std::uniform_int_distribution<std::size_t>(0, tags.size() - 1)(rng_)];
      const auto& rel = rels[std::uniform_int_distribution<std::size_t>(0, rels.size() - 1)(rng_)];
      tokens.push_back(Token{i, w, normalize(w), tag, strength});
      arcs.push_back(DepArc{i, head[static_cast<std::size_t>(i)], head[static_cast<std::size_t>(i)] == 0 ? "ROOT" : rel});
    }
    std::vector<Emoji> emojis;
    if (unit(rng_) < 0.15) {
      const auto at = std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(n))(rng_);
      emojis.push_back(Emoji{at, unit(rng_) < 0.5 ? EmojiClass::Positive : EmojiClass::Negative, ":)"});
    }
    return validate_tree(DepSentence(std::move(tokens), std::move(arcs), std::move(emojis)));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace depsent::test

#endif  // DEPSENT_TESTS_SUPPORT_HPP
