#include <doctest.h>

#include <random>
#include <sstream>

#include "depsent/ingest.hpp"
#include "support/support.hpp"

using namespace depsent;

using Tokens = std::vector<std::string>;

TEST_CASE("tokenize splits on whitespace") {
  CHECK(tokenize("The mobile is great") == Tokens{"The", "mobile", "is", "great"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("  \t\n ").empty());
  CHECK(tokenize("گوشی  خوبی\tاست") == Tokens{"گوشی", "خوبی", "است"});
}

TEST_CASE("tokenize cuts emojis out of words") {
  CHECK(tokenize("good:)bad") == Tokens{"good", ":)", "bad"});
  CHECK(tokenize("sad:-((") == Tokens{"sad", ":-(("});
  CHECK(tokenize(":(:)") == Tokens{":(", ":)"});
}

TEST_CASE("tokenize isolates every emoji between any two words") {
  const Tokens words = {"good", "bad", "خوب", "x", "Dx", "-a"};
  const auto& table = EmojiTable::standard();
  Tokens all = table.positive;
  all.insert(all.end(), table.negative.begin(), table.negative.end());
  for (const auto& e : all) {
    for (const auto& a : words) {
      for (const auto& b : words) {
        CAPTURE(a + e + b);
        // The longest emoji wins, so a word beginning with a character that
        // extends the emoji is not a clean split.
        if (table.match_at(e + b, 0) != e.size()) continue;
        CHECK(tokenize(a + e + b) == Tokens{a, e, b});
        CHECK(tokenize(a + " " + e + " " + b) == Tokens{a, e, b});
      }
    }
  }
}

TEST_CASE("tokenize is a fixed point of join-then-retokenize") {
  const std::vector<std::string> alphabet = {"a", "b", ":", ")", "(", "-", "]", "D", "'", " ", " ", "\t",
                                             "خ", "و", "ب", "۳", "1", "."};
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 2000; ++iter) {
    std::string text;
    const int len = std::uniform_int_distribution<int>(0, 24)(rng);
    for (int i = 0; i < len; ++i) text += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    const auto tokens = tokenize(text);
    std::string joined;
    for (std::size_t i = 0; i < tokens.size(); ++i) joined += (i ? " " : "") + tokens[i];
    CAPTURE(text);
    CHECK(tokenize(joined) == tokens);
  }
}

TEST_CASE("extract_emojis records class and position") {
  auto r = extract_emojis({"خوب", "بود", ":)"});
  CHECK(r.tokens == Tokens{"خوب", "بود"});
  REQUIRE(r.emojis.size() == 1);
  CHECK(r.emojis[0].position == 2);
  CHECK(r.emojis[0].cls == EmojiClass::Positive);

  auto none = extract_emojis({"a", "b"});
  CHECK(none.tokens == Tokens{"a", "b"});
  CHECK(none.emojis.empty());

  auto both = extract_emojis({":(", ":)"});
  CHECK(both.tokens.empty());
  REQUIRE(both.emojis.size() == 2);
  CHECK(both.emojis[0].cls == EmojiClass::Negative);
  CHECK(both.emojis[1].cls == EmojiClass::Positive);
}

TEST_CASE("extract_emojis agrees with a membership scan of the two sets") {
  const Tokens pos = {":-)", ":)", ":-]", ":]", ":D"};
  const Tokens neg = {":(", ":-((", ":'("};
  const Tokens pool = {":-)", ":)", ":-]", ":]", ":D", ":(", ":-((", ":'(", "a", "b", ":-(", "D", ":"};
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 500; ++iter) {
    Tokens in;
    const int len = std::uniform_int_distribution<int>(0, 8)(rng);
    for (int i = 0; i < len; ++i) in.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    Tokens kept;
    std::vector<Emoji> expected;
    for (const auto& t : in) {
      const bool p = std::find(pos.begin(), pos.end(), t) != pos.end();
      const bool n = std::find(neg.begin(), neg.end(), t) != neg.end();
      if (p || n) {
        expected.push_back(Emoji{kept.size(), p ? EmojiClass::Positive : EmojiClass::Negative, t});
      } else {
        kept.push_back(t);
      }
    }
    const auto r = extract_emojis(in);
    CHECK(r.tokens == kept);
    CHECK(r.emojis == expected);
  }
}

TEST_CASE("normalize") {
  CHECK(normalize("عالییییی") == "عالی");
  CHECK(normalize("mobile") == "mobile");
  CHECK(normalize("mr30") == "mersi");
  CHECK(normalize("خوووووب") == "خوب");
  CHECK(normalize("خوب!!") == "خوب");
  CHECK(normalize("123").empty());
  CHECK(normalize("كتاب") == "کتاب");
  CHECK(normalize("ali") == "ali");
  CHECK(normalize("aalli") == "aalli");
}

TEST_CASE("normalize is idempotent") {
  const std::vector<std::string> alphabet = {"a", "a", "b", "m", "r", "3", "0", "!", ".", "ی", "ی", "ی",
                                             "ع", "ا", "ل", "ك", "ي", "ـ", "۳", "،", "ِ"};
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 3000; ++iter) {
    std::string t;
    const int len = std::uniform_int_distribution<int>(1, 12)(rng);
    for (int i = 0; i < len; ++i) t += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    const auto once = normalize(t);
    CAPTURE(t);
    CHECK(normalize(once) == once);
  }
  for (const auto& [variant, canonical] : Normalizer().mapping()) {
    CHECK(normalize(normalize(variant)) == normalize(variant));
  }
}

TEST_CASE("normalizer mapping from a stream replaces the builtins") {
  std::istringstream in("# comment\n\nfoo\tbar\n");
  const auto n = Normalizer::from_stream(in);
  CHECK(n("foo") == "bar");
  CHECK(n("mr30") == "mr");
}

TEST_CASE("normalization mapping cycles are rejected") {
  std::istringstream in("aa\tbb\nbb\taa\n");
  CHECK_THROWS_AS(Normalizer::from_stream(in), Error);
}

TEST_CASE("shipped normalization file covers the builtin examples") {
  const auto n = Normalizer::from_file(test::source_path("config/normalization.tsv"));
  CHECK(n("mr30") == "mersi");
  CHECK(n("عالییییی") == "عالی");
}

TEST_CASE("preprocess drops empty tokens and remaps emoji positions") {
  const auto p = preprocess("خوب 123 بود :) !!", Normalizer());
  CHECK(p.normalized == Tokens{"خوب", "بود"});
  REQUIRE(p.emojis.size() == 1);
  CHECK(p.emojis[0].position == 2);
}

namespace {

std::vector<DepSentence> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_conll(in);
}

}  // namespace

TEST_CASE("parse_conll reads subject and predicate arcs") {
  const auto s = parse(
      "1\tموبایل\tN\t3\tSBJ\n"
      "2\tبد\tADJ\t3\tMOS\n"
      "3\tاست\tV\t0\tROOT\n"
      "4\t.\tPUNC\t3\tPUNC\n");
  REQUIRE(s.size() == 1);
  REQUIRE(s[0].size() == 3);  // the full stop normalizes away
  CHECK(s[0].relation(1) == "SBJ");
  CHECK(s[0].relation(2) == "MOS");
  CHECK(s[0].head(1) == 3);
  CHECK(s[0].token(2).surface == "بد");
  CHECK(s[0].token(2).pos == "ADJ");
}

TEST_CASE("parse_conll edge cases") {
  CHECK(parse("").empty());
  CHECK(parse("# only a comment\n\n\n").empty());
  const auto two = parse("1\ta\tN\t0\tROOT\n\n\n1\tb\tN\t0\tROOT\n2\tc\tN\t1\tX\n");
  REQUIRE(two.size() == 2);
  CHECK(two[1].size() == 2);
}

TEST_CASE("parse_conll reports malformed lines with their line number") {
  try {
    parse("1\ta\tN\t0\tROOT\n2\tb\tN\tx\tSBJ\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("1\ta\tN\t0\n"), FormatError);
  CHECK_THROWS_AS(parse("one\ta\tN\t0\tROOT\n"), FormatError);
}

TEST_CASE("parse_conll attaches the sentence ordinal to tree errors") {
  try {
    parse("1\ta\tN\t0\tROOT\n\n1\ta\tN\t0\tROOT\n2\tb\tN\t0\tROOT\n");
    FAIL("expected MultiRootError");
  } catch (const MultiRootError& e) {
    CHECK(e.sentence_ordinal() == 2);
    CHECK(std::string(e.what()).find("sentence 2") != std::string::npos);
  }
}

TEST_CASE("parse_conll lifts emojis and reattaches orphans") {
  const auto s = parse(
      "1\tخوب\tADJ\t2\tMOS\n"
      "2\t!!\tPUNC\t0\tROOT\n"
      "3\tبود\tV\t2\tX\n"
      "4\t:)\tPUNC\t3\tPUNC\n");
  REQUIRE(s.size() == 1);
  const auto& t = s[0];
  REQUIRE(t.size() == 2);
  CHECK(t.token(1).normalized == "خوب");
  CHECK(t.token(2).normalized == "بود");
  CHECK(t.head(1) == 0);  // first survivor becomes the root
  CHECK(t.head(2) == 1);
  REQUIRE(t.emojis().size() == 1);
  CHECK(t.emojis()[0].position == 2);
  CHECK(t.emojis()[0].cls == EmojiClass::Positive);
}

TEST_CASE("parse_conll reads CoNLL-U columns") {
  std::istringstream in("1\tخوب\t_\tADJ\t_\t_\t2\tamod\t_\t_\n2\tاست\t_\tVERB\t_\t_\t0\troot\t_\t_\n");
  const auto s = parse_conll(in, TreeReaderOptions{TreeFormat::ConllU});
  REQUIRE(s.size() == 1);
  CHECK(s[0].token(1).pos == "ADJ");
  CHECK(s[0].relation(1) == "amod");
}

TEST_CASE("parse_conll round trips random well-formed blocks") {
  test::TreeGenerator gen(23);
  std::ostringstream file;
  std::vector<DepSentence> expected;
  for (int i = 0; i < 200; ++i) {
    auto s = gen.next();
    expected.push_back(s);
    for (int t = 1; t <= static_cast<int>(s.size()); ++t) {
      file << t << '\t' << s.token(t).surface << '\t' << s.token(t).pos << '\t' << s.head(t) << '\t'
           << s.relation(t) << '\n';
    }
    file << '\n';
  }
  const auto got = parse(file.str());
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    REQUIRE(got[i].size() == expected[i].size());
    CHECK_NOTHROW(validate_tree(got[i]));
    for (int t = 1; t <= static_cast<int>(got[i].size()); ++t) {
      CHECK(got[i].head(t) == expected[i].head(t));
      CHECK(got[i].token(t).normalized == expected[i].token(t).normalized);
    }
  }
}

TEST_CASE("detect_tree_format") {
  CHECK(detect_tree_format(test::data_path("worked_examples.conll")) == TreeFormat::Conll5);
}

TEST_CASE("load_corpus") {
  std::istringstream one("pos\tgood phone\n");
  const auto c = load_corpus(one);
  REQUIRE(c.records.size() == 1);
  CHECK(c.records[0].label == Polarity::Positive);
  CHECK(c.records[0].text == "good phone");

  std::ostringstream big;
  for (int i = 0; i < 3000; ++i) big << (i % 2 ? "neg" : "pos") << "\ttext " << i << "\n\n";
  std::istringstream big_in(big.str());
  const auto b = load_corpus(big_in);
  CHECK(b.records.size() == 3000);
  CHECK(b.count(Polarity::Positive) == 1500);
  CHECK(b.count(Polarity::Negative) == 1500);

  std::istringstream bad("pos\tok\nmaybe\tunsure\n");
  try {
    load_corpus(bad);
    FAIL("expected LabelError");
  } catch (const LabelError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("bundled corpus and trees line up") {
  const auto corpus = load_corpus(test::data_path("mini_corpus.tsv"));
  const auto trees = parse_conll(test::data_path("mini_corpus.conll"));
  CHECK(corpus.records.size() == 40);
  CHECK(trees.size() == 40);
}
