#include <doctest.h>

#include "depsent/core.hpp"
#include "support/support.hpp"

using namespace depsent;

namespace {

DepSentence bare(std::vector<std::pair<int, int>> arcs) {
  std::vector<Token> tokens;
  std::vector<DepArc> out;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    tokens.push_back(Token{static_cast<int>(i + 1), "t", "t", "N", 0.0});
  }
  for (auto [dep, head] : arcs) out.push_back(DepArc{dep, head, "X"});
  return DepSentence(std::move(tokens), std::move(out));
}

}  // namespace

TEST_CASE("validate_tree accepts a three-token tree") {
  const auto s = bare({{1, 2}, {2, 0}, {3, 2}});
  CHECK_NOTHROW(validate_tree(s));
  CHECK(&validate_tree(s) == &s);
  CHECK(s.dependents(2) == std::vector<int>{1, 3});
  CHECK(s.dependents(0) == std::vector<int>{2});
}

TEST_CASE("validate_tree rejects malformed arc sets") {
  CHECK_THROWS_AS(validate_tree(bare({{1, 2}, {2, 1}})), CycleError);
  CHECK_THROWS_AS(validate_tree(bare({{1, 0}, {2, 0}})), MultiRootError);
  CHECK_THROWS_AS(validate_tree(bare({{1, 0}, {2, 5}})), DanglingHeadError);
  CHECK_THROWS_AS(validate_tree(bare({{1, 1}})), CycleError);
  CHECK_THROWS_AS(validate_tree(bare({{1, 2}, {2, 3}, {3, 2}})), CycleError);
}

TEST_CASE("tree errors are catchable through the common root") {
  CHECK_THROWS_AS(validate_tree(bare({{1, 0}, {2, 0}})), TreeError);
  CHECK_THROWS_AS(validate_tree(bare({{1, 0}, {2, 0}})), Error);
}

TEST_CASE("the empty sentence is valid") { CHECK_NOTHROW(validate_tree(DepSentence{})); }

TEST_CASE("arcs given out of order are stored by dependent") {
  const auto s = bare({{3, 2}, {1, 2}, {2, 0}});
  CHECK_NOTHROW(validate_tree(s));
  CHECK(s.head(1) == 2);
  CHECK(s.head(2) == 0);
}

TEST_CASE("random trees have exactly one root and revalidate") {
  test::TreeGenerator gen(5);
  for (int i = 0; i < 300; ++i) {
    const auto s = gen.next();
    int roots = 0;
    for (const auto& a : s.arcs()) roots += a.head == 0;
    CHECK(roots == 1);
    CHECK_NOTHROW(validate_tree(validate_tree(s)));
  }
}

TEST_CASE("with_strengths replaces only strengths") {
  const auto s = bare({{1, 0}, {2, 1}});
  const std::vector<double> v = {0.25, -0.5};
  const auto t = s.with_strengths(v);
  CHECK(t.strengths() == v);
  CHECK(t.token(2).normalized == s.token(2).normalized);
  CHECK(s.strengths() == std::vector<double>{0.0, 0.0});
  const std::vector<double> wrong = {1.0};
  CHECK_THROWS_AS((void)s.with_strengths(wrong), Error);
}

TEST_CASE("tree error ordinal is part of the message") {
  TreeError e("bad arc");
  CHECK(std::string(e.what()) == "bad arc");
  e.set_sentence_ordinal(4);
  CHECK(e.sentence_ordinal() == 4);
  CHECK(std::string(e.what()) == "sentence 4: bad arc");
}

TEST_CASE("polarity names round trip") {
  CHECK(to_string(Polarity::Positive) == "positive");
  CHECK(parse_polarity("neg") == Polarity::Negative);
  CHECK(parse_polarity("positive") == Polarity::Positive);
  CHECK_FALSE(parse_polarity("maybe").has_value());
  CHECK_FALSE(parse_polarity("Positive").has_value());
}

TEST_CASE("segment arithmetic") {
  Segment s{3, 5};
  CHECK(s.length() == 3);
  CHECK(s.contains(3));
  CHECK(s.contains(5));
  CHECK_FALSE(s.contains(6));
  CHECK(bare({{1, 0}, {2, 1}}).whole() == Segment{1, 2});
}
