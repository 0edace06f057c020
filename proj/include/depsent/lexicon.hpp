#ifndef DEPSENT_LEXICON_HPP
#define DEPSENT_LEXICON_HPP

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "depsent/core.hpp"
#include "depsent/ingest.hpp"

namespace depsent {

class ParseError : public FormatError {
 public:
  using FormatError::FormatError;
};

namespace detail {
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};
}  // namespace detail

/// Word polarity lexicon keyed on normalized forms. Strengths lie in [-1, 1];
/// words that are absent have strength exactly 0.
class Lexicon {
 public:
  using Map = std::unordered_map<std::string, double, detail::StringHash, std::equal_to<>>;

  Lexicon() = default;
  /// Throws Error if any strength is non-finite or outside [-1, 1].
  Lexicon(std::string name, Map entries);

  double strength(std::string_view word) const;
  bool contains(std::string_view word) const { return entries_.find(word) != entries_.end(); }

  const std::string& name() const { return name_; }
  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::string name_;
  Map entries_;
};

struct LexiconLoad {
  Lexicon lexicon;
  std::size_t duplicates = 0;  // repeated words; the last entry won
  double scale = 1.0;          // divisor applied to every strength
};

/// Reads `word<TAB>strength` lines ('#' comments and blank lines skipped).
/// If any |strength| exceeds 1, every strength is divided by the largest
/// magnitude in the file.
LexiconLoad load_lexicon(std::istream& in, std::string name = "lexicon");
LexiconLoad load_lexicon(const std::filesystem::path& path);

/// Stamps lex[token.normalized] (0 when absent) onto every token.
DepSentence assign_strengths(const DepSentence& sentence, const Lexicon& lex);

}  // namespace depsent

#endif  // DEPSENT_LEXICON_HPP
