#ifndef DEPSENT_INGEST_HPP
#define DEPSENT_INGEST_HPP

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "depsent/core.hpp"

namespace depsent {

/// Malformed input line. `line()` is 1-based.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class LabelError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Emoticon inventory used by tokenize() and extract_emojis().
struct EmojiTable {
  std::vector<std::string> positive;
  std::vector<std::string> negative;

  /// :-) :) :-] :] :D and :( :-(( :'(
  static const EmojiTable& standard();

  std::optional<EmojiClass> classify(std::string_view token) const;
  /// Length in bytes of the longest emoji starting at text[pos], or 0.
  std::size_t match_at(std::string_view text, std::size_t pos) const;
};

/// Splits on whitespace and cuts emoji sequences out as tokens of their own.
std::vector<std::string> tokenize(std::string_view text, const EmojiTable& emojis = EmojiTable::standard());

struct EmojiExtraction {
  std::vector<std::string> tokens;
  std::vector<Emoji> emojis;
};

/// Removes every emoji token, recording its class and insertion point.
EmojiExtraction extract_emojis(const std::vector<std::string>& tokens,
                               const EmojiTable& emojis = EmojiTable::standard());

/// Token normalizer: informal-spelling table lookup, Arabic/Persian letter
/// unification, removal of digits, punctuation, diacritics and kashida, and
/// collapse of letters repeated three or more times. Idempotent.
class Normalizer {
 public:
  /// Built-in mapping seeded with the common informal spellings.
  Normalizer();
  explicit Normalizer(const std::unordered_map<std::string, std::string>& mapping);

  /// Reads `variant<TAB>canonical` lines; blank lines and '#' comments skipped.
  static Normalizer from_file(const std::filesystem::path& path);
  static Normalizer from_stream(std::istream& in);

  std::string operator()(std::string_view token) const;

  const std::unordered_map<std::string, std::string>& mapping() const { return mapping_; }

 private:
  std::string resolve(std::string s) const;

  std::unordered_map<std::string, std::string> mapping_;
};

/// Character-level cleanup without the mapping table.
std::string strip_digits_and_punctuation(std::string_view token);
std::string collapse_elongation(std::string_view token);

/// normalize() with the built-in Normalizer.
std::string normalize(std::string_view token);

/// Raw text run through tokenize → extract_emojis → normalize, with tokens
/// that normalize to nothing dropped.
struct PreprocessedText {
  std::vector<std::string> surface;
  std::vector<std::string> normalized;
  std::vector<Emoji> emojis;
};

PreprocessedText preprocess(std::string_view text, const Normalizer& normalizer,
                            const EmojiTable& emojis = EmojiTable::standard());

/// Column layout of a dependency file.
///   Conll5: ID FORM POS HEAD DEPREL
///   ConllU: the ten CoNLL-U columns; ID FORM UPOS HEAD DEPREL are used.
enum class TreeFormat { Conll5, ConllU };

struct TreeReaderOptions {
  TreeFormat format = TreeFormat::Conll5;
  const Normalizer* normalizer = nullptr;  // nullptr: built-in normalizer
  const EmojiTable* emojis = nullptr;      // nullptr: standard table
};

/// Reads blank-line separated sentence blocks. Lines starting with '#' are
/// comments. Emoji tokens are moved to the sentence's emoji list, tokens that
/// normalize to nothing are removed, and their dependents are re-attached to
/// the nearest surviving ancestor. Every returned sentence is validated.
std::vector<DepSentence> parse_conll(std::istream& in, const TreeReaderOptions& options = {});
std::vector<DepSentence> parse_conll(const std::filesystem::path& path, const TreeReaderOptions& options = {});

/// Guesses the layout from the column count of the first token line.
TreeFormat detect_tree_format(const std::filesystem::path& path);

struct CorpusRecord {
  Polarity label = Polarity::Positive;
  std::string text;
};

struct RawCorpus {
  std::vector<CorpusRecord> records;

  std::size_t count(Polarity label) const;
};

/// `label<TAB>text` lines with label pos or neg. Blank lines are skipped.
RawCorpus load_corpus(std::istream& in);
RawCorpus load_corpus(const std::filesystem::path& path);

}  // namespace depsent

#endif  // DEPSENT_INGEST_HPP
