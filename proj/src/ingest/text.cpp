#include <fstream>
#include <sstream>

#include "depsent/ingest.hpp"
#include "utf8.hpp"

namespace depsent {

FormatError::FormatError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

// ---------------------------------------------------------------------------
// Emojis and tokenization
// ---------------------------------------------------------------------------

const EmojiTable& EmojiTable::standard() {
  static const EmojiTable table{{":-)", ":)", ":-]", ":]", ":D"}, {":(", ":-((", ":'("}};
  return table;
}

std::optional<EmojiClass> EmojiTable::classify(std::string_view token) const {
  for (const auto& e : positive) {
    if (token == e) return EmojiClass::Positive;
  }
  for (const auto& e : negative) {
    if (token == e) return EmojiClass::Negative;
  }
  return std::nullopt;
}

std::size_t EmojiTable::match_at(std::string_view text, std::size_t pos) const {
  std::size_t best = 0;
  const auto rest = text.substr(pos);
  for (const auto* set : {&positive, &negative}) {
    for (const auto& e : *set) {
      if (e.size() > best && rest.starts_with(e)) best = e.size();
    }
  }
  return best;
}

std::vector<std::string> tokenize(std::string_view text, const EmojiTable& emojis) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (const auto m = emojis.match_at(text, pos); m > 0) {
      flush();
      out.emplace_back(text.substr(pos, m));
      pos += m;
      continue;
    }
    const std::size_t begin = pos;
    const char32_t cp = utf8::next(text, pos);
    if (utf8::is_space(cp)) {
      flush();
    } else {
      current.append(text.substr(begin, pos - begin));
    }
  }
  flush();
  return out;
}

EmojiExtraction extract_emojis(const std::vector<std::string>& tokens, const EmojiTable& emojis) {
  EmojiExtraction out;
  for (const auto& t : tokens) {
    if (auto cls = emojis.classify(t)) {
      out.emojis.push_back(Emoji{out.tokens.size(), *cls, t});
    } else {
      out.tokens.push_back(t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

bool is_digit(char32_t cp) {
  return (cp >= '0' && cp <= '9') || (cp >= 0x0660 && cp <= 0x0669) || (cp >= 0x06F0 && cp <= 0x06F9);
}

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) return cp > 0x20 && cp < 0x7F && !((cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') ||
                                                      (cp >= 'a' && cp <= 'z'));
  return cp == 0x00AB || cp == 0x00BB || cp == 0x060C || cp == 0x061B || cp == 0x061F ||
         (cp >= 0x066A && cp <= 0x066D) || cp == 0x06D4 || (cp >= 0x2010 && cp <= 0x2027) ||
         (cp >= 0x2030 && cp <= 0x205E) || (cp >= 0x00A1 && cp <= 0x00BF);
}

// Harakat and kashida carry no lexical content.
bool is_ignorable_mark(char32_t cp) { return (cp >= 0x064B && cp <= 0x0652) || cp == 0x0640; }

char32_t unify_letter(char32_t cp) {
  switch (cp) {
    case 0x064A:  // Arabic yeh
    case 0x0649:  // alef maksura
      return 0x06CC;
    case 0x0643:  // Arabic kaf
      return 0x06A9;
    default:
      return cp;
  }
}

}  // namespace

std::string strip_digits_and_punctuation(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  std::size_t pos = 0;
  while (pos < token.size()) {
    const char32_t cp = utf8::next(token, pos);
    if (is_digit(cp) || is_punctuation(cp) || is_ignorable_mark(cp)) continue;
    utf8::append(out, unify_letter(cp));
  }
  return out;
}

std::string collapse_elongation(std::string_view token) {
  std::vector<char32_t> cps;
  for (std::size_t pos = 0; pos < token.size();) cps.push_back(utf8::next(token, pos));
  std::string out;
  out.reserve(token.size());
  for (std::size_t i = 0; i < cps.size();) {
    std::size_t j = i;
    while (j < cps.size() && cps[j] == cps[i]) ++j;
    const std::size_t run = j - i;
    for (std::size_t k = 0; k < (run >= 3 ? 1 : run); ++k) utf8::append(out, cps[i]);
    i = j;
  }
  return out;
}

namespace {

std::string sanitize(std::string_view s) { return collapse_elongation(strip_digits_and_punctuation(s)); }

const std::unordered_map<std::string, std::string>& builtin_mapping() {
  // The digit spelling of "thanks" (mersi) and an elongated "great".
  static const std::unordered_map<std::string, std::string> m{
      {"mr30", "mersi"},
      {"مر30", "مرسی"},
      {"مر۳۰", "مرسی"},
      {"عالییییی", "عالی"},
  };
  return m;
}

}  // namespace

Normalizer::Normalizer() : Normalizer(builtin_mapping()) {}

Normalizer::Normalizer(const std::unordered_map<std::string, std::string>& mapping) {
  for (const auto& [variant, canonical] : mapping) {
    auto clean = sanitize(canonical);
    if (!variant.empty() && !clean.empty()) mapping_.emplace(variant, std::move(clean));
  }
  // Chains must terminate so that resolve() reaches a fixed point.
  for (const auto& [variant, canonical] : mapping_) {
    std::string cur = canonical;
    for (std::size_t steps = 0;; ++steps) {
      auto it = mapping_.find(cur);
      if (it == mapping_.end() || it->second == cur) break;
      if (steps > mapping_.size()) throw Error("normalization map has a cycle through '" + variant + "'");
      cur = it->second;
    }
  }
}

Normalizer Normalizer::from_stream(std::istream& in) {
  std::unordered_map<std::string, std::string> mapping;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw FormatError(lineno, "expected variant<TAB>canonical");
    }
    mapping[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return Normalizer(mapping);
}

Normalizer Normalizer::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open normalization map " + path.string());
  return from_stream(in);
}

std::string Normalizer::resolve(std::string s) const {
  for (std::size_t steps = 0; steps <= mapping_.size(); ++steps) {
    auto it = mapping_.find(s);
    if (it == mapping_.end() || it->second == s) break;
    s = it->second;
  }
  return s;
}

std::string Normalizer::operator()(std::string_view token) const {
  std::string s(token);
  if (auto it = mapping_.find(s); it != mapping_.end()) s = it->second;
  return resolve(sanitize(s));
}

std::string normalize(std::string_view token) {
  static const Normalizer normalizer;
  return normalizer(token);
}

PreprocessedText preprocess(std::string_view text, const Normalizer& normalizer, const EmojiTable& emojis) {
  PreprocessedText out;
  // Emojis are lifted out before normalization, which would erase them.
  auto extracted = extract_emojis(tokenize(text, emojis), emojis);
  std::vector<std::size_t> kept_before(extracted.tokens.size() + 1, 0);
  for (std::size_t i = 0; i < extracted.tokens.size(); ++i) {
    auto norm = normalizer(extracted.tokens[i]);
    kept_before[i + 1] = kept_before[i] + (norm.empty() ? 0 : 1);
    if (norm.empty()) continue;
    out.surface.push_back(extracted.tokens[i]);
    out.normalized.push_back(std::move(norm));
  }
  for (auto e : extracted.emojis) {
    e.position = kept_before[e.position];
    out.emojis.push_back(std::move(e));
  }
  return out;
}

}  // namespace depsent
