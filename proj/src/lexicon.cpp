#include "depsent/lexicon.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

namespace depsent {

Lexicon::Lexicon(std::string name, Map entries) : name_(std::move(name)), entries_(std::move(entries)) {
  for (const auto& [word, s] : entries_) {
    if (!std::isfinite(s) || s < -1.0 || s > 1.0) {
      throw Error("lexicon '" + name_ + "': strength of '" + word + "' is outside [-1, 1]");
    }
  }
}

double Lexicon::strength(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? 0.0 : it->second;
}

LexiconLoad load_lexicon(std::istream& in, std::string name) {
  Lexicon::Map raw;
  LexiconLoad out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError(lineno, "expected word<TAB>strength");
    const std::string_view value = std::string_view(line).substr(tab + 1);
    std::string_view digits = value;
    while (!digits.empty() && digits.front() == ' ') digits.remove_prefix(1);
    while (!digits.empty() && digits.back() == ' ') digits.remove_suffix(1);
    if (digits.size() > 1 && digits.front() == '+') digits.remove_prefix(1);
    double s = 0.0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), s);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || !std::isfinite(s)) {
      throw ParseError(lineno, "strength '" + std::string(value) + "' is not a number");
    }
    auto [it, inserted] = raw.insert_or_assign(line.substr(0, tab), s);
    if (!inserted) ++out.duplicates;
  }

  double max_abs = 0.0;
  for (const auto& [w, s] : raw) max_abs = std::max(max_abs, std::abs(s));
  if (max_abs > 1.0) {
    out.scale = max_abs;
    for (auto& [w, s] : raw) s /= max_abs;
  }
  out.lexicon = Lexicon(std::move(name), std::move(raw));
  return out;
}

LexiconLoad load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon " + path.string());
  return load_lexicon(in, path.stem().string());
}

DepSentence assign_strengths(const DepSentence& sentence, const Lexicon& lex) {
  std::vector<double> s;
  s.reserve(sentence.size());
  for (const auto& t : sentence.tokens()) s.push_back(lex.strength(t.normalized));
  return sentence.with_strengths(s);
}

}  // namespace depsent
