#include <charconv>
#include <fstream>

#include "depsent/ingest.hpp"

namespace depsent {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

struct RawToken {
  int id = 0;
  std::string form;
  std::string pos;
  int head = 0;
  std::string rel;
  std::size_t line = 0;
};

std::string column(std::string_view field) { return field == "_" ? std::string() : std::string(field); }

// Builds one sentence from its raw rows: lifts emojis out, drops tokens that
// normalize to nothing, re-attaches orphans to their nearest kept ancestor
// and renumbers.
DepSentence assemble(const std::vector<RawToken>& rows, const Normalizer& normalizer, const EmojiTable& emojis,
                     std::size_t ordinal) {
  const int n = static_cast<int>(rows.size());
  for (int i = 0; i < n; ++i) {
    if (rows[static_cast<std::size_t>(i)].id != i + 1) {
      throw FormatError(rows[static_cast<std::size_t>(i)].line,
                        "token ids must run 1..n, expected " + std::to_string(i + 1));
    }
  }

  // Validate the tree as given, so errors refer to the file's numbering.
  {
    std::vector<Token> tokens;
    std::vector<DepArc> arcs;
    for (const auto& r : rows) {
      tokens.push_back(Token{r.id, r.form, r.form, r.pos, 0.0});
      arcs.push_back(DepArc{r.id, r.head, r.rel});
    }
    try {
      validate_tree(DepSentence(std::move(tokens), std::move(arcs)));
    } catch (TreeError& e) {
      e.set_sentence_ordinal(ordinal);
      throw;
    }
  }

  std::vector<std::string> normalized(rows.size());
  std::vector<std::optional<EmojiClass>> emoji_class(rows.size());
  std::vector<bool> keep(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    emoji_class[i] = emojis.classify(rows[i].form);
    if (!emoji_class[i]) normalized[i] = normalizer(rows[i].form);
    keep[i] = !emoji_class[i] && !normalized[i].empty();
  }

  std::vector<int> new_index(rows.size() + 1, 0);
  int next = 0;
  std::vector<Emoji> found;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (keep[i]) {
      new_index[i + 1] = ++next;
    } else if (emoji_class[i]) {
      found.push_back(Emoji{static_cast<std::size_t>(next), *emoji_class[i], rows[i].form});
    }
  }

  auto kept_ancestor = [&](int id) {
    int cur = rows[static_cast<std::size_t>(id - 1)].head;
    while (cur != 0 && !keep[static_cast<std::size_t>(cur - 1)]) cur = rows[static_cast<std::size_t>(cur - 1)].head;
    return cur;
  };

  std::vector<Token> tokens;
  std::vector<DepArc> arcs;
  int root = 0;
  std::vector<std::size_t> orphans;  // kept tokens whose ancestry reaches the root through dropped tokens
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!keep[i]) continue;
    const auto& r = rows[i];
    const int head = kept_ancestor(r.id);
    tokens.push_back(Token{new_index[i + 1], r.form, normalized[i], r.pos, 0.0});
    arcs.push_back(DepArc{new_index[i + 1], head == 0 ? 0 : new_index[static_cast<std::size_t>(head)], r.rel});
    if (head == 0) {
      if (r.head == 0) {
        root = new_index[i + 1];
      } else {
        orphans.push_back(arcs.size() - 1);
      }
    }
  }
  // When the original root was dropped, its first surviving descendant takes over.
  if (root == 0 && !orphans.empty()) {
    root = arcs[orphans.front()].dependent;
    orphans.erase(orphans.begin());
  }
  for (auto k : orphans) arcs[k].head = root;

  DepSentence sentence(std::move(tokens), std::move(arcs), std::move(found));
  try {
    validate_tree(sentence);
  } catch (TreeError& e) {
    e.set_sentence_ordinal(ordinal);
    throw;
  }
  return sentence;
}

}  // namespace

std::vector<DepSentence> parse_conll(std::istream& in, const TreeReaderOptions& options) {
  static const Normalizer builtin;
  const Normalizer& normalizer = options.normalizer ? *options.normalizer : builtin;
  const EmojiTable& emojis = options.emojis ? *options.emojis : EmojiTable::standard();
  const bool conllu = options.format == TreeFormat::ConllU;
  const std::size_t columns = conllu ? 10 : 5;
  // ID FORM POS HEAD DEPREL positions within a row.
  const std::size_t c_form = 1, c_pos = conllu ? 3 : 2, c_head = conllu ? 6 : 3, c_rel = conllu ? 7 : 4;

  std::vector<DepSentence> out;
  std::vector<RawToken> block;
  std::string line;
  std::size_t lineno = 0;
  auto finish = [&] {
    if (block.empty()) return;
    out.push_back(assemble(block, normalizer, emojis, out.size() + 1));
    block.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      finish();
      continue;
    }
    if (line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != columns) {
      throw FormatError(lineno, "expected " + std::to_string(columns) + " tab-separated columns, found " +
                                    std::to_string(fields.size()));
    }
    // CoNLL-U multiword ranges (2-3) and empty nodes (2.1) carry no arc.
    if (conllu && fields[0].find_first_of("-.") != std::string_view::npos) continue;

    RawToken row;
    row.line = lineno;
    if (!parse_int(fields[0], row.id)) throw FormatError(lineno, "non-numeric ID '" + std::string(fields[0]) + "'");
    if (!parse_int(fields[c_head], row.head)) {
      throw FormatError(lineno, "non-numeric HEAD '" + std::string(fields[c_head]) + "'");
    }
    row.form = std::string(fields[c_form]);
    row.pos = column(fields[c_pos]);
    row.rel = column(fields[c_rel]);
    block.push_back(std::move(row));
  }
  finish();
  return out;
}

std::vector<DepSentence> parse_conll(const std::filesystem::path& path, const TreeReaderOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tree file " + path.string());
  return parse_conll(in, options);
}

TreeFormat detect_tree_format(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tree file " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    return split_tabs(line).size() >= 10 ? TreeFormat::ConllU : TreeFormat::Conll5;
  }
  return TreeFormat::Conll5;
}

std::size_t RawCorpus::count(Polarity label) const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.label == label ? 1 : 0;
  return n;
}

RawCorpus load_corpus(std::istream& in) {
  RawCorpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto tab = line.find('\t');
    const std::string label = line.substr(0, tab);
    if (label != "pos" && label != "neg") throw LabelError(lineno, "unknown label '" + label + "'");
    if (tab == std::string::npos) throw FormatError(lineno, "expected label<TAB>text");
    corpus.records.push_back(
        CorpusRecord{label == "pos" ? Polarity::Positive : Polarity::Negative, line.substr(tab + 1)});
  }
  return corpus;
}

RawCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus " + path.string());
  return load_corpus(in);
}

}  // namespace depsent
