#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "depsent/fallback.hpp"

namespace depsent {

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim), zeros_(dim, 0.0) {
  if (dim == 0) throw Error("embedding dimension must be positive");
}

bool EmbeddingTable::contains(std::string_view word) const { return index_.count(std::string(word)) != 0; }

bool EmbeddingTable::add(std::string word, std::span<const double> vector) {
  if (vector.size() != dim_) {
    throw DimMismatchError(0, "vector for '" + word + "' has " + std::to_string(vector.size()) +
                                  " components, expected " + std::to_string(dim_));
  }
  for (double v : vector) {
    if (!std::isfinite(v)) throw DimMismatchError(0, "vector for '" + word + "' has a non-finite component");
  }
  if (index_.count(word)) return false;
  index_.emplace(std::move(word), data_.size() / dim_);
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

std::span<const double> EmbeddingTable::lookup(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return zeros_;
  return {data_.data() + it->second * dim_, dim_};
}

namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingLoad load_embeddings(std::istream& in, const Normalizer* normalizer) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(1, "embedding file is empty");
  const auto header = fields(line);
  std::size_t count = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_number(header[0], count) || !parse_number(header[1], dim) || dim == 0) {
    throw FormatError(1, "expected a 'count dim' header");
  }

  EmbeddingLoad result{EmbeddingTable(dim), count, {}};
  std::vector<double> vec(dim);
  std::size_t lineno = 1;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = fields(line);
    if (f.empty()) continue;
    if (f.size() - 1 != dim) {
      throw DimMismatchError(lineno, "expected " + std::to_string(dim) + " values, found " +
                                         std::to_string(f.size() - 1));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (!parse_number(f[i + 1], vec[i]) || !std::isfinite(vec[i])) {
        throw FormatError(lineno, "bad vector component '" + std::string(f[i + 1]) + "'");
      }
    }
    ++rows;
    auto word = normalizer ? (*normalizer)(f[0]) : normalize(f[0]);
    if (word.empty()) continue;
    result.table.add(std::move(word), vec);
  }
  if (rows != count) {
    result.warnings.push_back("header declares " + std::to_string(count) + " vectors, file has " +
                              std::to_string(rows));
  }
  return result;
}

EmbeddingLoad load_embeddings(const std::filesystem::path& path, const Normalizer* normalizer) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embeddings " + path.string());
  return load_embeddings(in, normalizer);
}

std::vector<double> vectorize(std::span<const std::string> words, const EmbeddingTable& table, std::size_t n) {
  const auto k = table.dim();
  std::vector<double> out(n * k, 0.0);
  const auto used = std::min(words.size(), n);
  for (std::size_t i = 0; i < used; ++i) {
    const auto v = table.lookup(words[i]);
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(i * k));
  }
  return out;
}

std::vector<double> vectorize(const DepSentence& sentence, const EmbeddingTable& table, std::size_t n) {
  std::vector<std::string> words;
  words.reserve(sentence.size());
  for (const auto& t : sentence.tokens()) words.push_back(t.normalized);
  return vectorize(words, table, n);
}

}  // namespace depsent
