#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "depsent/fallback.hpp"

namespace depsent {

namespace {

constexpr char kMagic[8] = {'H', 'P', 'S', 'A', 'F', 'F', 'N', '\0'};
constexpr std::size_t kHeaderSize = 8 + 4 + 3 * 4 + 8 + 8;

std::uint64_t fnv1a(const unsigned char* data, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    buf_.insert(buf_.end(), c, c + n);
  }
  template <typename T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) buf_.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void f64(double d) { le(std::bit_cast<std::uint64_t>(d)); }
  std::vector<unsigned char>& buffer() { return buf_; }

 private:
  std::vector<unsigned char> buf_;
};

template <typename T>
T read_le(const unsigned char* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p[i]) << (8 * i);
  return v;
}

}  // namespace

void save_model(const FallbackModel& model, std::ostream& out) {
  const auto& s = model.shape();
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.le<std::uint32_t>(kModelFileVersion);
  w.le(static_cast<std::uint32_t>(s.max_len));
  w.le(static_cast<std::uint32_t>(s.dim));
  w.le(static_cast<std::uint32_t>(s.hidden));
  w.le<std::uint64_t>(model.seed);
  w.le(static_cast<std::uint64_t>(model.params.values().size()));
  for (double p : model.params.values()) w.f64(p);
  const auto sum = fnv1a(w.buffer().data(), w.buffer().size());
  w.le(sum);
  out.write(reinterpret_cast<const char*>(w.buffer().data()), static_cast<std::streamsize>(w.buffer().size()));
  if (!out) throw ModelFileError("failed to write model");
}

void save_model(const FallbackModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelFileError("cannot open " + path.string() + " for writing");
  save_model(model, out);
}

FallbackModel load_model(std::istream& in) {
  const std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < sizeof kMagic) throw ChecksumError("model file is truncated");
  if (std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0) throw ModelFileError("not a model file (bad magic)");
  if (buf.size() < 12) throw ChecksumError("model file is truncated");
  const auto version = read_le<std::uint32_t>(buf.data() + 8);
  if (version != kModelFileVersion) {
    throw VersionError("unsupported model file version " + std::to_string(version));
  }
  if (buf.size() < kHeaderSize + 8) throw ChecksumError("model file is truncated");

  ModelShape shape{read_le<std::uint32_t>(buf.data() + 12), read_le<std::uint32_t>(buf.data() + 16),
                   read_le<std::uint32_t>(buf.data() + 20)};
  const auto seed = read_le<std::uint64_t>(buf.data() + 24);
  const auto count = read_le<std::uint64_t>(buf.data() + 32);
  const auto expected_size = kHeaderSize + 8 * count + 8;
  if (count > buf.size() || buf.size() != expected_size) throw ChecksumError("model file size does not match header");
  const auto stored = read_le<std::uint64_t>(buf.data() + buf.size() - 8);
  if (fnv1a(buf.data(), buf.size() - 8) != stored) throw ChecksumError("model checksum mismatch");
  if (shape.max_len == 0 || shape.dim == 0 || shape.hidden == 0 || count != shape.parameter_count()) {
    throw ModelFileError("model header is inconsistent");
  }

  auto model = FallbackModel::zeros(shape);
  model.seed = seed;
  auto& values = model.params.values();
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = std::bit_cast<double>(read_le<std::uint64_t>(buf.data() + kHeaderSize + 8 * i));
  }
  return model;
}

FallbackModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFileError("cannot open model " + path.string());
  return load_model(in);
}

}  // namespace depsent
