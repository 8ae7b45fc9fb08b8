#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pemb/construction.hpp"

namespace pemb {

namespace {

constexpr std::string_view kMagic = "PEMB1";

void put_u64(std::string& out, std::uint64_t value) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((value >> (8 * k)) & 0xFF));
}

void put_bits(std::string& out, const BitArray& bits) {
  for (const auto word : bits.words()) put_u64(out, word);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t u64() {
    if (pos_ + 8 > bytes_.size()) throw std::runtime_error("PEMB1: truncated file");
    std::uint64_t value = 0;
    for (int k = 0; k < 8; ++k) {
      value |= std::uint64_t{static_cast<unsigned char>(bytes_[pos_ + k])} << (8 * k);
    }
    pos_ += 8;
    return value;
  }

  BitArray bits(std::size_t length) {
    BitArray out(length);
    for (auto& word : out.words()) word = u64();
    if (const auto tail = length & 63; tail != 0 && !out.words().empty()) {
      if (out.words().back() >> tail) throw std::runtime_error("PEMB1: non-zero padding bits");
    }
    return out;
  }

  bool done() const { return pos_ == bytes_.size(); }
  void skip(std::size_t count) { pos_ += count; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_compact(const CompactEmbedding& c) {
  std::string out(kMagic);
  put_u64(out, c.n);
  put_u64(out, c.m);
  put_bits(out, c.A.bits());
  put_bits(out, c.B.bits().bits());
  put_bits(out, c.Bstar.bits().bits());
  return out;
}

CompactEmbedding deserialize_compact(std::string_view bytes, int threads) {
  if (!bytes.starts_with(kMagic)) throw std::runtime_error("PEMB1: bad magic");
  Reader in(bytes);
  in.skip(kMagic.size());
  CompactEmbedding c;
  c.n = in.u64();
  c.m = in.u64();
  if (c.n < 2 || c.m + 1 < c.n) throw std::runtime_error("PEMB1: inconsistent n and m");
  auto a = in.bits(2 * c.m);
  auto b = in.bits(2 * c.n - 2);
  auto bstar = in.bits(2 * (c.m - c.n + 1));
  if (!in.done()) throw std::runtime_error("PEMB1: trailing bytes");
  c.A = build_rank_select(std::move(a), threads);
  if (c.A.ones() != 2 * c.n - 2) throw std::runtime_error("PEMB1: A does not match B");
  c.B = build_bp(std::move(b), threads);
  c.Bstar = build_bp(std::move(bstar), threads);
  return c;
}

void save_compact(const CompactEmbedding& c, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto bytes = serialize_compact(c);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

CompactEmbedding load_compact(const std::filesystem::path& path, int threads) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize_compact(buffer.str(), threads);
}

}  // namespace pemb
