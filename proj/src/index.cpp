#include "awci/index.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "awci/errors.hpp"
#include "awci/parallel.hpp"

namespace awci {

namespace {

constexpr std::array<char, 8> kCacheMagic = {'A', 'W', 'C', 'I',
                                             'I', 'D', 'X', '\0'};
constexpr std::uint32_t kCacheVersion = 1;

class Fnv1a {
 public:
  void add(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < size; ++k) {
      hash_ ^= bytes[k];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add(std::string_view text) {
    add(text.data(), text.size());
    add_u64(text.size());
  }
  void add_u64(std::uint64_t value) { add(&value, sizeof value); }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

template <typename T>
void write_vector(std::ostream& out, const std::vector<T>& v) {
  auto size = static_cast<std::uint64_t>(v.size());
  out.write(reinterpret_cast<const char*>(&size), sizeof size);
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
bool read_vector(std::istream& in, std::vector<T>& v) {
  std::uint64_t size = 0;
  if (!in.read(reinterpret_cast<char*>(&size), sizeof size)) return false;
  if (size > (std::uint64_t{1} << 40)) return false;
  v.resize(size);
  return static_cast<bool>(
      in.read(reinterpret_cast<char*>(v.data()),
              static_cast<std::streamsize>(size * sizeof(T))));
}

}  // namespace

RidgeC::RidgeC(const IndeterminateString& sx, const PosTable& pos_xy) {
  const int n = sx.length();
  counts_.assign(n + 1, 0);
  segment_.assign(n + 1, 0);
  for (int p = 1; p <= n; ++p) {
    counts_[p] = counts_[p - 1] + (pos_xy.row(p).empty() ? 1 : 0);
    segment_[p] = sx.contig_of(p);
  }
}

bool RidgeC::same_ridge(int i, int j, int delta) const {
  if (i < 1 || i > j || j > size())
    throw std::out_of_range("same_ridge: invalid range [" + std::to_string(i) +
                            "," + std::to_string(j) + "]");
  return segment_[i] == segment_[j] && trivial_in(i, j) <= delta;
}

PosTable build_pos_table(const IndeterminateString& sx,
                         const IndeterminateString& sy) {
  // Inverted index of S_y: character -> ascending positions.
  CharId max_char = 0;
  for (int p = 1; p <= sy.length(); ++p)
    for (CharId c : sy.at(p)) max_char = std::max(max_char, c);
  std::vector<std::uint32_t> start(static_cast<std::size_t>(max_char) + 2, 0);
  for (int p = 1; p <= sy.length(); ++p)
    for (CharId c : sy.at(p)) ++start[c + 1];
  for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
  std::vector<int> occurrences(start.back());
  {
    auto fill = start;
    for (int p = 1; p <= sy.length(); ++p)
      for (CharId c : sy.at(p)) occurrences[fill[c]++] = p;
  }

  std::vector<std::uint32_t> offsets;
  offsets.reserve(static_cast<std::size_t>(sx.length()) + 1);
  offsets.push_back(0);
  std::vector<int> positions;
  for (int p = 1; p <= sx.length(); ++p) {
    const auto row_begin = positions.size();
    for (CharId c : sx.at(p)) {
      if (c > max_char) continue;
      positions.insert(positions.end(), occurrences.begin() + start[c],
                       occurrences.begin() + start[c + 1]);
    }
    auto first = positions.begin() + static_cast<std::ptrdiff_t>(row_begin);
    std::sort(first, positions.end());
    positions.erase(std::unique(first, positions.end()), positions.end());
    offsets.push_back(static_cast<std::uint32_t>(positions.size()));
  }
  return PosTable(std::move(offsets), std::move(positions));
}

IntersectionIndex IntersectionIndex::build(const Dataset& data, int threads) {
  IntersectionIndex index;
  const auto m = data.size();
  index.m_ = m;
  index.pos_.resize(m * m);
  index.ridge_.resize(m * m);
  parallel_for(m * m, threads, [&](std::size_t k) {
    const auto x = k / m;
    const auto y = k % m;
    if (x == y) return;
    index.pos_[k] = build_pos_table(data[x], data[y]);
    index.ridge_[k] = RidgeC(data[x], index.pos_[k]);
  });
  return index;
}

std::uint64_t content_hash(const Dataset& data) {
  Fnv1a h;
  h.add_u64(data.size());
  for (const auto& s : data.strings) {
    h.add(s.id());
    h.add_u64(static_cast<std::uint64_t>(s.length()));
    for (int b : s.contig_breaks()) h.add_u64(static_cast<std::uint64_t>(b));
    for (int p = 1; p <= s.length(); ++p) {
      h.add_u64(s.at(p).size());
      for (CharId c : s.at(p)) h.add(data.alphabet.label(c));
    }
  }
  return h.value();
}

void IntersectionIndex::save_cache(const std::filesystem::path& path,
                                   const Dataset& data) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open cache file " + path.string());
  out.write(kCacheMagic.data(), kCacheMagic.size());
  out.write(reinterpret_cast<const char*>(&kCacheVersion),
            sizeof kCacheVersion);
  const auto hash = content_hash(data);
  out.write(reinterpret_cast<const char*>(&hash), sizeof hash);
  const auto m = static_cast<std::uint64_t>(m_);
  out.write(reinterpret_cast<const char*>(&m), sizeof m);
  for (const auto& table : pos_) {
    write_vector(out, table.offsets());
    write_vector(out, table.positions());
  }
  if (!out) throw IoError("failed writing cache file " + path.string());
}

std::optional<IntersectionIndex> IntersectionIndex::load_cache(
    const std::filesystem::path& path, const Dataset& data) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, 8> magic{};
  std::uint32_t version = 0;
  std::uint64_t hash = 0;
  std::uint64_t m = 0;
  if (!in.read(magic.data(), magic.size()) || magic != kCacheMagic)
    return std::nullopt;
  if (!in.read(reinterpret_cast<char*>(&version), sizeof version) ||
      version != kCacheVersion)
    return std::nullopt;
  if (!in.read(reinterpret_cast<char*>(&hash), sizeof hash) ||
      hash != content_hash(data))
    return std::nullopt;
  if (!in.read(reinterpret_cast<char*>(&m), sizeof m) || m != data.size())
    return std::nullopt;

  IntersectionIndex index;
  index.m_ = data.size();
  index.pos_.resize(index.m_ * index.m_);
  index.ridge_.resize(index.m_ * index.m_);
  for (std::size_t k = 0; k < index.pos_.size(); ++k) {
    std::vector<std::uint32_t> offsets;
    std::vector<int> positions;
    if (!read_vector(in, offsets) || !read_vector(in, positions))
      return std::nullopt;
    const auto x = k / index.m_;
    const auto y = k % index.m_;
    if (x == y) continue;
    if (offsets.size() != static_cast<std::size_t>(data[x].length()) + 1 ||
        offsets.back() != positions.size())
      return std::nullopt;
    index.pos_[k] = PosTable(std::move(offsets), std::move(positions));
    index.ridge_[k] = RidgeC(data[x], index.pos_[k]);
  }
  return index;
}

}  // namespace awci
