#ifndef RINGCOVER_CACHE_HPP_
#define RINGCOVER_CACHE_HPP_

// On-disk cache of subring lattices, one file per ring:
//
//   <dir>/<16 hex digits of content_hash>.lattice
//
// Layout (all integers little-endian, fixed width):
//   "RCOV1"                          magic and format version
//   u32 len, len bytes               serialize(ring), guards against collisions
//   u32 order, u32 count, u32 words  words = ceil(order / 64)
//   count x (u8 maximal, words x u64)
//   u32 pairs, pairs x (u32, u32)    covering pairs

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "element_set.hpp"
#include "ring.hpp"
#include "subrings.hpp"

namespace ringcover {

inline constexpr char kCacheMagic[] = "RCOV1";

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string const& data) : data_(data) {}

  bool bytes(std::size_t n, std::string& out) {
    if (pos_ + n > data_.size()) return false;
    out = data_.substr(pos_, n);
    pos_ += n;
    return true;
  }

  template <typename T>
  bool uint(T& v) {
    if (pos_ + sizeof(T) > data_.size()) return false;
    v = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) {
      v |= static_cast<T>(static_cast<unsigned char>(data_[pos_ + b])) << (8 * b);
    }
    pos_ += sizeof(T);
    return true;
  }

  bool done() const { return pos_ == data_.size(); }

 private:
  std::string const& data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string cache_key(RingTable const& r) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << content_hash(r);
  return os.str();
}

inline std::string encode_lattice(RingTable const& r, SubringLattice const& lat) {
  std::string out(kCacheMagic, 5);
  auto ser = serialize(r);
  detail::put_u32(out, static_cast<std::uint32_t>(ser.size()));
  out.append(ser.begin(), ser.end());
  std::size_t const words = (r.order() + 63) / 64;
  detail::put_u32(out, static_cast<std::uint32_t>(r.order()));
  detail::put_u32(out, static_cast<std::uint32_t>(lat.size()));
  detail::put_u32(out, static_cast<std::uint32_t>(words));
  for (std::size_t i = 0; i < lat.size(); ++i) {
    out.push_back(lat.maximal[i] ? 1 : 0);
    for (std::uint64_t w : lat.subrings[i].words()) detail::put_u64(out, w);
  }
  detail::put_u32(out, static_cast<std::uint32_t>(lat.containment.size()));
  for (auto [a, b] : lat.containment) {
    detail::put_u32(out, static_cast<std::uint32_t>(a));
    detail::put_u32(out, static_cast<std::uint32_t>(b));
  }
  return out;
}

//! Decodes a cache blob for ring r; nullopt if it is malformed or belongs to
//! another ring.
inline std::optional<SubringLattice> decode_lattice(RingTable const& r, std::string const& data) {
  detail::Reader in(data);
  std::string magic;
  if (!in.bytes(5, magic) || magic != std::string(kCacheMagic, 5)) return std::nullopt;
  std::uint32_t len = 0;
  std::string ser;
  if (!in.uint(len) || !in.bytes(len, ser)) return std::nullopt;
  auto expect = serialize(r);
  if (ser != std::string(expect.begin(), expect.end())) return std::nullopt;
  std::uint32_t order = 0, count = 0, words = 0;
  if (!in.uint(order) || !in.uint(count) || !in.uint(words)) return std::nullopt;
  if (order != r.order() || words != (order + 63) / 64 || count == 0) return std::nullopt;
  SubringLattice lat;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint8_t flag = 0;
    if (!in.uint(flag) || flag > 1) return std::nullopt;
    ElementSet s(order);
    for (std::uint32_t w = 0; w < words; ++w) {
      std::uint64_t v = 0;
      if (!in.uint(v)) return std::nullopt;
      for (int b = 0; b < 64; ++b) {
        if ((v >> b) & 1U) {
          std::uint64_t e = std::uint64_t{w} * 64 + static_cast<std::uint64_t>(b);
          if (e >= order) return std::nullopt;
          s.insert(static_cast<Element>(e));
        }
      }
    }
    lat.subrings.push_back(std::move(s));
    lat.maximal.push_back(flag == 1);
  }
  std::uint32_t pairs = 0;
  if (!in.uint(pairs)) return std::nullopt;
  for (std::uint32_t i = 0; i < pairs; ++i) {
    std::uint32_t a = 0, b = 0;
    if (!in.uint(a) || !in.uint(b) || a >= count || b >= count) return std::nullopt;
    lat.containment.emplace_back(a, b);
  }
  if (!in.done()) return std::nullopt;
  return lat;
}

//! Spot-checks a decoded lattice: the extreme subrings are present, flags
//! agree with the covering pairs, and `samples` random products and sums
//! of members stay inside their subring.
inline bool plausible_lattice(RingTable const& r, SubringLattice const& lat, std::uint64_t seed,
                              std::size_t samples = 100) {
  if (lat.subrings.front().size() != 1 || !lat.subrings.front().contains(0)) return false;
  if (lat.subrings.back().size() != r.order()) return false;
  for (std::size_t i = 1; i < lat.size(); ++i) {
    if (canonical_less(lat.subrings[i], lat.subrings[i - 1])) return false;
  }
  std::vector<bool> flags(lat.size(), false);
  for (auto [a, b] : lat.containment) {
    if (!lat.subrings[a].is_subset_of(lat.subrings[b]) || a == b) return false;
    if (b + 1 == lat.size()) flags[a] = true;
  }
  if (flags != lat.maximal) return false;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    auto const& s = lat.subrings[rng() % lat.size()];
    auto elems = s.elements();
    Element a = elems[rng() % elems.size()];
    Element b = elems[rng() % elems.size()];
    if (!s.contains(r.add(a, b)) || !s.contains(r.mul(a, b))) return false;
  }
  return true;
}

//! Lattice provider backed by a cache directory. A missing, corrupt or
//! implausible entry is recomputed (with a warning for the latter two) and
//! rewritten. Safe to share between threads: concurrent writers of one key
//! each rename a private temp file into place.
class LatticeCache {
 public:
  LatticeCache(std::filesystem::path dir, std::uint64_t seed, std::ostream* warn = &std::cerr)
      : dir_(std::move(dir)), seed_(seed), warn_(warn) {}

  std::filesystem::path path_for(RingTable const& r) const { return dir_ / (cache_key(r) + ".lattice"); }

  std::optional<SubringLattice> get(RingTable const& r) {
    std::ifstream in(path_for(r), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    auto lat = decode_lattice(r, ss.str());
    if (!lat || !plausible_lattice(r, *lat, seed_)) {
      if (warn_) *warn_ << "warning: cache entry " << path_for(r) << " is corrupt; recomputing\n";
      ++corrupt_;
      return std::nullopt;
    }
    ++hits_;
    return lat;
  }

  void put(RingTable const& r, SubringLattice const& lat) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    auto final_path = path_for(r);
    auto tmp = final_path;
    tmp += "." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) return;
      std::string blob = encode_lattice(r, lat);
      out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    }
    std::filesystem::rename(tmp, final_path, ec);
  }

  SubringLattice operator()(RingTable const& r, std::size_t cap) {
    if (auto lat = get(r)) return *std::move(lat);
    ++misses_;
    SubringLattice lat = all_subrings(r, cap);
    put(r, lat);
    return lat;
  }

  std::size_t hits() const noexcept { return hits_; }
  std::size_t misses() const noexcept { return misses_; }
  std::size_t corrupt() const noexcept { return corrupt_; }

 private:
  std::filesystem::path dir_;
  std::uint64_t seed_;
  std::ostream* warn_;
  std::atomic<std::size_t> hits_ = 0;
  std::atomic<std::size_t> misses_ = 0;
  std::atomic<std::size_t> corrupt_ = 0;
};

}  // namespace ringcover

#endif  // RINGCOVER_CACHE_HPP_
