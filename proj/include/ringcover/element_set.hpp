#ifndef RINGCOVER_ELEMENT_SET_HPP_
#define RINGCOVER_ELEMENT_SET_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ringcover {

//! Canonical index of a ring element (mixed-radix encoding of its coordinates).
using Element = std::uint32_t;

//! A set of ring elements stored as a bitset over canonical indices.
//!
//! The universe size is fixed at construction. Set operations between sets
//! of different universes are not meaningful and are not checked.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  ElementSet(std::size_t universe, std::initializer_list<Element> elems) : ElementSet(universe) {
    for (Element e : elems) insert(e);
  }

  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<Element>(i));
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(Element e) const noexcept {
    return e < universe_ && ((words_[e >> 6] >> (e & 63)) & 1U);
  }

  //! Returns true if e was not already present.
  bool insert(Element e) noexcept {
    std::uint64_t& w = words_[e >> 6];
    std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (w & bit) return false;
    w |= bit;
    ++count_;
    return true;
  }

  bool erase(Element e) noexcept {
    std::uint64_t& w = words_[e >> 6];
    std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (!(w & bit)) return false;
    w &= ~bit;
    --count_;
    return true;
  }

  ElementSet& operator|=(ElementSet const& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    recount();
    return *this;
  }

  ElementSet& operator&=(ElementSet const& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    recount();
    return *this;
  }

  //! Set difference.
  ElementSet& operator-=(ElementSet const& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    recount();
    return *this;
  }

  friend ElementSet operator|(ElementSet a, ElementSet const& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, ElementSet const& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, ElementSet const& b) { return a -= b; }

  bool is_subset_of(ElementSet const& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  bool intersects(ElementSet const& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  //! Members in increasing canonical order.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(count_);
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        f(static_cast<Element>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  //! Smallest member, or universe() when empty.
  Element first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] != 0) {
        return static_cast<Element>(i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i])));
      }
    }
    return static_cast<Element>(universe_);
  }

  std::vector<std::uint64_t> const& words() const noexcept { return words_; }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : words_) {
      h ^= w;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ universe_);
  }

  friend bool operator==(ElementSet const& a, ElementSet const& b) noexcept {
    return a.universe_ == b.universe_ && a.count_ == b.count_ && a.words_ == b.words_;
  }

  //! Canonical order: by size, then lexicographically by the ascending
  //! list of members.
  friend bool canonical_less(ElementSet const& a, ElementSet const& b) noexcept {
    if (a.count_ != b.count_) return a.count_ < b.count_;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (diff != 0) {
        // The lowest differing bit decides: whoever has it sorts first.
        std::uint64_t low = diff & (~diff + 1);
        return (a.words_[i] & low) != 0;
      }
    }
    return false;
  }

 private:
  void recount() noexcept {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    count_ = c;
  }

  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(ElementSet const& s) const noexcept { return s.hash(); }
};

}  // namespace ringcover

#endif  // RINGCOVER_ELEMENT_SET_HPP_
