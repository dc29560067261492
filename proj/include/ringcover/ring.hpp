#ifndef RINGCOVER_RING_HPP_
#define RINGCOVER_RING_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "error.hpp"

namespace ringcover {

using Coords = std::vector<std::uint32_t>;

//! Structure constants: consts[i][j] is the coordinate vector of g_i * g_j.
using StructConsts = std::vector<std::vector<Coords>>;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

//! Returns the prime p with n = p^e (e >= 1), or 0 if n is not a prime power.
inline std::uint64_t prime_of_power(std::uint64_t n) {
  if (n < 2) return 0;
  std::uint64_t p = 2;
  while (n % p != 0) ++p;
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> prime_power_parts(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> parts;  // (p, p^e)
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::uint64_t q = 1;
    while (n % p == 0) {
      n /= p;
      q *= p;
    }
    parts.emplace_back(p, q);
  }
  if (n > 1) parts.emplace_back(n, n);
  return parts;
}

struct Tables {
  std::vector<std::uint16_t> add;
  std::vector<std::uint16_t> mul;
  std::vector<std::uint16_t> neg;
};

}  // namespace detail

//! A finite unital ring given by the shape of its additive group (a list of
//! prime-power cyclic orders), structure constants on the additive basis, and
//! the coordinates of 1. Immutable; copies share the element tables.
class RingTable {
 public:
  //! Element tables are materialised eagerly, which bounds the order.
  static constexpr std::size_t kMaxOrder = 2048;

  RingTable() = default;

  friend RingTable make_ring(std::vector<std::uint32_t> shape, StructConsts consts, Coords unit);

  std::size_t order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::vector<std::uint32_t> const& shape() const noexcept { return shape_; }
  StructConsts const& consts() const noexcept { return consts_; }
  Coords const& unit_coords() const noexcept { return unit_; }
  std::uint64_t characteristic() const noexcept { return characteristic_; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return one_; }

  //! Canonical index of the i-th additive generator.
  Element basis(std::size_t i) const noexcept { return static_cast<Element>(weights_[i]); }

  Element add(Element x, Element y) const noexcept { return tables_->add[x * order_ + y]; }
  Element neg(Element x) const noexcept { return tables_->neg[x]; }
  Element sub(Element x, Element y) const noexcept { return add(x, neg(y)); }
  Element mul(Element x, Element y) const noexcept { return tables_->mul[x * order_ + y]; }

  //! n * x by repeated doubling.
  Element scale(std::uint64_t n, Element x) const noexcept {
    Element acc = 0;
    Element base = x;
    while (n != 0) {
      if (n & 1U) acc = add(acc, base);
      base = add(base, base);
      n >>= 1;
    }
    return acc;
  }

  Element pow(Element x, std::uint64_t n) const noexcept {
    Element acc = one_;
    Element base = x;
    while (n != 0) {
      if (n & 1U) acc = mul(acc, base);
      base = mul(base, base);
      n >>= 1;
    }
    return acc;
  }

  //! Product computed directly by bilinear expansion over the structure
  //! constants, without the cached table.
  Element mul_expand(Element x, Element y) const {
    Coords cx = coords(x);
    Coords cy = coords(y);
    Coords acc(rank(), 0);
    for (std::size_t i = 0; i < rank(); ++i) {
      if (cx[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j) {
        if (cy[j] == 0) continue;
        Coords term = coord_scale(static_cast<std::uint64_t>(cx[i]) * cy[j], consts_[i][j]);
        for (std::size_t l = 0; l < rank(); ++l) acc[l] = (acc[l] + term[l]) % shape_[l];
      }
    }
    return index(acc);
  }

  Coords coords(Element x) const {
    Coords c(rank());
    std::size_t v = x;
    for (std::size_t i = rank(); i-- > 0;) {
      c[i] = static_cast<std::uint32_t>(v % shape_[i]);
      v /= shape_[i];
    }
    return c;
  }

  Element index(std::span<std::uint32_t const> c) const {
    if (c.size() != rank()) {
      throw RingError(Errc::malformed_coords, "coordinate vector has wrong length");
    }
    std::size_t v = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (c[i] >= shape_[i]) throw RingError(Errc::malformed_coords, "coordinate out of range");
      v = v * shape_[i] + c[i];
    }
    return static_cast<Element>(v);
  }
  Element index(std::initializer_list<std::uint32_t> c) const { return index(std::span(c.begin(), c.size())); }

  //! Additive order of x.
  std::uint64_t additive_order(Element x) const {
    Coords c = coords(x);
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      o = std::lcm(o, shape_[i] / std::gcd<std::uint64_t>(c[i], shape_[i]));
    }
    return o;
  }

  bool is_nilpotent(Element x) const noexcept {
    Element y = x;
    for (std::size_t i = 0; i <= order_; ++i) {
      if (y == 0) return true;
      y = mul(y, x);
    }
    return false;
  }

  bool is_commutative() const noexcept {
    for (std::size_t i = 0; i < rank(); ++i) {
      for (std::size_t j = i + 1; j < rank(); ++j) {
        if (consts_[i][j] != consts_[j][i]) return false;
      }
    }
    return true;
  }

  //! x is a unit iff it has a two-sided inverse.
  bool is_unit(Element x) const noexcept {
    for (Element v = 0; v < order_; ++v) {
      if (mul(x, v) == one_) return mul(v, x) == one_;
    }
    return false;
  }

  ElementSet units() const {
    ElementSet u(order_);
    for (Element x = 0; x < order_; ++x) {
      if (is_unit(x)) u.insert(x);
    }
    return u;
  }

  ElementSet all() const { return ElementSet::full(order_); }
  ElementSet none() const { return ElementSet(order_); }

  std::string format(Element x) const {
    std::ostringstream os;
    os << '[';
    Coords c = coords(x);
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ']';
    return os.str();
  }

  //! Structural equality: same shape, structure constants, and unit.
  friend bool operator==(RingTable const& a, RingTable const& b) noexcept {
    return a.shape_ == b.shape_ && a.consts_ == b.consts_ && a.unit_ == b.unit_;
  }

 private:
  Coords coord_scale(std::uint64_t n, Coords const& v) const {
    Coords out(v.size());
    for (std::size_t l = 0; l < v.size(); ++l) {
      out[l] = static_cast<std::uint32_t>((n % shape_[l]) * v[l] % shape_[l]);
    }
    return out;
  }

  void build_tables();

  std::vector<std::uint32_t> shape_;
  StructConsts consts_;
  Coords unit_;
  std::vector<std::size_t> weights_;
  std::size_t order_ = 0;
  std::uint64_t characteristic_ = 0;
  Element one_ = 0;
  std::shared_ptr<detail::Tables const> tables_;
};

inline void RingTable::build_tables() {
  std::size_t const n = order_;
  std::size_t const k = rank();
  auto t = std::make_shared<detail::Tables>();
  t->add.resize(n * n);
  t->mul.assign(n * n, 0);
  t->neg.resize(n);

  std::vector<std::uint32_t> digits(n * k);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t v = x;
    for (std::size_t i = k; i-- > 0;) {
      digits[x * k + i] = static_cast<std::uint32_t>(v % shape_[i]);
      v /= shape_[i];
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t v = 0;
      for (std::size_t i = 0; i < k; ++i) {
        v = v * shape_[i] + (digits[x * k + i] + digits[y * k + i]) % shape_[i];
      }
      t->add[x * n + y] = static_cast<std::uint16_t>(v);
    }
    std::size_t v = 0;
    for (std::size_t i = 0; i < k; ++i) {
      v = v * shape_[i] + (shape_[i] - digits[x * k + i]) % shape_[i];
    }
    t->neg[x] = static_cast<std::uint16_t>(v);
  }

  // Bilinear extension. Peeling the lowest-order nonzero coordinate off an
  // element gives x = x' + g_i with x' < x, so rows (and, within the basis
  // rows, columns) are filled by one addition each.
  auto last_nonzero = [&](std::size_t x) {
    for (std::size_t i = k; i-- > 0;) {
      if (digits[x * k + i] != 0) return i;
    }
    return k;
  };
  std::vector<std::vector<std::uint16_t>> left_basis(k, std::vector<std::uint16_t>(n, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t y = 1; y < n; ++y) {
      std::size_t j = last_nonzero(y);
      std::size_t prev = y - weights_[j];
      std::size_t prod = index(consts_[i][j]);
      left_basis[i][y] = t->add[left_basis[i][prev] * n + prod];
    }
  }
  for (std::size_t x = 1; x < n; ++x) {
    std::size_t i = last_nonzero(x);
    std::size_t prev = x - weights_[i];
    for (std::size_t y = 0; y < n; ++y) {
      t->mul[x * n + y] = t->add[t->mul[prev * n + y] * n + left_basis[i][y]];
    }
  }
  tables_ = std::move(t);
}

//! Validates and builds a ring. Checks: prime-power shape, coordinate ranges,
//! compatibility of products with the additive orders, unit axioms and
//! associativity on basis triples.
inline RingTable make_ring(std::vector<std::uint32_t> shape, StructConsts consts, Coords unit) {
  std::size_t const k = shape.size();
  std::size_t order = 1;
  for (std::uint32_t d : shape) {
    if (detail::prime_of_power(d) == 0) {
      throw RingError(Errc::bad_order, "additive shape entry " + std::to_string(d) +
                                           " is not a prime power >= 2");
    }
    order *= d;
    if (order > RingTable::kMaxOrder) {
      throw RingError(Errc::cap_exceeded,
                      "ring order exceeds " + std::to_string(RingTable::kMaxOrder));
    }
  }
  auto check_coords = [&](Coords const& c, char const* what) {
    if (c.size() != k) {
      throw RingError(Errc::malformed_coords, std::string(what) + ": wrong coordinate count");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (c[l] >= shape[l]) {
        throw RingError(Errc::malformed_coords, std::string(what) + ": coordinate out of range");
      }
    }
  };
  if (consts.size() != k) throw RingError(Errc::malformed_coords, "table must have k rows");
  for (auto const& row : consts) {
    if (row.size() != k) throw RingError(Errc::malformed_coords, "table must have k columns");
    for (auto const& c : row) check_coords(c, "structure constant");
  }
  check_coords(unit, "unit");

  RingTable r;
  r.shape_ = std::move(shape);
  r.consts_ = std::move(consts);
  r.unit_ = std::move(unit);
  r.order_ = order;
  r.weights_.assign(k, 1);
  for (std::size_t i = k; i-- > 1;) r.weights_[i - 1] = r.weights_[i] * r.shape_[i];

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      // d_i g_i = 0 and d_j g_j = 0 force d_i (g_i g_j) = d_j (g_i g_j) = 0.
      Coords ci = r.coord_scale(r.shape_[i], r.consts_[i][j]);
      Coords cj = r.coord_scale(r.shape_[j], r.consts_[i][j]);
      for (std::size_t l = 0; l < k; ++l) {
        if (ci[l] != 0 || cj[l] != 0) {
          throw RingError(Errc::malformed_coords,
                          "product g" + std::to_string(i) + "*g" + std::to_string(j) +
                              " is incompatible with the additive orders");
        }
      }
    }
  }

  r.build_tables();
  r.one_ = r.index(r.unit_);

  for (std::size_t i = 0; i < k; ++i) {
    Element g = r.basis(i);
    if (r.mul(r.one_, g) != g || r.mul(g, r.one_) != g) {
      throw RingError(Errc::bad_unit, "unit fails 1*g = g*1 = g on basis element " +
                                          std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) {
        Element a = r.basis(i), b = r.basis(j), c = r.basis(l);
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c))) {
          throw RingError(Errc::non_associative, "basis triple (" + std::to_string(i) + "," +
                                                     std::to_string(j) + "," +
                                                     std::to_string(l) + ")");
        }
      }
    }
  }
  r.characteristic_ = r.additive_order(r.one_);
  return r;
}

inline std::uint64_t characteristic(RingTable const& r) { return r.characteristic(); }
inline bool is_commutative(RingTable const& r) { return r.is_commutative(); }
inline bool is_unit(RingTable const& r, Element x) { return r.is_unit(x); }
inline ElementSet units(RingTable const& r) { return r.units(); }

//! The opposite ring: g_i *op g_j := g_j * g_i.
inline RingTable opposite(RingTable const& r) {
  StructConsts t = r.consts();
  for (std::size_t i = 0; i < r.rank(); ++i) {
    for (std::size_t j = 0; j < r.rank(); ++j) t[i][j] = r.consts()[j][i];
  }
  return make_ring(r.shape(), std::move(t), r.unit_coords());
}

//! Canonical byte serialization: little-endian u32 rank, shape, constants,
//! unit. Used for content hashing.
inline std::vector<std::uint8_t> serialize(RingTable const& r) {
  std::vector<std::uint8_t> out;
  auto put = [&](std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>((v >> (8 * b)) & 0xFF));
  };
  put(static_cast<std::uint32_t>(r.rank()));
  for (std::uint32_t d : r.shape()) put(d);
  for (auto const& row : r.consts()) {
    for (auto const& c : row) {
      for (std::uint32_t v : c) put(v);
    }
  }
  for (std::uint32_t v : r.unit_coords()) put(v);
  return out;
}

//! 64-bit FNV-1a over serialize(r).
inline std::uint64_t content_hash(RingTable const& r) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : serialize(r)) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ringcover

#endif  // RINGCOVER_RING_HPP_
