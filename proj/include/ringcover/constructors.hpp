#ifndef RINGCOVER_CONSTRUCTORS_HPP_
#define RINGCOVER_CONSTRUCTORS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "error.hpp"
#include "ring.hpp"

namespace ringcover {

//! A finite field F_{p^e} presented as F_p[t]/(modulus). The modulus is monic,
//! stored low degree first, so modulus.size() == e + 1.
struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::vector<std::uint32_t> modulus;

  std::uint32_t order() const {
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    return q;
  }
};

namespace detail {

using Poly = std::vector<std::uint32_t>;  // low degree first, over F_p

inline void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

//! Remainder of f modulo a monic g over F_p.
inline Poly poly_mod(Poly f, Poly const& g, std::uint32_t p) {
  poly_trim(f);
  std::size_t const dg = g.size() - 1;
  while (f.size() > dg) {
    std::uint32_t lead = f.back();
    std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = (f[shift + i] + p - (lead * g[i]) % p) % p;
    }
    poly_trim(f);
  }
  return f;
}

}  // namespace detail

//! True iff spec.modulus has no monic factor of degree 1..e/2 over F_p.
inline bool is_irreducible(FieldSpec const& spec) {
  std::uint32_t const p = spec.p;
  std::uint32_t const e = spec.e;
  if (e <= 1) return true;
  for (std::uint32_t d = 1; d <= e / 2; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      detail::Poly g(d + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (detail::poly_mod(spec.modulus, g, p).empty()) return false;
    }
  }
  return true;
}

//! The fixed field presentations used throughout.
inline FieldSpec field_spec(std::uint32_t q) {
  switch (q) {
    case 2: return {2, 1, {0, 1}};
    case 3: return {3, 1, {0, 1}};
    case 4: return {2, 2, {1, 1, 1}};           // t^2 + t + 1
    case 8: return {2, 3, {1, 1, 0, 1}};        // t^3 + t + 1
    case 9: return {3, 2, {1, 0, 1}};           // t^2 + 1
    case 16: return {2, 4, {1, 1, 0, 0, 1}};    // t^4 + t + 1
    case 27: return {3, 3, {1, 2, 0, 1}};       // t^3 + 2t + 1
    case 32: return {2, 5, {1, 0, 1, 0, 0, 1}};  // t^5 + t^2 + 1
    default: break;
  }
  throw RingError(Errc::unsupported_field_order,
                  "GF(" + std::to_string(q) + ") is not one of 2,3,4,8,9,16,27,32");
}

inline std::vector<std::uint32_t> const& supported_field_orders() {
  static std::vector<std::uint32_t> const orders{2, 3, 4, 8, 9, 16, 27, 32};
  return orders;
}

//! Z_n, the ring of order n generated by 1. Non-prime-power n is built as the
//! product of its prime-power parts.
RingTable product(std::vector<RingTable> const& rings);

inline RingTable zmod(std::uint64_t n) {
  if (n < 2) throw RingError(Errc::bad_order, "Z(n) needs n >= 2");
  auto parts = detail::prime_power_parts(n);
  if (parts.size() == 1) {
    if (n > RingTable::kMaxOrder) throw RingError(Errc::cap_exceeded, "Z(n) too large");
    return make_ring({static_cast<std::uint32_t>(n)}, {{{1}}}, {1});
  }
  std::vector<RingTable> factors;
  for (auto [p, q] : parts) factors.push_back(zmod(q));
  return product(factors);
}

inline RingTable gf(std::uint32_t q) {
  FieldSpec spec = field_spec(q);
  if (!is_irreducible(spec)) {
    throw RingError(Errc::unsupported_field_order, "modulus for GF(" + std::to_string(q) +
                                                       ") is reducible");
  }
  std::uint32_t const e = spec.e;
  std::uint32_t const p = spec.p;
  // powers[m] = t^m reduced, for m < 2e - 1.
  std::vector<Coords> powers;
  for (std::uint32_t m = 0; m + 1 < 2 * e || m == 0; ++m) {
    detail::Poly mono(m + 1, 0);
    mono[m] = 1;
    detail::Poly r = detail::poly_mod(mono, spec.modulus, p);
    r.resize(e, 0);
    powers.push_back(r);
  }
  StructConsts consts(e, std::vector<Coords>(e));
  for (std::uint32_t i = 0; i < e; ++i) {
    for (std::uint32_t j = 0; j < e; ++j) consts[i][j] = powers[i + j];
  }
  Coords unit(e, 0);
  unit[0] = 1;
  return make_ring(std::vector<std::uint32_t>(e, p), std::move(consts), std::move(unit));
}

inline RingTable product(std::vector<RingTable> const& rings) {
  if (rings.empty()) throw RingError(Errc::bad_order, "product of an empty list");
  std::size_t order = 1;
  std::vector<std::uint32_t> shape;
  std::vector<std::size_t> offsets;
  for (auto const& r : rings) {
    order *= r.order();
    if (order > RingTable::kMaxOrder) throw RingError(Errc::cap_exceeded, "product too large");
    offsets.push_back(shape.size());
    shape.insert(shape.end(), r.shape().begin(), r.shape().end());
  }
  std::size_t const k = shape.size();
  StructConsts consts(k, std::vector<Coords>(k, Coords(k, 0)));
  Coords unit(k, 0);
  for (std::size_t f = 0; f < rings.size(); ++f) {
    auto const& r = rings[f];
    std::size_t off = offsets[f];
    for (std::size_t i = 0; i < r.rank(); ++i) {
      for (std::size_t j = 0; j < r.rank(); ++j) {
        for (std::size_t l = 0; l < r.rank(); ++l) consts[off + i][off + j][off + l] = r.consts()[i][j][l];
      }
      unit[off + i] = r.unit_coords()[i];
    }
  }
  return make_ring(std::move(shape), std::move(consts), std::move(unit));
}

namespace detail {

inline void check_power_fits(std::size_t base, std::size_t exponent) {
  std::size_t order = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    order *= base;
    if (order > RingTable::kMaxOrder) {
      throw RingError(Errc::cap_exceeded, "matrix ring would exceed order " +
                                              std::to_string(RingTable::kMaxOrder));
    }
  }
}

//! Ring of k x k matrices over r whose (i, j) entries are allowed by `keep`.
//! Basis: matrix units E_ij (row-major over kept positions) times basis of r.
inline RingTable matrix_like(std::size_t k, RingTable const& r,
                             std::function<bool(std::size_t, std::size_t)> const& keep) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (keep(i, j)) cells.emplace_back(i, j);
    }
  }
  check_power_fits(r.order(), cells.size());
  std::size_t const b = r.rank();
  std::size_t const n = cells.size() * b;
  auto cell_index = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].first == i && cells[c].second == j) return c;
    }
    return cells.size();
  };
  std::vector<std::uint32_t> shape;
  for (std::size_t c = 0; c < cells.size(); ++c) shape.insert(shape.end(), r.shape().begin(), r.shape().end());
  StructConsts consts(n, std::vector<Coords>(n, Coords(n, 0)));
  for (std::size_t c1 = 0; c1 < cells.size(); ++c1) {
    for (std::size_t c2 = 0; c2 < cells.size(); ++c2) {
      if (cells[c1].second != cells[c2].first) continue;
      std::size_t target = cell_index(cells[c1].first, cells[c2].second);
      for (std::size_t u = 0; u < b; ++u) {
        for (std::size_t v = 0; v < b; ++v) {
          for (std::size_t l = 0; l < b; ++l) {
            consts[c1 * b + u][c2 * b + v][target * b + l] = r.consts()[u][v][l];
          }
        }
      }
    }
  }
  Coords unit(n, 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t c = cell_index(i, i);
    for (std::size_t u = 0; u < b; ++u) unit[c * b + u] = r.unit_coords()[u];
  }
  return make_ring(std::move(shape), std::move(consts), std::move(unit));
}

//! Builds a ring from a concrete model: `basis` lists model elements forming
//! an additive basis with the orders in `shape`, `mul` multiplies two model
//! elements, and `coords_of` reads back coordinates in that basis.
template <typename M>
RingTable ring_from_model(std::vector<std::uint32_t> shape, std::vector<M> const& basis,
                          std::function<M(M const&, M const&)> const& mul,
                          std::function<Coords(M const&)> const& coords_of, M const& unit) {
  std::size_t const k = basis.size();
  StructConsts consts(k, std::vector<Coords>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) consts[i][j] = coords_of(mul(basis[i], basis[j]));
  }
  return make_ring(std::move(shape), std::move(consts), coords_of(unit));
}

}  // namespace detail

inline RingTable matrix_ring(std::size_t k, RingTable const& r) {
  if (k < 1) throw RingError(Errc::bad_order, "matrix size must be >= 1");
  return detail::matrix_like(k, r, [](std::size_t, std::size_t) { return true; });
}

inline RingTable upper_tri(std::size_t k, RingTable const& r) {
  if (k < 1) throw RingError(Errc::bad_order, "matrix size must be >= 1");
  return detail::matrix_like(k, r, [](std::size_t i, std::size_t j) { return i <= j; });
}

//! F_p[x]/(x^n), basis 1, x, ..., x^{n-1}.
inline RingTable trunc_poly(std::uint32_t p, std::uint32_t n) {
  if (!detail::is_prime(p)) throw RingError(Errc::bad_order, "P(p, n) needs p prime");
  if (n < 1) throw RingError(Errc::bad_order, "P(p, n) needs n >= 1");
  detail::check_power_fits(p, n);
  StructConsts consts(n, std::vector<Coords>(n, Coords(n, 0)));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; i + j < n; ++j) consts[i][j][i + j] = 1;
  }
  Coords unit(n, 0);
  unit[0] = 1;
  return make_ring(std::vector<std::uint32_t>(n, p), std::move(consts), std::move(unit));
}

//! F_p[x, y]/(x^2, xy, y^2), basis 1, x, y.
inline RingTable nil2(std::uint32_t p) {
  if (!detail::is_prime(p)) throw RingError(Errc::bad_order, "Nil2(p) needs p prime");
  StructConsts consts(3, std::vector<Coords>(3, Coords(3, 0)));
  for (std::size_t i = 0; i < 3; ++i) {
    consts[0][i][i] = 1;
    consts[i][0][i] = 1;
  }
  return make_ring({p, p, p}, std::move(consts), {1, 0, 0});
}

//! Pairs (a, b) over F_q with (a, b)(c, d) = (ac, ad + b c^p); the matrices
//! [[a, b], [0, a^p]]. Basis: (t^i, 0) then (0, t^i).
inline RingTable twisted_dual(std::uint32_t q) {
  if (q != 4 && q != 9) {
    throw RingError(Errc::unsupported_field_order, "TD(q) needs q in {4, 9}");
  }
  RingTable const f = gf(q);
  std::uint32_t const p = static_cast<std::uint32_t>(f.characteristic());
  using Pair = std::pair<Element, Element>;
  std::vector<Pair> basis;
  for (std::size_t i = 0; i < f.rank(); ++i) basis.emplace_back(f.basis(i), 0);
  for (std::size_t i = 0; i < f.rank(); ++i) basis.emplace_back(0, f.basis(i));
  std::vector<std::uint32_t> shape = f.shape();
  shape.insert(shape.end(), f.shape().begin(), f.shape().end());
  return detail::ring_from_model<Pair>(
      std::move(shape), basis,
      [&](Pair const& x, Pair const& y) {
        return Pair{f.mul(x.first, y.first),
                    f.add(f.mul(x.first, y.second), f.mul(x.second, f.pow(y.first, p)))};
      },
      [&](Pair const& x) {
        Coords c = f.coords(x.first);
        Coords d = f.coords(x.second);
        c.insert(c.end(), d.begin(), d.end());
        return c;
      },
      Pair{f.one(), 0});
}

//! Triples (a, b, c) in F_2 x F_4 x F_4 with
//! (a, b, c)(a', b', c') = (aa', ab' + bc', cc'); the matrices [[a, b], [0, c]].
//! Basis: (1,0,0), (0,1,0), (0,t,0), (0,0,1), (0,0,t).
inline RingTable mixed_tri() {
  RingTable const f = gf(4);
  struct Triple {
    Element a, b, c;  // a is 0 or the unit of F_4
  };
  std::vector<Triple> basis{{f.one(), 0, 0}, {0, f.basis(0), 0}, {0, f.basis(1), 0},
                            {0, 0, f.basis(0)}, {0, 0, f.basis(1)}};
  return detail::ring_from_model<Triple>(
      {2, 2, 2, 2, 2}, basis,
      [&](Triple const& x, Triple const& y) {
        return Triple{f.mul(x.a, y.a), f.add(f.mul(x.a, y.b), f.mul(x.b, y.c)), f.mul(x.c, y.c)};
      },
      [&](Triple const& x) {
        Coords out{x.a == f.one() ? 1U : 0U};
        Coords b = f.coords(x.b);
        Coords c = f.coords(x.c);
        out.insert(out.end(), b.begin(), b.end());
        out.insert(out.end(), c.begin(), c.end());
        return out;
      },
      Triple{f.one(), 0, f.one()});
}

}  // namespace ringcover

#endif  // RINGCOVER_CONSTRUCTORS_HPP_
