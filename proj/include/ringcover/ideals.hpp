#ifndef RINGCOVER_IDEALS_HPP_
#define RINGCOVER_IDEALS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "error.hpp"
#include "ring.hpp"
#include "subrings.hpp"

namespace ringcover {

struct QuotientResult {
  RingTable quotient;
  //! projection[x] is the image of x in the quotient.
  std::vector<Element> projection;
  //! section[q] is the least element of R mapping to q.
  std::vector<Element> section;
};

struct RadicalResult {
  ElementSet radical;
  //! Least m with J^m = 0.
  std::size_t nilpotency_index = 1;
};

struct LocalData {
  bool is_local = false;
  std::size_t residue_order = 0;
  bool resfield_prime = false;
  //! dim over F_p of J/J^2; meaningful only when resfield_prime.
  std::size_t dim_j_mod_j2 = 0;
  //! Whether p * 1_R lies in J^2; meaningful only when resfield_prime.
  bool p_in_j2 = false;
};

struct Decomposition {
  std::vector<Element> idempotents;
  std::vector<RingTable> factors;
};

enum class Side {
  left,   //!< s * r: the subring element multiplies r from the left
  right,  //!< r * s: the subring element multiplies r from the right
};

// ---------------------------------------------------------------------------
// Closures

//! Additive subgroup generated by `gens`.
inline ElementSet additive_closure(RingTable const& r, ElementSet const& gens) {
  ElementSet set(r.order());
  set.insert(0);
  std::vector<Element> elems{0};
  std::vector<Element> pending;
  gens.for_each([&](Element g) {
    if (set.insert(g)) {
      elems.push_back(g);
      pending.push_back(g);
    }
  });
  while (!pending.empty()) {
    Element y = pending.back();
    pending.pop_back();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      Element s = r.add(y, elems[i]);
      if (set.insert(s)) {
        elems.push_back(s);
        pending.push_back(s);
      }
    }
  }
  return set;
}

//! Additive span of all products ab with a in A, b in B.
inline ElementSet product_span(RingTable const& r, ElementSet const& a, ElementSet const& b) {
  ElementSet prods(r.order());
  std::vector<Element> be = b.elements();
  a.for_each([&](Element x) {
    for (Element y : be) prods.insert(r.mul(x, y));
  });
  return additive_closure(r, prods);
}

//! Smallest two-sided ideal containing `gens`. Multiplying by the additive
//! generators on both sides is enough, since R is their additive span.
inline ElementSet ideal_closure(RingTable const& r, ElementSet const& gens) {
  ElementSet set(r.order());
  set.insert(0);
  std::vector<Element> elems{0};
  std::vector<Element> pending;
  auto push = [&](Element z) {
    if (set.insert(z)) {
      elems.push_back(z);
      pending.push_back(z);
    }
  };
  gens.for_each(push);
  while (!pending.empty()) {
    Element y = pending.back();
    pending.pop_back();
    for (std::size_t i = 0; i < r.rank(); ++i) {
      push(r.mul(r.basis(i), y));
      push(r.mul(y, r.basis(i)));
    }
    for (std::size_t i = 0; i < elems.size(); ++i) push(r.add(y, elems[i]));
  }
  return set;
}

inline bool is_ideal(RingTable const& r, ElementSet const& s) {
  if (!s.contains(0)) return false;
  std::vector<Element> elems = s.elements();
  for (Element a : elems) {
    for (Element b : elems) {
      if (!s.contains(r.add(a, b))) return false;
    }
    for (std::size_t i = 0; i < r.rank(); ++i) {
      if (!s.contains(r.mul(r.basis(i), a)) || !s.contains(r.mul(a, r.basis(i)))) return false;
    }
  }
  return true;
}

//! Minimal nonzero proper two-sided ideals, in canonical order. Every such
//! ideal is the ideal generated by any of its nonzero elements.
inline std::vector<ElementSet> minimal_ideals(RingTable const& r) {
  std::vector<ElementSet> principal;
  std::unordered_set<ElementSet, ElementSetHash> seen;
  for (Element x = 1; x < r.order(); ++x) {
    ElementSet i = ideal_closure(r, ElementSet(r.order(), {x}));
    if (i.size() == r.order()) continue;
    if (seen.insert(i).second) principal.push_back(std::move(i));
  }
  std::vector<ElementSet> out;
  for (auto const& i : principal) {
    bool minimal = std::none_of(principal.begin(), principal.end(), [&](ElementSet const& j) {
      return j.size() < i.size() && j.is_subset_of(i);
    });
    if (minimal) out.push_back(i);
  }
  std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return canonical_less(a, b); });
  return out;
}

// ---------------------------------------------------------------------------
// Rings from operation tables

namespace detail {

//! Given an abstract finite ring on ids 0..n-1 (by its operations), finds a
//! primary cyclic decomposition of the additive group and returns the ring
//! in that basis together with the id -> element map. The basis is chosen
//! greedily (largest order in the current quotient, smallest id on ties),
//! primes ascending; exact-order lifts make it a direct decomposition.
struct AbstractRing {
  std::size_t n;
  std::function<std::size_t(std::size_t, std::size_t)> add;
  std::function<std::size_t(std::size_t, std::size_t)> mul;
  std::size_t zero;
  std::size_t one;
};

inline std::pair<RingTable, std::vector<Element>> materialize(AbstractRing const& g) {
  std::size_t const n = g.n;
  std::vector<std::vector<std::size_t>> add_tab(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) add_tab[a][b] = g.add(a, b);
  }
  auto mult = [&](std::uint64_t m, std::size_t x) {
    std::size_t acc = g.zero;
    for (std::uint64_t i = 0; i < m; ++i) acc = add_tab[acc][x];
    return acc;
  };
  std::vector<std::uint64_t> ord(n, 1);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = x;
    while (y != g.zero) {
      y = add_tab[y][x];
      ++ord[x];
    }
  }

  std::vector<std::size_t> gens;
  std::vector<std::uint32_t> shape;
  for (auto [p, pe] : prime_power_parts(n)) {
    std::vector<std::size_t> sylow;
    for (std::size_t x = 0; x < n; ++x) {
      if (pe % ord[x] == 0) sylow.push_back(x);
    }
    std::vector<bool> in_span(n, false);
    in_span[g.zero] = true;
    std::vector<std::size_t> span{g.zero};
    while (span.size() < sylow.size()) {
      std::size_t best = n;
      std::uint64_t best_ord = 0;
      for (std::size_t x : sylow) {
        std::uint64_t m = 1;
        std::size_t y = x;
        while (!in_span[y]) {
          y = add_tab[y][x];
          ++m;
        }
        if (m > best_ord) {
          best_ord = m;
          best = x;
        }
      }
      std::size_t lift = n;
      for (std::size_t s : span) {
        std::size_t y = add_tab[best][s];
        if (ord[y] == best_ord && (lift == n || y < lift)) lift = y;
      }
      if (lift == n) throw RingError(Errc::not_applicable, "no exact-order lift in decomposition");
      gens.push_back(lift);
      shape.push_back(static_cast<std::uint32_t>(best_ord));
      std::vector<std::size_t> grown;
      for (std::size_t s : span) {
        std::size_t y = s;
        for (std::uint64_t c = 0; c < best_ord; ++c) {
          grown.push_back(y);
          y = add_tab[y][lift];
        }
      }
      for (std::size_t y : grown) in_span[y] = true;
      span = std::move(grown);
    }
  }

  std::size_t const k = gens.size();
  std::vector<std::size_t> coord_to_id(n);
  std::vector<Element> id_to_elem(n, static_cast<Element>(n));
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t v = idx;
    std::size_t acc = g.zero;
    for (std::size_t i = k; i-- > 0;) {
      acc = add_tab[acc][mult(v % shape[i], gens[i])];
      v /= shape[i];
    }
    if (id_to_elem[acc] != n) {
      throw RingError(Errc::not_applicable, "additive decomposition is not direct");
    }
    id_to_elem[acc] = static_cast<Element>(idx);
    coord_to_id[idx] = acc;
  }
  auto to_coords = [&](std::size_t id) {
    Coords c(k);
    std::size_t v = id_to_elem[id];
    for (std::size_t i = k; i-- > 0;) {
      c[i] = static_cast<std::uint32_t>(v % shape[i]);
      v /= shape[i];
    }
    return c;
  };
  StructConsts consts(k, std::vector<Coords>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) consts[i][j] = to_coords(g.mul(gens[i], gens[j]));
  }
  RingTable ring = make_ring(std::move(shape), std::move(consts), to_coords(g.one));
  return {std::move(ring), std::move(id_to_elem)};
}

//! The ring on a subset closed under the operations of r, with unit `one`.
inline std::pair<RingTable, std::vector<Element>> subset_ring(RingTable const& r,
                                                              ElementSet const& subset,
                                                              Element one) {
  std::vector<Element> elems = subset.elements();
  std::vector<std::size_t> pos(r.order(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
  AbstractRing g{elems.size(),
                 [&](std::size_t a, std::size_t b) { return pos[r.add(elems[a], elems[b])]; },
                 [&](std::size_t a, std::size_t b) { return pos[r.mul(elems[a], elems[b])]; },
                 pos[0], pos[one]};
  return materialize(g);
}

}  // namespace detail

inline QuotientResult quotient_ring(RingTable const& r, ElementSet const& ideal) {
  if (ideal.universe() != r.order() || !is_ideal(r, ideal)) {
    throw RingError(Errc::not_an_ideal, "quotient by a set that is not a two-sided ideal");
  }
  std::size_t const n = r.order();
  std::vector<Element> ideal_elems = ideal.elements();
  std::vector<std::size_t> coset(n, n);
  std::vector<Element> reps;
  for (Element x = 0; x < n; ++x) {
    if (coset[x] != n) continue;
    for (Element i : ideal_elems) coset[r.add(x, i)] = reps.size();
    reps.push_back(x);
  }
  detail::AbstractRing g{reps.size(),
                         [&](std::size_t a, std::size_t b) { return coset[r.add(reps[a], reps[b])]; },
                         [&](std::size_t a, std::size_t b) { return coset[r.mul(reps[a], reps[b])]; },
                         coset[0], coset[r.one()]};
  auto [q, id_to_elem] = detail::materialize(g);
  QuotientResult out;
  out.projection.resize(n);
  out.section.resize(reps.size());
  for (Element x = 0; x < n; ++x) out.projection[x] = id_to_elem[coset[x]];
  for (std::size_t c = 0; c < reps.size(); ++c) out.section[id_to_elem[c]] = reps[c];
  out.quotient = std::move(q);
  return out;
}

// ---------------------------------------------------------------------------
// Radical and local data

inline ElementSet ideal_power(RingTable const& r, ElementSet const& j, std::size_t m) {
  ElementSet acc = j;
  for (std::size_t i = 1; i < m; ++i) acc = product_span(r, acc, j);
  return acc;
}

//! J(R) = {x : 1 - rx is a unit for every r}.
inline RadicalResult jacobson_radical(RingTable const& r) {
  ElementSet const u = r.units();
  RadicalResult out{ElementSet(r.order()), 1};
  for (Element x = 0; x < r.order(); ++x) {
    bool quasi_regular = true;
    for (Element y = 0; y < r.order() && quasi_regular; ++y) {
      quasi_regular = u.contains(r.sub(r.one(), r.mul(y, x)));
    }
    if (quasi_regular) out.radical.insert(x);
  }
  if (r.order() == 1) return out;
  ElementSet power = out.radical;
  while (power.size() > 1) {
    power = product_span(r, power, out.radical);
    ++out.nilpotency_index;
  }
  return out;
}

inline LocalData local_data(RingTable const& r) {
  LocalData d;
  if (r.order() <= 1) return d;
  ElementSet const u = r.units();
  ElementSet const nonunits = r.all() - u;
  d.is_local = true;
  std::vector<Element> nu = nonunits.elements();
  for (std::size_t i = 0; i < nu.size() && d.is_local; ++i) {
    for (std::size_t j = i; j < nu.size(); ++j) {
      if (u.contains(r.add(nu[i], nu[j]))) {
        d.is_local = false;
        break;
      }
    }
  }
  if (!d.is_local) return d;
  ElementSet const j = jacobson_radical(r).radical;
  d.residue_order = r.order() / j.size();
  d.resfield_prime = detail::is_prime(d.residue_order);
  if (d.resfield_prime) {
    std::size_t const p = d.residue_order;
    ElementSet const j2 = product_span(r, j, j);
    std::size_t ratio = j.size() / j2.size();
    while (ratio > 1) {
      ratio /= p;
      ++d.dim_j_mod_j2;
    }
    d.p_in_j2 = j2.contains(r.scale(p, r.one()));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Idempotents

inline bool is_central(RingTable const& r, Element e) {
  for (std::size_t i = 0; i < r.rank(); ++i) {
    if (r.mul(e, r.basis(i)) != r.mul(r.basis(i), e)) return false;
  }
  return true;
}

inline std::vector<Element> central_idempotents(RingTable const& r) {
  std::vector<Element> out;
  for (Element e = 0; e < r.order(); ++e) {
    if (r.mul(e, e) == e && is_central(r, e)) out.push_back(e);
  }
  return out;
}

//! Splits R along its primitive central idempotents; factor i is eR with unit e.
inline Decomposition decompose(RingTable const& r) {
  std::vector<Element> const ce = central_idempotents(r);
  Decomposition out;
  for (Element e : ce) {
    if (e == 0) continue;
    bool primitive = std::none_of(ce.begin(), ce.end(), [&](Element f) {
      return f != 0 && f != e && r.mul(f, e) == f;
    });
    if (primitive) out.idempotents.push_back(e);
  }
  for (Element e : out.idempotents) {
    ElementSet er(r.order());
    for (Element x = 0; x < r.order(); ++x) er.insert(r.mul(e, x));
    out.factors.push_back(detail::subset_ring(r, er, e).first);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

enum class IsoVerdict { isomorphic, not_isomorphic, budget_exhausted };

struct IsoSearch {
  IsoVerdict verdict = IsoVerdict::not_isomorphic;
  //! When isomorphic: map[x] is the image of x in the second ring.
  std::vector<Element> map;
  std::size_t nodes = 0;
};

inline constexpr std::size_t kDefaultIsoBudget = 1000000;

namespace detail {

using Fingerprint = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::size_t, bool,
                               bool, std::size_t, std::size_t>;

inline std::size_t nilpotency(RingTable const& r, Element x) {
  Element y = x;
  for (std::size_t m = 1; m <= r.order(); ++m) {
    if (y == 0) return m;
    y = r.mul(y, x);
  }
  return 0;
}

inline std::vector<Fingerprint> fingerprints(RingTable const& r) {
  std::vector<Fingerprint> out(r.order());
  for (Element x = 0; x < r.order(); ++x) {
    Element x2 = r.mul(x, x);
    Element x3 = r.mul(x2, x);
    std::size_t centralizer = 0;
    for (Element y = 0; y < r.order(); ++y) centralizer += r.mul(x, y) == r.mul(y, x) ? 1 : 0;
    // Position of the first repeat in the power sequence x, x^2, ...
    std::size_t period = 0;
    {
      std::vector<bool> seen(r.order(), false);
      Element y = x;
      while (!seen[y]) {
        seen[y] = true;
        y = r.mul(y, x);
        ++period;
      }
    }
    out[x] = {r.additive_order(x), r.additive_order(x2), r.additive_order(x3), nilpotency(r, x),
              x2 == x, r.is_unit(x), centralizer, period};
  }
  return out;
}

struct Invariants {
  std::size_t order;
  std::uint64_t characteristic;
  bool commutative;
  std::size_t units;
  std::vector<std::uint32_t> additive_type;
  std::size_t nilpotents;
  std::size_t idempotents;

  friend bool operator==(Invariants const&, Invariants const&) = default;
};

inline Invariants invariants(RingTable const& r) {
  Invariants inv{r.order(), r.characteristic(), r.is_commutative(), r.units().size(), r.shape(),
                 0, 0};
  std::sort(inv.additive_type.begin(), inv.additive_type.end());
  for (Element x = 0; x < r.order(); ++x) {
    inv.nilpotents += r.is_nilpotent(x) ? 1 : 0;
    inv.idempotents += r.mul(x, x) == x ? 1 : 0;
  }
  return inv;
}

//! Extends phi (a partial injective homomorphism defined on the subring
//! `dom` generated by 1 and earlier generators) to gen -> image. Returns
//! false on any inconsistency.
inline bool extend_hom(RingTable const& a, RingTable const& b, std::vector<Element>& phi,
                       std::vector<bool>& used, std::vector<Element>& dom, Element gen,
                       Element image) {
  constexpr Element kUnset = ~Element{0};
  std::vector<Element> pending;
  auto assign = [&](Element x, Element y) {
    if (phi[x] != kUnset) return phi[x] == y;
    if (used[y]) return false;
    phi[x] = y;
    used[y] = true;
    dom.push_back(x);
    pending.push_back(x);
    return true;
  };
  if (!assign(gen, image)) return false;
  while (!pending.empty()) {
    Element x = pending.back();
    pending.pop_back();
    for (std::size_t i = 0; i < dom.size(); ++i) {
      Element z = dom[i];
      if (!assign(a.add(x, z), b.add(phi[x], phi[z]))) return false;
      if (!assign(a.mul(x, z), b.mul(phi[x], phi[z]))) return false;
      if (!assign(a.mul(z, x), b.mul(phi[z], phi[x]))) return false;
    }
  }
  return true;
}

}  // namespace detail

//! Searches for a unital isomorphism a -> b: invariant filter, then
//! backtracking over images of a greedily chosen generating set, restricted
//! to elements with matching fingerprints.
inline IsoSearch find_isomorphism(RingTable const& a, RingTable const& b,
                                  std::size_t budget = kDefaultIsoBudget) {
  IsoSearch out;
  if (detail::invariants(a) != detail::invariants(b)) return out;

  // Greedy generating set: each step adds the element enlarging the
  // generated subring the most (smallest index on ties).
  std::vector<Element> gens;
  ElementSet span = subring_closure(a, ElementSet(a.order(), {a.one()}));
  while (span.size() < a.order()) {
    Element best = 0;
    std::size_t best_size = 0;
    for (Element x : detail::extension_candidates(a, span)) {
      std::size_t s = subring_closure(a, span, x).size();
      if (s > best_size) {
        best_size = s;
        best = x;
      }
    }
    gens.push_back(best);
    span = subring_closure(a, span, best);
  }

  auto fa = detail::fingerprints(a);
  auto fb = detail::fingerprints(b);
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (Element y = 0; y < b.order(); ++y) {
      if (fa[gens[i]] == fb[y]) candidates[i].push_back(y);
    }
  }

  constexpr Element kUnset = ~Element{0};
  std::vector<Element> phi(a.order(), kUnset);
  std::vector<bool> used(b.order(), false);
  std::vector<Element> dom;
  phi[0] = 0;
  used[0] = true;
  dom.push_back(0);
  if (!detail::extend_hom(a, b, phi, used, dom, a.one(), b.one())) return out;

  std::function<bool(std::size_t)> search = [&](std::size_t level) -> bool {
    if (level == gens.size()) return dom.size() == a.order();
    for (Element y : candidates[level]) {
      if (++out.nodes > budget) {
        out.verdict = IsoVerdict::budget_exhausted;
        return false;
      }
      auto saved_phi = phi;
      auto saved_used = used;
      auto saved_dom = dom;
      if (detail::extend_hom(a, b, phi, used, dom, gens[level], y) && search(level + 1)) {
        return true;
      }
      if (out.verdict == IsoVerdict::budget_exhausted) return false;
      phi = std::move(saved_phi);
      used = std::move(saved_used);
      dom = std::move(saved_dom);
    }
    return false;
  };
  if (search(0)) {
    out.verdict = IsoVerdict::isomorphic;
    out.map = phi;
  }
  return out;
}

//! Throws RingError(timeout) when the node budget runs out.
inline bool is_isomorphic(RingTable const& a, RingTable const& b,
                          std::size_t budget = kDefaultIsoBudget) {
  IsoSearch s = find_isomorphism(a, b, budget);
  if (s.verdict == IsoVerdict::budget_exhausted) {
    throw RingError(Errc::timeout, "isomorphism search exceeded " + std::to_string(budget) +
                                       " nodes");
  }
  return s.verdict == IsoVerdict::isomorphic;
}

// ---------------------------------------------------------------------------
// Transporters

//! {s in S : s*r in S} for Side::left, {s in S : r*s in S} for Side::right.
inline ElementSet transporter(RingTable const& r, ElementSet const& s, Element x, Side side) {
  ElementSet out(r.order());
  s.for_each([&](Element y) {
    Element prod = side == Side::left ? r.mul(y, x) : r.mul(x, y);
    if (s.contains(prod)) out.insert(y);
  });
  return out;
}

//! Least element of each nonzero additive coset x + S, ascending.
inline std::vector<Element> coset_representatives(RingTable const& r, ElementSet const& s) {
  std::vector<Element> reps;
  ElementSet seen = s;
  std::vector<Element> se = s.elements();
  for (Element x = 0; x < r.order(); ++x) {
    if (seen.contains(x)) continue;
    reps.push_back(x);
    for (Element y : se) seen.insert(r.add(x, y));
  }
  return reps;
}

}  // namespace ringcover

#endif  // RINGCOVER_IDEALS_HPP_
