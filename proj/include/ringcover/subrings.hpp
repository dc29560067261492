#ifndef RINGCOVER_SUBRINGS_HPP_
#define RINGCOVER_SUBRINGS_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "error.hpp"
#include "ring.hpp"

namespace ringcover {

//! All subrings of a ring, in canonical order (size, then lexicographic).
//! Subrings are additive subgroups closed under multiplication; they need
//! not contain 1.
struct SubringLattice {
  std::vector<ElementSet> subrings;
  //! maximal[i] iff subrings[i] is a proper subring with no proper superset
  //! other than the whole ring.
  std::vector<bool> maximal;
  //! Covering pairs (i, j): subrings[i] is a maximal proper subring of
  //! subrings[j]. The full containment order is the transitive closure.
  std::vector<std::pair<std::size_t, std::size_t>> containment;

  std::size_t size() const noexcept { return subrings.size(); }

  std::vector<ElementSet> maximal_subrings() const {
    std::vector<ElementSet> out;
    for (std::size_t i = 0; i < subrings.size(); ++i) {
      if (maximal[i]) out.push_back(subrings[i]);
    }
    return out;
  }
};

inline constexpr std::size_t kDefaultLatticeCap = 100000;

namespace detail {

//! Closes `set` (with member list `elems`) under +, * after the elements in
//! `pending` were added. Elements of `set` not in `pending` must already be
//! closed among themselves.
inline void close_subring(RingTable const& r, ElementSet& set, std::vector<Element>& elems,
                          std::vector<Element> pending) {
  auto push = [&](Element z) {
    if (set.insert(z)) {
      elems.push_back(z);
      pending.push_back(z);
    }
  };
  while (!pending.empty()) {
    Element y = pending.back();
    pending.pop_back();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      Element z = elems[i];
      push(r.add(y, z));
      push(r.mul(y, z));
      push(r.mul(z, y));
    }
  }
}

}  // namespace detail

//! Smallest subring containing `gens`. Does not adjoin 1.
inline ElementSet subring_closure(RingTable const& r, ElementSet const& gens) {
  ElementSet set(r.order());
  std::vector<Element> elems;
  std::vector<Element> pending;
  set.insert(0);
  elems.push_back(0);
  gens.for_each([&](Element g) {
    if (set.insert(g)) {
      elems.push_back(g);
      pending.push_back(g);
    }
  });
  detail::close_subring(r, set, elems, std::move(pending));
  return set;
}

//! Smallest subring containing the subring `base` and x.
inline ElementSet subring_closure(RingTable const& r, ElementSet const& base, Element x) {
  if (base.contains(x)) return base;
  ElementSet set = base;
  std::vector<Element> elems = base.elements();
  set.insert(x);
  elems.push_back(x);
  detail::close_subring(r, set, elems, {x});
  return set;
}

inline bool is_subring(RingTable const& r, ElementSet const& s) {
  if (!s.contains(0)) return false;
  std::vector<Element> elems = s.elements();
  for (Element a : elems) {
    for (Element b : elems) {
      if (!s.contains(r.add(a, b)) || !s.contains(r.mul(a, b))) return false;
    }
  }
  return true;
}

namespace detail {

//! Representatives x of R \ base such that every closure(base + {y}),
//! y not in base, equals closure(base + {x}) for some listed x. Uses
//! closure(base, x) = closure(base, x + b) = closure(base, u x) for b in base
//! and u an integer coprime to the additive order of x.
inline std::vector<Element> extension_candidates(RingTable const& r, ElementSet const& base) {
  std::vector<Element> out;
  ElementSet seen = base;
  std::vector<Element> base_elems = base.elements();
  for (Element x = 0; x < r.order(); ++x) {
    if (seen.contains(x)) continue;
    out.push_back(x);
    std::uint64_t ord = r.additive_order(x);
    for (std::uint64_t u = 1; u < ord; ++u) {
      if (std::gcd(u, ord) != 1) continue;
      Element ux = r.scale(u, x);
      for (Element b : base_elems) seen.insert(r.add(ux, b));
    }
  }
  return out;
}

}  // namespace detail

//! True iff s is a proper subring and closure(s + {x}) = R for every x not in s.
inline bool is_maximal(RingTable const& r, ElementSet const& s) {
  if (s.size() == r.order() || !is_subring(r, s)) return false;
  for (Element x : detail::extension_candidates(r, s)) {
    if (subring_closure(r, s, x).size() != r.order()) return false;
  }
  return true;
}

//! Enumerates every subring by breadth-first extension from {0}: each
//! subring B is reached from any maximal proper subring A of B as
//! closure(A + {x}). Throws CapExceeded when more than `cap` subrings appear.
inline SubringLattice all_subrings(RingTable const& r, std::size_t cap = kDefaultLatticeCap) {
  std::vector<ElementSet> found;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;
  std::vector<std::vector<std::size_t>> extensions;

  auto intern = [&](ElementSet s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (found.size() >= cap) {
      throw RingError(Errc::cap_exceeded,
                      "more than " + std::to_string(cap) + " subrings (raise --max-lattice)");
    }
    std::size_t id = found.size();
    index.emplace(s, id);
    found.push_back(std::move(s));
    return id;
  };

  intern(subring_closure(r, ElementSet(r.order())));
  for (std::size_t cur = 0; cur < found.size(); ++cur) {
    ElementSet const base = found[cur];
    std::vector<std::size_t> ext;
    for (Element x : detail::extension_candidates(r, base)) {
      ext.push_back(intern(subring_closure(r, base, x)));
    }
    std::sort(ext.begin(), ext.end());
    ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
    extensions.resize(found.size());
    extensions[cur] = std::move(ext);
  }
  extensions.resize(found.size());

  std::vector<std::size_t> perm(found.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(found[a], found[b]); });
  std::vector<std::size_t> rank(found.size());
  for (std::size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = i;

  SubringLattice lat;
  lat.subrings.reserve(found.size());
  for (std::size_t id : perm) lat.subrings.push_back(found[id]);
  lat.maximal.assign(found.size(), false);
  std::size_t const top = found.size() - 1;  // R sorts last: it is the unique largest
  for (std::size_t a = 0; a < found.size(); ++a) {
    auto const& ext = extensions[a];
    for (std::size_t b : ext) {
      // b covers a iff no other extension of a sits strictly inside b.
      bool minimal = std::none_of(ext.begin(), ext.end(), [&](std::size_t c) {
        return c != b && found[c].size() < found[b].size() && found[c].is_subset_of(found[b]);
      });
      if (minimal) lat.containment.emplace_back(rank[a], rank[b]);
    }
  }
  std::sort(lat.containment.begin(), lat.containment.end());
  for (auto [a, b] : lat.containment) {
    if (b == top && a != top) lat.maximal[a] = true;
  }
  return lat;
}

//! Maximal subrings in canonical order, each confirmed by is_maximal.
inline std::vector<ElementSet> maximal_subrings(SubringLattice const& lat, RingTable const& r) {
  std::vector<ElementSet> out = lat.maximal_subrings();
  for (auto const& m : out) {
    if (!is_maximal(r, m)) {
      throw RingError(Errc::not_applicable, "lattice reported a non-maximal subring");
    }
  }
  return out;
}

inline std::vector<ElementSet> maximal_subrings(RingTable const& r,
                                                std::size_t cap = kDefaultLatticeCap) {
  return maximal_subrings(all_subrings(r, cap), r);
}

}  // namespace ringcover

#endif  // RINGCOVER_SUBRINGS_HPP_
