#ifndef RINGCOVER_COVER_HPP_
#define RINGCOVER_COVER_HPP_

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "error.hpp"
#include "ideals.hpp"
#include "ring.hpp"
#include "subrings.hpp"

namespace ringcover {

//! A covering number: a natural number, or NotCoverable (treated as +inf).
class Sigma {
 public:
  static Sigma not_coverable() noexcept { return Sigma(); }
  explicit Sigma(std::size_t n) noexcept : value_(n), finite_(true) {}

  bool coverable() const noexcept { return finite_; }
  std::size_t value() const {
    if (!finite_) throw RingError(Errc::not_applicable, "sigma is NotCoverable");
    return value_;
  }

  std::string str() const { return finite_ ? std::to_string(value_) : "NotCoverable"; }

  friend bool operator==(Sigma const& a, Sigma const& b) noexcept {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(Sigma const& a, Sigma const& b) noexcept {
    if (a.finite_ != b.finite_) return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!a.finite_) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

 private:
  Sigma() noexcept = default;
  std::size_t value_ = 0;
  bool finite_ = false;
};

struct SearchStats {
  std::size_t nodes = 0;
  double seconds = 0.0;
};

struct CoverResult {
  Sigma sigma = Sigma::not_coverable();
  //! Lexicographically least minimum cover (indices into `maximal`), as sets.
  std::vector<ElementSet> witness;
  std::vector<std::size_t> witness_indices;
  //! Intersection of the witness members; empty set when not coverable.
  ElementSet intersection;
  //! All maximal subrings, canonical order.
  std::vector<ElementSet> maximal;
  SearchStats stats;
};

struct GoodTupleReport {
  std::vector<std::size_t> index_in_r;       //!< [R : S_i]
  std::vector<std::size_t> index_over_meet;  //!< [S_i : S]
  std::size_t index_of_meet = 0;             //!< [R : S]
  bool unit_in_meet = false;
  //! S contains no nonzero two-sided ideal of R.
  bool ideal_free = false;
  //! [R : S] <= n! for n = number of cover members.
  bool key_inequality = false;
};

using LatticeProvider = std::function<SubringLattice(RingTable const&, std::size_t)>;

struct SolverOptions {
  std::size_t sigma_cap = 12;
  std::size_t lattice_cap = kDefaultLatticeCap;
  //! Supplies subring lattices (e.g. through a cache); defaults to all_subrings.
  LatticeProvider lattice;
};

inline SubringLattice lattice_for(RingTable const& r, SolverOptions const& opt) {
  return opt.lattice ? opt.lattice(r, opt.lattice_cap) : all_subrings(r, opt.lattice_cap);
}

//! True iff no single element generates R (closures do not adjoin 1).
inline bool is_coverable(RingTable const& r) {
  if (r.order() <= 1) return false;
  for (Element x = 0; x < r.order(); ++x) {
    if (subring_closure(r, ElementSet(r.order(), {x})).size() == r.order()) return false;
  }
  return true;
}

namespace detail {

//! Set-cover instance over the reduced universe: rows are the distinct,
//! inclusion-minimal patterns of "which maximal subrings contain x".
struct CoverInstance {
  std::size_t num_sets = 0;
  std::vector<ElementSet> rows;      //!< row -> sets containing it
  std::vector<ElementSet> set_rows;  //!< set -> rows it contains

  static CoverInstance build(RingTable const& r, std::vector<ElementSet> const& sets) {
    CoverInstance inst;
    inst.num_sets = sets.size();
    std::vector<ElementSet> patterns;
    for (Element x = 0; x < r.order(); ++x) {
      ElementSet pat(sets.size());
      for (std::size_t j = 0; j < sets.size(); ++j) {
        if (sets[j].contains(x)) pat.insert(static_cast<Element>(j));
      }
      patterns.push_back(std::move(pat));
    }
    std::sort(patterns.begin(), patterns.end(),
              [](auto const& a, auto const& b) { return canonical_less(a, b); });
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    // Covering a minimal pattern's row covers every row with a superset pattern.
    for (auto const& p : patterns) {
      bool minimal = std::none_of(inst.rows.begin(), inst.rows.end(),
                                  [&](ElementSet const& q) { return q.is_subset_of(p); });
      if (minimal) inst.rows.push_back(p);
    }
    inst.set_rows.assign(sets.size(), ElementSet(inst.rows.size()));
    for (std::size_t i = 0; i < inst.rows.size(); ++i) {
      inst.rows[i].for_each([&](Element j) { inst.set_rows[j].insert(static_cast<Element>(i)); });
    }
    return inst;
  }

  //! Rows pairwise sharing no set among `allowed` each need their own set.
  std::size_t lower_bound(ElementSet const& uncovered, ElementSet const& allowed) const {
    ElementSet used(num_sets);
    std::size_t bound = 0;
    bool infeasible = false;
    uncovered.for_each([&](Element row) {
      ElementSet avail = rows[row] & allowed;
      if (avail.empty()) infeasible = true;
      if (!avail.intersects(used)) {
        ++bound;
        used |= avail;
      }
    });
    return infeasible ? num_sets + 1 : bound;
  }
};

//! Branch and bound for the minimum cover size; branches on the uncovered
//! row contained in the fewest sets.
class MinCoverSearch {
 public:
  explicit MinCoverSearch(CoverInstance const& inst) : inst_(inst), all_(ElementSet::full(inst.num_sets)) {}

  std::size_t solve(std::size_t upper) {
    best_ = upper;
    ElementSet uncovered = ElementSet::full(inst_.rows.size());
    recurse(uncovered, 0);
    return best_;
  }

  std::size_t nodes() const noexcept { return nodes_; }

 private:
  void recurse(ElementSet const& uncovered, std::size_t depth) {
    ++nodes_;
    if (uncovered.empty()) {
      best_ = std::min(best_, depth);
      return;
    }
    if (depth + inst_.lower_bound(uncovered, all_) >= best_) return;
    Element pick = uncovered.first();
    std::size_t fewest = inst_.num_sets + 1;
    uncovered.for_each([&](Element row) {
      if (inst_.rows[row].size() < fewest) {
        fewest = inst_.rows[row].size();
        pick = row;
      }
    });
    inst_.rows[pick].for_each([&](Element j) { recurse(uncovered - inst_.set_rows[j], depth + 1); });
  }

  CoverInstance const& inst_;
  ElementSet all_;
  std::size_t best_ = 0;
  std::size_t nodes_ = 0;
};

//! Finds the lexicographically least cover of exactly `budget` sets, scanning
//! set indices in increasing order. In a minimum cover every member covers a
//! row no earlier member covers, which justifies skipping useless sets.
inline bool lex_least_cover(CoverInstance const& inst, std::size_t budget,
                            std::vector<std::size_t>& chosen, std::size_t& nodes) {
  std::function<bool(ElementSet const&, std::size_t, std::size_t)> dfs =
      [&](ElementSet const& uncovered, std::size_t next, std::size_t left) -> bool {
    ++nodes;
    if (uncovered.empty()) return true;
    if (left == 0) return false;
    ElementSet allowed(inst.num_sets);
    for (std::size_t j = next; j < inst.num_sets; ++j) allowed.insert(static_cast<Element>(j));
    if (inst.lower_bound(uncovered, allowed) > left) return false;
    for (std::size_t j = next; j < inst.num_sets; ++j) {
      if (!inst.set_rows[j].intersects(uncovered)) continue;
      chosen.push_back(j);
      if (dfs(uncovered - inst.set_rows[j], j + 1, left - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  chosen.clear();
  return dfs(ElementSet::full(inst.rows.size()), 0, budget);
}

}  // namespace detail

//! Minimum cover of R by members of `sets` (in practice: its maximal
//! subrings). The witness is the lexicographically least minimum cover.
inline CoverResult min_cover(RingTable const& r, std::vector<ElementSet> sets,
                             std::size_t cap = 12) {
  auto const start = std::chrono::steady_clock::now();
  CoverResult out;
  out.maximal = std::move(sets);
  out.intersection = ElementSet(r.order());
  ElementSet uni(r.order());
  for (auto const& s : out.maximal) uni |= s;
  if (r.order() <= 1 || uni.size() != r.order()) return out;

  auto const inst = detail::CoverInstance::build(r, out.maximal);
  detail::MinCoverSearch search(inst);
  std::size_t best = search.solve(std::min(cap, inst.num_sets) + 1);
  out.stats.nodes = search.nodes();
  if (best > cap) {
    throw RingError(Errc::cap_exceeded, "sigma exceeds cap " + std::to_string(cap));
  }
  std::vector<std::size_t> chosen;
  if (!detail::lex_least_cover(inst, best, chosen, out.stats.nodes)) {
    throw RingError(Errc::not_applicable, "no cover of the optimal size found on replay");
  }
  out.sigma = Sigma(best);
  out.witness_indices = chosen;
  out.intersection = r.all();
  for (std::size_t j : chosen) {
    out.witness.push_back(out.maximal[j]);
    out.intersection &= out.maximal[j];
  }
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline CoverResult sigma(RingTable const& r, SolverOptions const& opt = {}) {
  auto const start = std::chrono::steady_clock::now();
  if (!is_coverable(r)) {
    CoverResult out;
    out.intersection = ElementSet(r.order());
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }
  SubringLattice lat = lattice_for(r, opt);
  CoverResult out = min_cover(r, maximal_subrings(lat, r), opt.sigma_cap);
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

//! Independent check that no `size` members of `sets` cover R: plain
//! enumeration of index combinations, no reductions.
inline bool cover_of_size_exists(RingTable const& r, std::vector<ElementSet> const& sets,
                                 std::size_t size) {
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, ElementSet const&)> rec = [&](std::size_t next,
                                                                ElementSet const& acc) -> bool {
    if (acc.size() == r.order()) return true;
    if (pick.size() == size) return false;
    for (std::size_t j = next; j < sets.size(); ++j) {
      pick.push_back(j);
      bool ok = rec(j + 1, acc | sets[j]);
      pick.pop_back();
      if (ok) return true;
    }
    return false;
  };
  return rec(0, ElementSet(r.order()));
}

inline GoodTupleReport verify_good_tuple(RingTable const& r, std::vector<ElementSet> const& cover) {
  ElementSet uni(r.order());
  ElementSet meet = r.all();
  for (auto const& s : cover) {
    uni |= s;
    meet &= s;
  }
  if (cover.empty() || uni.size() != r.order()) {
    throw RingError(Errc::not_a_cover, "the given subrings do not cover the ring");
  }
  for (auto const& s : cover) {
    if (s.size() == r.order()) throw RingError(Errc::not_a_cover, "cover member is not proper");
  }
  GoodTupleReport rep;
  for (auto const& s : cover) {
    rep.index_in_r.push_back(r.order() / s.size());
    rep.index_over_meet.push_back(s.size() / meet.size());
  }
  rep.index_of_meet = r.order() / meet.size();
  rep.unit_in_meet = meet.contains(r.one());
  rep.ideal_free = true;
  meet.for_each([&](Element s) {
    if (s != 0 && ideal_closure(r, ElementSet(r.order(), {s})).is_subset_of(meet)) {
      rep.ideal_free = false;
    }
  });
  std::size_t fact = 1;
  for (std::size_t i = 2; i <= cover.size(); ++i) fact *= i;
  rep.key_inequality = rep.index_of_meet <= fact;
  return rep;
}

}  // namespace ringcover

#endif  // RINGCOVER_COVER_HPP_
