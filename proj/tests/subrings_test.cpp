#include <gtest/gtest.h>

#include <algorithm>

#include "ringcover/constructors.hpp"
#include "ringcover/cover.hpp"
#include "ringcover/dsl.hpp"
#include "ringcover/subrings.hpp"
#include "support.hpp"

using namespace ringcover;

namespace {

ElementSet set_of(RingTable const& r, std::vector<Coords> const& cs) {
  ElementSet s(r.order());
  for (auto const& c : cs) s.insert(r.index(c));
  return s;
}

std::vector<ElementSet> sorted(std::vector<ElementSet> v) {
  std::sort(v.begin(), v.end(), [](auto const& a, auto const& b) { return canonical_less(a, b); });
  return v;
}

TEST(Closure, Examples) {
  RingTable z4 = zmod(4);
  EXPECT_EQ(subring_closure(z4, ElementSet(4, {2})), ElementSet(4, {0, 2}));
  RingTable f4 = gf(4);
  EXPECT_EQ(subring_closure(f4, ElementSet(4, {f4.index({0, 1})})).size(), 4u);
  RingTable p33 = trunc_poly(3, 3);
  EXPECT_EQ(subring_closure(p33, ElementSet(27, {p33.index({1, 1, 0})})).size(), 27u);
  // closures never adjoin 1 on their own
  RingTable n = nil2(2);
  EXPECT_EQ(subring_closure(n, ElementSet(8, {n.basis(1)})).size(), 2u);
}

TEST(Closure, Incremental) {
  RingTable r = upper_tri(2, gf(3));
  ElementSet base = subring_closure(r, ElementSet(27, {r.one()}));
  for (Element x = 0; x < r.order(); ++x) {
    ElementSet g = base;
    g.insert(x);
    EXPECT_EQ(subring_closure(r, base, x), subring_closure(r, g));
  }
}

TEST(IsSubring, Examples) {
  RingTable r = product({gf(2), gf(2)});
  EXPECT_TRUE(is_subring(r, set_of(r, {{0, 0}, {1, 0}})));
  EXPECT_FALSE(is_subring(r, set_of(r, {{0, 0}, {1, 1}, {1, 0}})));
  EXPECT_FALSE(is_subring(r, set_of(r, {{1, 0}})));
}

TEST(AllSubrings, SmallCounts) {
  RingTable f2f2 = product({gf(2), gf(2)});
  auto lat = all_subrings(f2f2);
  EXPECT_EQ(lat.size(), 5u);
  EXPECT_EQ(lat.subrings, sorted({ElementSet(4, {0}), set_of(f2f2, {{0, 0}, {1, 1}}),
                                  set_of(f2f2, {{0, 0}, {1, 0}}), set_of(f2f2, {{0, 0}, {0, 1}}), f2f2.all()}));
  EXPECT_EQ(all_subrings(gf(4)).size(), 3u);
  EXPECT_EQ(all_subrings(gf(8)).size(), 3u);
}

TEST(AllSubrings, CapExceeded) {
  try {
    all_subrings(product({gf(2), gf(2), gf(2), gf(2)}), 10);
    FAIL();
  } catch (RingError const& e) {
    EXPECT_EQ(e.code(), Errc::cap_exceeded);
  }
}

TEST(AllSubrings, LatticeInvariants) {
  for (auto const& [spec, r] : support::manifest_rings()) {
    SubringLattice lat = all_subrings(r);
    ASSERT_GE(lat.size(), 2u) << spec;
    EXPECT_EQ(lat.subrings.front(), ElementSet(r.order(), {0})) << spec;
    EXPECT_EQ(lat.subrings.back(), r.all()) << spec;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      EXPECT_TRUE(is_subring(r, lat.subrings[i])) << spec;
      if (i) {
        EXPECT_TRUE(canonical_less(lat.subrings[i - 1], lat.subrings[i])) << spec;
      }
    }
    // covering pairs are exactly the Hasse edges
    for (auto [a, b] : lat.containment) {
      ASSERT_TRUE(lat.subrings[a].is_subset_of(lat.subrings[b]));
      for (std::size_t c = 0; c < lat.size(); ++c) {
        if (c == a || c == b) continue;
        EXPECT_FALSE(lat.subrings[a].is_subset_of(lat.subrings[c]) && lat.subrings[c].is_subset_of(lat.subrings[b]))
            << spec;
      }
    }
  }
}

TEST(AllSubrings, MatchesBruteForceUpTo16) {
  std::size_t checked = 0;
  for (auto const& [spec, r] : support::manifest_rings()) {
    if (r.order() > 16) continue;
    EXPECT_EQ(all_subrings(r).subrings, sorted(oracle::subrings(r))) << spec;
    ++checked;
  }
  EXPECT_GE(checked, 15u);
}

TEST(Maximal, FlagsAgreeWithBruteForce) {
  for (auto const& [spec, r] : support::manifest_rings()) {
    if (r.order() > 16) continue;
    auto all = oracle::subrings(r);
    std::vector<ElementSet> expect;
    for (auto const& s : all) {
      if (s.size() == r.order()) continue;
      bool top = std::none_of(all.begin(), all.end(), [&](auto const& t) {
        return t.size() < r.order() && t.size() > s.size() && s.is_subset_of(t);
      });
      if (top) expect.push_back(s);
    }
    EXPECT_EQ(maximal_subrings(r), sorted(expect)) << spec;
  }
}

TEST(Maximal, F4xF4ExplicitList) {
  RingTable r = eval("GF(4) x GF(4)");
  // coordinates (a0, a1, b0, b1) for (a0 + a1 t, b0 + b1 t)
  std::vector<Coords> f4{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  std::vector<Coords> f2{{0, 0}, {1, 0}};
  auto pairs = [&](std::vector<Coords> const& xs, std::vector<Coords> const& ys) {
    std::vector<Coords> out;
    for (auto const& x : xs)
      for (auto const& y : ys) out.push_back({x[0], x[1], y[0], y[1]});
    return out;
  };
  std::vector<ElementSet> expect{
      set_of(r, pairs(f4, f2)),
      set_of(r, pairs(f2, f4)),
      set_of(r, {{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 1, 1, 1}}),
      // twisted diagonal {(0,0), (1,1), (t, t+1), (t+1, t)}
      set_of(r, {{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 1, 1}, {1, 1, 0, 1}}),
  };
  EXPECT_EQ(maximal_subrings(r), sorted(expect));
}

TEST(Maximal, Nil2SubringsSt) {
  RingTable r = nil2(3);
  // S_t = {a + b t} for t in {x, y, x+y, x+2y}
  for (Coords t : {Coords{0, 1, 0}, Coords{0, 0, 1}, Coords{0, 1, 1}, Coords{0, 1, 2}}) {
    ElementSet st = subring_closure(r, ElementSet(27, {r.one(), r.index(t)}));
    EXPECT_EQ(st.size(), 9u);
    EXPECT_TRUE(is_maximal(r, st));
  }
  EXPECT_FALSE(is_maximal(r, subring_closure(r, ElementSet(27, {r.one()}))));
  EXPECT_FALSE(is_maximal(r, r.all()));
}

TEST(Maximal, UnionIsRingIffNoSingleGenerator) {
  for (auto const& [spec, r] : support::manifest_rings()) {
    ElementSet u(r.order());
    for (auto const& m : maximal_subrings(r)) u |= m;
    bool single = false;
    for (Element x = 0; x < r.order() && !single; ++x) {
      single = subring_closure(r, ElementSet(r.order(), {x})).size() == r.order();
    }
    EXPECT_EQ(u.size() == r.order(), !single) << spec;
    EXPECT_EQ(is_coverable(r), !single) << spec;
  }
}

TEST(Maximal, Nil2UnitalPairwiseIntersections) {
  RingTable r = nil2(3);
  std::vector<ElementSet> unital;
  for (auto const& m : maximal_subrings(r)) {
    if (m.contains(r.one())) unital.push_back(m);
  }
  ASSERT_EQ(unital.size(), 4u);
  ElementSet prime = subring_closure(r, ElementSet(27, {r.one()}));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) EXPECT_EQ(unital[i] & unital[j], prime);
}

}  // namespace
