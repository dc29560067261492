#ifndef RINGCOVER_TESTS_SUPPORT_HPP_
#define RINGCOVER_TESTS_SUPPORT_HPP_

// Brute-force oracles and manifest helpers shared by the test binaries. The
// oracles deliberately avoid the library's closures and solvers; they only
// use the ring's add/mul tables.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ringcover/dsl.hpp"
#include "ringcover/manifest.hpp"
#include "ringcover/ring.hpp"

namespace oracle {

using ringcover::Element;
using ringcover::ElementSet;
using ringcover::RingTable;

inline bool closed(RingTable const& r, std::vector<Element> const& s, std::vector<bool> const& in) {
  for (Element a : s) {
    for (Element b : s) {
      if (!in[r.add(a, b)] || !in[r.mul(a, b)]) return false;
    }
  }
  return true;
}

inline ElementSet to_set(RingTable const& r, std::vector<Element> const& s) {
  ElementSet out(r.order());
  for (Element x : s) out.insert(x);
  return out;
}

//! Every subset containing 0 closed under + and *; order <= 16 only.
inline std::vector<ElementSet> subrings(RingTable const& r) {
  std::size_t n = r.order();
  std::vector<ElementSet> out;
  for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
    std::vector<Element> s{0};
    std::vector<bool> in(n, false);
    in[0] = true;
    for (std::size_t i = 1; i < n; ++i) {
      if ((mask >> (i - 1)) & 1U) {
        s.push_back(static_cast<Element>(i));
        in[i] = true;
      }
    }
    if (closed(r, s, in)) out.push_back(to_set(r, s));
  }
  return out;
}

inline bool nilpotent(RingTable const& r, Element x) {
  Element p = x;
  for (std::size_t k = 0; k <= r.order(); ++k) {
    if (p == 0) return true;
    p = r.mul(p, x);
  }
  return false;
}

//! Two-sided ideal generated by x, by naive saturation.
inline std::vector<bool> principal_ideal(RingTable const& r, Element x) {
  std::size_t n = r.order();
  std::vector<bool> in(n, false);
  in[0] = in[x] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (Element a = 0; a < n; ++a) {
      if (!in[a]) continue;
      for (Element b = 0; b < n; ++b) {
        Element cand[3] = {r.mul(a, b), r.mul(b, a), in[b] ? r.add(a, b) : Element{0}};
        for (Element c : cand) {
          if (!in[c]) in[c] = grew = true;
        }
      }
    }
  }
  return in;
}

//! Largest nil ideal: the union of all principal ideals made of nilpotent
//! elements (sums of nil ideals are nil in a finite ring, so this union is
//! itself the largest nil ideal).
inline ElementSet nil_radical(RingTable const& r) {
  ElementSet j(r.order());
  for (Element x = 0; x < r.order(); ++x) {
    auto in = principal_ideal(r, x);
    bool nil = true;
    for (Element y = 0; y < r.order() && nil; ++y) nil = !in[y] || nilpotent(r, y);
    if (nil) j.insert(x);
  }
  return j;
}

//! Minimum number of proper subrings (all of them, not just maximal ones)
//! with union R; 0 when none up to `limit` exists.
inline std::size_t min_cover_all(RingTable const& r, std::vector<ElementSet> const& all, std::size_t limit) {
  std::vector<ElementSet> proper;
  for (auto const& s : all) {
    if (s.size() < r.order()) proper.push_back(s);
  }
  for (std::size_t k = 1; k <= limit; ++k) {
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t next) {
      if (pick.size() == k) {
        ElementSet u(r.order());
        for (std::size_t j : pick) u |= proper[j];
        return u.size() == r.order();
      }
      for (std::size_t j = next; j < proper.size(); ++j) {
        pick.push_back(j);
        bool ok = rec(j + 1);
        pick.pop_back();
        if (ok) return true;
      }
      return false;
    };
    if (rec(0)) return k;
  }
  return 0;
}

}  // namespace oracle

namespace support {

inline std::string read_file(std::string const& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<ringcover::ClaimRecord> manifest_records() {
  return ringcover::parse_manifest(read_file(RINGCOVER_MANIFEST_PATH));
}

//! Distinct specs named in the shipped manifest, including isomorphism
//! targets, in first-appearance order.
inline std::vector<std::string> manifest_specs() {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (auto const& rec : manifest_records()) {
    for (auto const& s : {rec.spec, rec.claim.other}) {
      if (!s.empty() && seen.insert(s).second) out.push_back(s);
    }
  }
  return out;
}

struct NamedRing {
  std::string spec;
  ringcover::RingTable ring;
};

inline std::vector<NamedRing> manifest_rings() {
  std::vector<NamedRing> out;
  for (auto const& s : manifest_specs()) out.push_back({s, ringcover::eval(s)});
  return out;
}

}  // namespace support

#endif  // RINGCOVER_TESTS_SUPPORT_HPP_
