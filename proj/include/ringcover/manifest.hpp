#ifndef RINGCOVER_MANIFEST_HPP_
#define RINGCOVER_MANIFEST_HPP_

// Claim manifests: one claim per line, `SPEC :: CLAIM :: CITATION`, with `#`
// starting a comment line. Claims:
//
//   sigma = N            not-coverable
//   in-S(N)              not-in-S(N)
//   maximal-count = K    isomorphic-to SPEC
//   index LABEL = K      LABEL in R:S R:Si Si:S R:J S:I_left S:I_right
//
// The index labels refer to the lex-least minimum cover S_1..S_n of R, its
// intersection S, and the Jacobson radical J. `Si` claims hold for every i;
// transporter claims hold for every nonzero coset representative of S.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "classify.hpp"
#include "cover.hpp"
#include "dsl.hpp"
#include "error.hpp"
#include "ideals.hpp"

namespace ringcover {

struct Claim {
  enum class Kind { sigma_equals, not_coverable, in_s, not_in_s, maximal_count, index_equals, isomorphic_to };
  Kind kind = Kind::sigma_equals;
  std::size_t n = 0;
  std::string label;  //!< index_equals only
  std::string other;  //!< isomorphic_to only
};

struct ClaimRecord {
  std::string spec;
  Claim claim;
  std::string claim_text;
  std::string citation;
  std::size_t line = 0;
};

struct ClaimOutcome {
  bool pass = false;
  std::string observed;
  std::string error;  //!< engine error, if any (the claim then fails)
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<ClaimRecord> records;
  std::vector<ClaimOutcome> outcomes;
  double seconds = 0.0;

  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(outcomes.begin(), outcomes.end(), [](auto const& o) { return !o.pass; }));
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::size_t parse_count(std::string const& s, std::size_t line) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw RingError(Errc::syntax_error, "line " + std::to_string(line) + ": expected a number, got '" + s + "'");
  }
  return std::stoull(s);
}

inline bool valid_label(std::string const& l) {
  return l == "R:S" || l == "R:Si" || l == "Si:S" || l == "R:J" || l == "S:I_left" || l == "S:I_right";
}

}  // namespace detail

inline Claim parse_claim(std::string const& text, std::size_t line = 0) {
  using K = Claim::Kind;
  Claim c;
  auto bad = [&] {
    return RingError(Errc::syntax_error, "line " + std::to_string(line) + ": unknown claim '" + text + "'");
  };
  auto after_eq = [&](std::size_t from) {
    auto eq = text.find('=', from);
    if (eq == std::string::npos) throw bad();
    return detail::parse_count(detail::trim(std::string_view(text).substr(eq + 1)), line);
  };
  auto paren = [&](std::size_t prefix) {
    if (text.back() != ')') throw bad();
    return detail::parse_count(detail::trim(text.substr(prefix, text.size() - prefix - 1)), line);
  };
  if (text == "not-coverable") {
    c.kind = K::not_coverable;
  } else if (text.starts_with("sigma")) {
    c.kind = K::sigma_equals;
    c.n = after_eq(5);
  } else if (text.starts_with("maximal-count")) {
    c.kind = K::maximal_count;
    c.n = after_eq(13);
  } else if (text.starts_with("in-S(")) {
    c.kind = K::in_s;
    c.n = paren(5);
  } else if (text.starts_with("not-in-S(")) {
    c.kind = K::not_in_s;
    c.n = paren(9);
  } else if (text.starts_with("index ")) {
    c.kind = K::index_equals;
    auto eq = text.find('=');
    if (eq == std::string::npos) throw bad();
    c.label = detail::trim(std::string_view(text).substr(6, eq - 6));
    if (!detail::valid_label(c.label)) throw bad();
    c.n = after_eq(eq);
  } else if (text.starts_with("isomorphic-to ")) {
    c.kind = K::isomorphic_to;
    c.other = detail::trim(std::string_view(text).substr(14));
    if (c.other.empty()) throw bad();
  } else {
    throw bad();
  }
  if ((c.kind == K::in_s || c.kind == K::not_in_s) && c.n < 3) {
    throw RingError(Errc::range_error, "line " + std::to_string(line) + ": S(n) needs n >= 3");
  }
  return c;
}

inline std::vector<ClaimRecord> parse_manifest(std::string_view text) {
  std::vector<ClaimRecord> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string t = detail::trim(raw);
    if (t.empty() || t.front() == '#') continue;
    auto a = t.find("::");
    auto b = a == std::string::npos ? a : t.find("::", a + 2);
    if (b == std::string::npos) {
      throw RingError(Errc::syntax_error,
                      "line " + std::to_string(line) + ": expected SPEC :: CLAIM :: CITATION");
    }
    ClaimRecord r;
    r.line = line;
    r.spec = detail::trim(std::string_view(t).substr(0, a));
    r.claim_text = detail::trim(std::string_view(t).substr(a + 2, b - a - 2));
    r.citation = detail::trim(std::string_view(t).substr(b + 2));
    if (r.spec.empty() || r.claim_text.empty()) {
      throw RingError(Errc::syntax_error, "line " + std::to_string(line) + ": empty spec or claim");
    }
    r.claim = parse_claim(r.claim_text, line);
    out.push_back(std::move(r));
  }
  return out;
}

namespace detail {

inline std::string join_counts(std::vector<std::size_t> const& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline ClaimOutcome evaluate_index(RingTable const& r, Claim const& c, SolverOptions const& opt) {
  ClaimOutcome o;
  if (c.label == "R:J") {
    std::size_t v = r.order() / jacobson_radical(r).radical.size();
    o.pass = v == c.n;
    o.observed = "[R:J]=" + std::to_string(v);
    return o;
  }
  CoverResult cr = sigma(r, opt);
  if (!cr.sigma.coverable()) {
    o.observed = "not coverable";
    return o;
  }
  ElementSet const& s = cr.intersection;
  std::vector<std::size_t> vals;
  if (c.label == "R:S") {
    vals.push_back(r.order() / s.size());
  } else if (c.label == "R:Si") {
    for (auto const& si : cr.witness) vals.push_back(r.order() / si.size());
  } else if (c.label == "Si:S") {
    for (auto const& si : cr.witness) vals.push_back(si.size() / s.size());
  } else {
    Side side = c.label == "S:I_left" ? Side::left : Side::right;
    for (Element x : coset_representatives(r, s)) vals.push_back(s.size() / transporter(r, s, x, side).size());
  }
  o.pass = !vals.empty() && std::all_of(vals.begin(), vals.end(), [&](std::size_t v) { return v == c.n; });
  o.observed = "[" + c.label + "]=" + join_counts(vals);
  return o;
}

}  // namespace detail

inline ClaimOutcome evaluate_claim(ClaimRecord const& rec, SolverOptions const& opt = {}) {
  using K = Claim::Kind;
  auto const start = std::chrono::steady_clock::now();
  ClaimOutcome o;
  try {
    RingTable r = eval(rec.spec);
    Claim const& c = rec.claim;
    switch (c.kind) {
      case K::sigma_equals:
      case K::not_coverable: {
        Sigma s = sigma(r, opt).sigma;
        o.pass = c.kind == K::not_coverable ? !s.coverable() : s == Sigma(c.n);
        o.observed = "sigma=" + s.str();
        break;
      }
      case K::in_s:
      case K::not_in_s: {
        SnVerdict v = in_sn(r, c.n, opt);
        o.pass = v.member == (c.kind == K::in_s);
        o.observed = std::string(v.member ? "member" : "not member") + ", sigma=" + v.sigma_r.sigma.str();
        break;
      }
      case K::maximal_count: {
        std::size_t k = maximal_subrings(lattice_for(r, opt), r).size();
        o.pass = k == c.n;
        o.observed = "maximal=" + std::to_string(k);
        break;
      }
      case K::index_equals: {
        o = detail::evaluate_index(r, c, opt);
        break;
      }
      case K::isomorphic_to: {
        bool iso = is_isomorphic(r, eval(c.other));
        o.pass = iso;
        o.observed = iso ? "isomorphic" : "not isomorphic";
        break;
      }
    }
  } catch (std::exception const& e) {
    o.pass = false;
    o.error = e.what();
    o.observed = "error";
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

//! Evaluates every record on `threads` workers. Outcomes are stored by
//! record index, so the report order never depends on scheduling.
inline VerifyReport verify_manifest(std::vector<ClaimRecord> records, SolverOptions const& opt = {},
                                 std::size_t threads = 1) {
  auto const start = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.records = std::move(records);
  rep.outcomes.resize(rep.records.size());
  std::atomic<std::size_t> next = 0;
  auto worker = [&] {
    for (std::size_t i = next++; i < rep.records.size(); i = next++) {
      rep.outcomes[i] = evaluate_claim(rep.records[i], opt);
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(rep.records.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace ringcover

#endif  // RINGCOVER_MANIFEST_HPP_
