#include <gtest/gtest.h>

#include "ringcover/manifest.hpp"
#include "support.hpp"

using namespace ringcover;
using K = Claim::Kind;

namespace {

Errc code_of(std::string const& manifest) {
  try {
    parse_manifest(manifest);
  } catch (RingError const& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << manifest;
  return Errc::timeout;
}

TEST(ParseClaim, Kinds) {
  EXPECT_EQ(parse_claim("sigma = 4").kind, K::sigma_equals);
  EXPECT_EQ(parse_claim("sigma = 4").n, 4u);
  EXPECT_EQ(parse_claim("not-coverable").kind, K::not_coverable);
  EXPECT_EQ(parse_claim("in-S(4)").n, 4u);
  EXPECT_EQ(parse_claim("not-in-S(3)").kind, K::not_in_s);
  EXPECT_EQ(parse_claim("maximal-count = 5").n, 5u);
  Claim idx = parse_claim("index S:I_left = 3");
  EXPECT_EQ(idx.kind, K::index_equals);
  EXPECT_EQ(idx.label, "S:I_left");
  EXPECT_EQ(idx.n, 3u);
  Claim iso = parse_claim("isomorphic-to GF(3) x GF(3)");
  EXPECT_EQ(iso.other, "GF(3) x GF(3)");
}

TEST(ParseClaim, Errors) {
  for (char const* bad : {"sigma 4", "sigma = four", "in-S(4", "index R:T = 3", "isomorphic-to ", "coverable"}) {
    try {
      parse_claim(bad, 7);
      ADD_FAILURE() << bad;
    } catch (RingError const& e) {
      EXPECT_EQ(e.code(), Errc::syntax_error) << bad;
      EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos);
    }
  }
  EXPECT_THROW(parse_claim("in-S(2)"), RingError);
}

TEST(ParseManifest, CommentsAndLines) {
  auto recs = parse_manifest("# header\n\nGF(4) x GF(4) :: sigma = 4 :: example\n  # indented comment\nZ(4) :: not-coverable :: c\n");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].spec, "GF(4) x GF(4)");
  EXPECT_EQ(recs[0].claim_text, "sigma = 4");
  EXPECT_EQ(recs[0].citation, "example");
  EXPECT_EQ(recs[0].line, 3u);
  EXPECT_EQ(recs[1].line, 5u);
}

TEST(ParseManifest, Errors) {
  EXPECT_EQ(code_of("GF(4) :: sigma = 1\n"), Errc::syntax_error);
  EXPECT_EQ(code_of(" :: sigma = 1 :: x\n"), Errc::syntax_error);
  EXPECT_EQ(code_of("GF(4) :: bogus :: x\n"), Errc::syntax_error);
  EXPECT_EQ(code_of("GF(4) :: in-S(1) :: x\n"), Errc::range_error);
}

TEST(Evaluate, PassFailAndErrors) {
  auto recs = parse_manifest(
      "GF(4) x GF(4) :: sigma = 4 :: a\n"
      "GF(4) x GF(4) :: sigma = 3 :: b\n"
      "GF(7 :: sigma = 3 :: c\n"
      "M(2,GF(2)) :: index R:S = 8 :: d\n"
      "Nil2(2) :: index R:J = 2 :: e\n");
  ClaimOutcome a = evaluate_claim(recs[0]);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.observed, "sigma=4");
  EXPECT_FALSE(evaluate_claim(recs[1]).pass);
  ClaimOutcome c = evaluate_claim(recs[2]);
  EXPECT_FALSE(c.pass);
  EXPECT_FALSE(c.error.empty());
  EXPECT_TRUE(evaluate_claim(recs[3]).pass);
  EXPECT_TRUE(evaluate_claim(recs[4]).pass);
}

TEST(ShippedManifest, Shape) {
  auto recs = support::manifest_records();
  EXPECT_GE(recs.size(), 60u);
  for (auto const& r : recs) EXPECT_FALSE(r.citation.empty()) << r.line;
}

std::string rows(VerifyReport const& rep) {
  std::string s;
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    s += rep.records[i].spec + " " + rep.records[i].claim_text + " " + (rep.outcomes[i].pass ? "pass " : "fail ") +
         rep.outcomes[i].observed + "\n";
  }
  return s;
}

TEST(ShippedManifest, DeterministicAcrossThreadCounts) {
  auto recs = support::manifest_records();
  std::string one = rows(verify_manifest(recs, {}, 1));
  for (std::size_t t : {2u, 4u, 8u}) EXPECT_EQ(rows(verify_manifest(recs, {}, t)), one) << t;
}

}  // namespace
