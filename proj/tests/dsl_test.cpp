#include <gtest/gtest.h>

#include "ringcover/dsl.hpp"
#include "ringcover/ideals.hpp"
#include "ast_gen.hpp"
#include "support.hpp"

using namespace ringcover;
namespace ex = ringcover::expr;

namespace {

Errc code_of(std::string_view text) {
  try {
    parse(text);
  } catch (RingError const& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return Errc::timeout;
}

TEST(Parse, Examples) {
  EXPECT_EQ(parse("GF(4) x GF(4)"), ex::prod({ex::gf(4), ex::gf(4)}));
  EXPECT_EQ(parse("T(2, GF(3))"), ex::tri(2, ex::gf(3)));
  EXPECT_EQ(parse("Quot(T(2,GF(3)), [[0,1,0]])"), ex::quot(ex::tri(2, ex::gf(3)), {{0, 1, 0}}));
  EXPECT_EQ(parse("MT()"), ex::mixed_tri());
  EXPECT_EQ(parse("  Op(\n  TD(4)) # trailing comment"), ex::opp(ex::twisted_dual(4)));
}

TEST(Parse, ProductFlattensAndNests) {
  auto flat = ex::prod({ex::zmod(2), ex::zmod(2), ex::zmod(2)});
  EXPECT_EQ(parse("Z(2) x (Z(2) x Z(2))"), flat);
  EXPECT_EQ(parse("(Z(2) x Z(2)) x Z(2)"), flat);
  EXPECT_EQ(canonical_print(parse("Z(2) x (Z(2) x Z(2))")), "Z(2) x Z(2) x Z(2)");
  EXPECT_EQ(parse("M(2, GF(2) x GF(2))"), ex::mat(2, ex::prod({ex::gf(2), ex::gf(2)})));
  EXPECT_EQ(parse("GF(2)xGF(2)"), ex::prod({ex::gf(2), ex::gf(2)}));
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  try {
    parse("GF(4) x\n  GF(4");
    FAIL();
  } catch (RingError const& e) {
    EXPECT_EQ(e.code(), Errc::syntax_error);
    EXPECT_NE(std::string(e.what()).find("line 2, column 7"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of("Foo(3)"), Errc::syntax_error);
  EXPECT_EQ(code_of("GF(4) GF(4)"), Errc::syntax_error);
  EXPECT_EQ(code_of(""), Errc::syntax_error);
  EXPECT_EQ(code_of("Table([2], [[[1]]])"), Errc::syntax_error);
}

TEST(Parse, RangeErrors) {
  EXPECT_EQ(code_of("GF(6)"), Errc::range_error);
  EXPECT_EQ(code_of("GF(64)"), Errc::range_error);
  EXPECT_EQ(code_of("Z(1)"), Errc::range_error);
  EXPECT_EQ(code_of("P(4, 2)"), Errc::range_error);
  EXPECT_EQ(code_of("Nil2(9)"), Errc::range_error);
  EXPECT_EQ(code_of("TD(8)"), Errc::range_error);
  EXPECT_EQ(code_of("M(0, GF(2))"), Errc::range_error);
  EXPECT_EQ(code_of("Quot(GF(4), [[1]])"), Errc::range_error);
  EXPECT_EQ(code_of("Table([6], [[[1]]], [1])"), Errc::range_error);
  EXPECT_EQ(code_of("Table([2], [[[2]]], [1])"), Errc::range_error);
  EXPECT_EQ(code_of("Table([2,2], [[[1,0]]], [1,0])"), Errc::range_error);
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval("M(2,GF(2))").order(), 16u);
  EXPECT_EQ(eval("Nil2(3)").order(), 27u);
  RingTable q = eval("Quot(T(2,GF(3)), [[0,1,0]])");
  EXPECT_EQ(q.order(), 9u);
  EXPECT_TRUE(is_isomorphic(q, eval("GF(3) x GF(3)")));
  EXPECT_EQ(eval("Z(12)").order(), 12u);
}

TEST(Eval, TableFormBuildsTheRing) {
  RingTable t = eval("Table([2,2], [[[1,0],[0,1]],[[0,1],[1,1]]], [1,0])");
  EXPECT_EQ(t, gf(4));
}

TEST(Eval, EngineErrorsPropagate) {
  try {
    eval("Table([2,2], [[[1,0],[0,1]],[[0,1],[0,0]]], [0,1])");
    FAIL();
  } catch (RingError const& e) {
    EXPECT_EQ(e.code(), Errc::bad_unit);
  }
  EXPECT_THROW(eval("M(3, GF(4))"), RingError);
  EXPECT_THROW(eval("Quot(Quot(T(2,GF(3)), [[0,1,0]]), [[1]])"), RingError);
}

TEST(Eval, Deterministic) {
  for (auto const& spec : support::manifest_specs()) {
    RingTable a = eval(spec);
    RingTable b = eval(parse(canonical_print(parse(spec))));
    EXPECT_EQ(a, b) << spec;
    EXPECT_EQ(serialize(a), serialize(b)) << spec;
  }
}

TEST(Eval, AllManifestSpecsEvaluate) {
  auto specs = support::manifest_specs();
  EXPECT_GE(specs.size(), 40u);
  for (auto const& spec : specs) EXPECT_NO_THROW(eval(spec)) << spec;
}

TEST(Eval, RingFileWithComments) {
  std::string text = load_spec_text(std::string(RINGCOVER_TEST_DATA) + "/nil2_3.ring");
  EXPECT_EQ(eval(text), nil2(3));
  EXPECT_EQ(load_spec_text("GF(4)"), "GF(4)");
}

TEST(Print, TableRoundTripsBitExactly) {
  std::string text = "Table([4,2], [[[1,0],[0,1]],[[0,1],[0,0]]], [1,0])";
  EXPECT_EQ(canonical_print(parse(text)), text);
  RingExpr e = ex::table(eval("MT()").shape(), eval("MT()").consts(), eval("MT()").unit_coords());
  EXPECT_EQ(eval(parse(canonical_print(e))), mixed_tri());
}

TEST(Print, RandomAstRoundTrip) {
  support::AstGen g(0x5eed);
  for (int i = 0; i < 10000; ++i) {
    RingExpr e = g.gen(4);
    std::string text = canonical_print(e);
    RingExpr back = parse(text);
    ASSERT_EQ(back, e) << text;
    ASSERT_EQ(canonical_print(back), text);
  }
}

}  // namespace
