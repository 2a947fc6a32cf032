#include "doctest.h"

#include "ems/symbol.hpp"
#include "support.hpp"

using namespace ems;
using testsupport::make_ems;
using testsupport::Row;

TEST_CASE("validation accepts the nine-member family") {
  for (const auto& e : testsupport::sp8_class()) CHECK(validate(e).empty());
}

TEST_CASE("validation rejects a sign flip") {
  auto bad = make_ems(Family::Sp, 4, {{0, 0, 0, -1}, {2, 2, 0, -1}, {4, 4, 0, -1}});
  auto violations = validate(bad);
  REQUIRE(!violations.empty());
  bool found = false;
  for (const auto& v : violations) found |= v.rule == kRuleSignCondition;
  CHECK(found);
}

TEST_CASE("phantom rows violate strict mode only") {
  auto e = make_ems(Family::Sp, 4, {{0, -2, 1, 1}});
  e.ctx.rank = 0;  // phantom contributes nothing
  auto violations = validate(e);
  bool found = false;
  for (const auto& v : violations) found |= v.rule == kRuleNonNegativeAB;
  CHECK(found);
  e.strict = false;
  for (const auto& v : validate(e)) CHECK(v.rule != kRuleNonNegativeAB);
}

TEST_CASE("psi of the worked symbols") {
  auto cls = testsupport::sp8_class();
  CHECK(psi_of(cls[0]) == testsupport::sp8_psi("S1 + S3 + S5"));
  CHECK(psi_of(cls[7]) == testsupport::sp8_psi("S1*S5@1 + S2*S2@1"));
  auto phantom_only = make_ems(Family::SO_odd, 0, {{0, -2, 1, 1}});
  phantom_only.strict = false;
  CHECK(psi_of(phantom_only).summands.empty());
}

TEST_CASE("necessary non-vanishing") {
  CHECK(necessary_nonvanishing(testsupport::sp8_class()[0]).passes);
  auto bad = make_ems(Family::Sp, 0, {{4, -2, 0, 1}});
  auto rep = necessary_nonvanishing(bad);
  CHECK(!rep.passes);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0].rule == kRuleBPlusL);
  auto forced = make_ems(Family::SO_odd, 1, {{1, -1, 1, 1}});
  auto rep2 = necessary_nonvanishing(forced);
  CHECK(rep2.passes);
  CHECK(rep2.forced_eta.empty());  // B+l = 1/2 here, nothing forced
  auto edge = make_ems(Family::SO_odd, 2, {{3, -1, 0, 1}});
  auto rep3 = necessary_nonvanishing(edge);
  CHECK(rep3.passes);
  REQUIRE(rep3.forced_eta.size() == 1);
}

TEST_CASE("shift and unshift") {
  auto e1 = testsupport::sp8_class()[0];
  CHECK(shift(e1, HalfInt::whole(0)) == e1);
  auto ph = make_ems(Family::Sp, 4, {{0, -2, 1, 1}});
  ph.strict = false;
  auto moved = shift(ph, HalfInt::whole(2));
  CHECK(moved.blocks[0].rows[0].A == HalfInt::whole(2));
  CHECK(moved.blocks[0].rows[0].B == HalfInt::whole(1));
  CHECK(shift(moved, HalfInt::whole(-2)) == ph);
  CHECK_THROWS(shift(e1, HalfInt::half(1)));
  std::mt19937_64 rng(5);
  testsupport::RandomMultiSegments gen(41);
  for (int i = 0; i < 100; ++i) {
    auto e = gen.next();
    auto z = HalfInt::whole(std::uniform_int_distribution<int>(-3, 3)(rng));
    CHECK(shift(shift(e, z), -z) == e);
  }
}

TEST_CASE("non-negativity") {
  auto cls = testsupport::sp8_class();
  CHECK(is_nonnegative(cls[0]));
  CHECK(!is_nonnegative(cls[2]));  // has a row with B = -1
  CHECK(is_nonnegative(make_multisegment({Family::SO_odd, 0}, {})));
}

TEST_CASE("weak normalization") {
  auto e = make_ems(Family::SO_odd, 1, {{2, 0, 1, -1}});  // l = b/2
  CHECK(e.blocks[0].rows[0].eta == +1);
  auto f = make_ems(Family::SO_odd, 2, {{4, 0, 1, -1}});  // l < b/2
  CHECK(f.blocks[0].rows[0].eta == -1);
  CHECK(weak_normalize(weak_normalize(f)) == weak_normalize(f));
  CHECK(weak_equal(e, make_ems(Family::SO_odd, 1, {{2, 0, 1, 1}})));
}

TEST_CASE("phantom shapes") {
  CHECK(phantom_shape(phantom_row(PhantomKind::integral, 2)).has_value());
  CHECK(phantom_shape(phantom_row(PhantomKind::half_integral, 0)).has_value());
  CHECK(!phantom_shape(ExtendedSegment{HalfInt::whole(2), HalfInt::whole(2), 0, -1}));
  CHECK(!phantom_shape(ExtendedSegment{HalfInt::whole(1), HalfInt::whole(-2), 1, 1}));
  CHECK_THROWS(phantom_row(PhantomKind::integral, 0));
  // The phantom's sign factor is always +1, so (P) keeps the sign condition.
  for (int l = 1; l <= 6; ++l) CHECK(sign_factor(phantom_row(PhantomKind::integral, l)) == 1);
  for (int l = 0; l <= 6; ++l)
    CHECK(sign_factor(phantom_row(PhantomKind::half_integral, l)) == 1);
}

TEST_CASE("one-line encoding round trip") {
  for (const auto& e : testsupport::sp8_class()) CHECK(parse_oneline(to_oneline(e)) == e);
  auto& so = testsupport::so31();
  CHECK(parse_oneline(to_oneline(so.mpm_final)) == so.mpm_final);
  CHECK_THROWS(parse_oneline("Spp 4 @1{(0,0,0,-)}"));
}

TEST_CASE("symbol rendering of worked rows") {
  auto e3_first = make_ems(Family::Sp, 4, {{2, -2, 1, -1}});
  e3_first.ctx.rank = 1;
  auto text = render_symbol(e3_first);
  CHECK(text.find("<   -   >") != std::string::npos);
  auto single = make_ems(Family::Sp, 1, {{4, 4, 0, -1}});
  CHECK(render_symbol(single).find("-") != std::string::npos);
  auto caps = make_ems(Family::SO_odd, 1, {{1, -1, 1, 1}});
  CHECK(render_symbol(caps).find("<") != std::string::npos);
  CHECK(render_symbol(caps).find(">") != std::string::npos);
}

TEST_CASE("symbol parse round trip on the worked family") {
  for (const auto& e : testsupport::sp8_class()) {
    auto back = parse_symbol(render_symbol(e));
    CHECK(weak_equal(back, e));
  }
  auto& so = testsupport::so31();
  for (const auto& e : {so.ppp_pi1_b, so.mmp_pi1_b, so.mpm_final, so.pmm_final})
    CHECK(weak_equal(parse_symbol(render_symbol(e)), e));
}

TEST_CASE("symbol parse rejects malformed rows") {
  std::string good = "group Sp rank 2\nrho 1\n0  1\n+  -\n";
  CHECK(weak_equal(parse_symbol(good),
                   make_ems(Family::Sp, 2, {{2, 0, 0, 1}})));
  CHECK_THROWS(parse_symbol("group Sp rank 2\nrho 1\n0  1\n+  +\n"));
  CHECK_THROWS(parse_symbol("group Sp rank 2\nrho 1\n0  1  2\n<  -\n"));
  CHECK_THROWS(parse_symbol("group Sp rank 2\nrho 1\n0  1  2\n+     -\n"));
  CHECK_THROWS(parse_symbol("group Sp rank 2\nrho 1\n0  1\n"));
}

TEST_CASE("symbol round trip on random inputs") {
  testsupport::RandomMultiSegments gen(97);
  for (int i = 0; i < 300; ++i) {
    auto e = gen.next();
    CHECK(weak_equal(parse_symbol(render_symbol(e)), e));
  }
}

TEST_CASE("mutation testing over the shipped symbols") {
  std::vector<ExtendedMultiSegment> fixtures = testsupport::sp8_class();
  auto& so = testsupport::so31();
  for (const auto& e : {so.ppp_pi1_a, so.ppp_pi1_b, so.mmp_pi1_a, so.mmp_pi1_b,
                        so.mpm_pi1, so.mpm_final, so.pmm_pi1_b, so.pmm_final})
    fixtures.push_back(e);

  for (const auto& base : fixtures) {
    // A+B corruption: push the first row below the diagonal.
    {
      auto bad = base;
      auto& r = bad.blocks[0].rows[0];
      r.B = HalfInt(-r.A.twice - 2);
      r.l = 0;
      bool found = false;
      for (const auto& v : validate(bad)) found |= v.rule == kRuleNonNegativeAB;
      CHECK(found);
    }
    // l out of range.
    {
      auto bad = base;
      auto& r = bad.blocks[0].rows[0];
      r.l = int(r.b() / 2) + 1;
      bool found = false;
      for (const auto& v : validate(bad)) found |= v.rule == kRuleLRange;
      CHECK(found);
    }
    // Sign flip on a row where eta matters.
    {
      auto bad = base;
      for (auto& r : bad.blocks[0].rows) {
        if (r.b() % 2 == 1 && 2 * r.l < r.b()) {
          r.eta = -r.eta;
          bool found = false;
          for (const auto& v : validate(bad)) found |= v.rule == kRuleSignCondition;
          CHECK(found);
          break;
        }
      }
    }
    // Order corruption: swap an adjacent pair that the admissible order pins.
    {
      auto bad = base;
      auto& rows = bad.blocks[0].rows;
      for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i].A < rows[i + 1].A && rows[i].B < rows[i + 1].B) {
          std::swap(rows[i], rows[i + 1]);
          bool found = false;
          for (const auto& v : validate(bad)) found |= v.rule == kRuleAdmissibleOrder;
          CHECK(found);
          break;
        }
      }
    }
  }
}
