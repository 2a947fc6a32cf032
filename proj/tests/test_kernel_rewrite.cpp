#include "doctest.h"

#include "support.hpp"

using namespace ems;
using testsupport::kernel;
using testsupport::make_ems;

namespace {

RowPat pat(std::int64_t A2, std::int64_t B2, int l, int eta) { return {A2, B2, l, eta}; }

}  // namespace

TEST_CASE("kernel table loads and answers deterministically") {
  const auto& k = kernel();
  CHECK(k.entry_count() > 30);
  auto hit = k.lookup_ui(pat(0, 0, 0, -1), pat(2, 2, 0, 1));
  REQUIRE(hit.answer == KernelTable::Answer::covered);
  CHECK(hit.out.drop);
  CHECK(hit.out.u == pat(2, 0, 0, -1));
  auto neg = k.lookup_ui(pat(1, 1, 0, -1), pat(3, 3, 0, -1));
  CHECK(neg.answer == KernelTable::Answer::inapplicable);
  auto gap = k.lookup_ui(pat(0, 0, 0, -1), pat(4, 2, 0, -1));
  CHECK(gap.answer == KernelTable::Answer::gap);
  // Same query, same answer.
  auto hit2 = k.lookup_ui(pat(0, 0, 0, -1), pat(2, 2, 0, 1));
  CHECK(hit2.answer == hit.answer);
  CHECK(hit2.out == hit.out);
}

TEST_CASE("kernel entries preserve sign and dimension") {
  for (const auto& [key, out] : kernel().ui_entries()) {
    if (!out) continue;
    const auto& [i, j] = key;
    std::int64_t dim_in = i.a() * i.b() + j.a() * j.b();
    std::int64_t dim_out = out->u.a() * out->u.b() + (out->drop ? 0 : out->v.a() * out->v.b());
    CHECK(dim_in == dim_out);
    int sign_in = sign_factor(i) * sign_factor(j);
    int sign_out = sign_factor(out->u) * (out->drop ? 1 : sign_factor(out->v));
    CHECK(sign_in == sign_out);
  }
}

TEST_CASE("kernel loader rejects bad entries") {
  CHECK_THROWS(KernelTable::parse("UI [0,0] 0 - | [1,1] 0 + -> [2,1] 0 - | -"));
  CHECK_THROWS(KernelTable::parse("UI [1,1] 0 - | [0,0] 0 + -> [1,0] 0 - | -"));
  CHECK_THROWS(KernelTable::parse("UI [0,0] 0 - | [1,1] 0 + -> [1,0] 0 + | -"));
  CHECK_THROWS(KernelTable::parse("C [0,0] 0 - | [1,1] 0 + -> [1,1] 0 + | [0,0] 0 -"));
  CHECK_THROWS(KernelTable::parse("XX [0,0] 0 - | [1,1] 0 + -> none"));
  CHECK_NOTHROW(KernelTable::parse("# only comments\n\n"));
}

TEST_CASE("phantom add and remove") {
  auto cls = testsupport::sp8_class();
  auto relaxed = op_P_add(cls[1], trivial_rho(), PhantomKind::integral, 1);
  CHECK(!relaxed.strict);
  CHECK(relaxed.blocks[0].rows[0] == phantom_row(PhantomKind::integral, 1));
  CHECK(psi_of(relaxed) == psi_of(cls[1]));
  CHECK(op_P_remove(relaxed, trivial_rho()) == cls[1]);
  CHECK_THROWS_AS(op_P_remove(cls[1], trivial_rho()), std::invalid_argument);
  CHECK_THROWS_AS(op_P_add(cls[1], trivial_rho(), PhantomKind::integral, 0),
                  std::invalid_argument);
}

TEST_CASE("union-intersection on the worked transitions") {
  auto cls = testsupport::sp8_class();
  // e1 -> e2 and the empty intersection drop.
  auto res = op_UI(cls[0], trivial_rho(), 0, kernel());
  REQUIRE(res.status == OpResult::Status::ok);
  CHECK(res.value == cls[1]);
  // phantom absorption: e2 + P -> e3.
  auto relaxed = op_P_add(cls[1], trivial_rho(), PhantomKind::integral, 1);
  auto res2 = op_UI(relaxed, trivial_rho(), 0, kernel());
  REQUIRE(res2.status == OpResult::Status::ok);
  CHECK(res2.value == cls[2]);
  CHECK(res2.value.strict);
  // e5 + P(2) -> e8.
  auto relaxed2 = op_P_add(cls[4], trivial_rho(), PhantomKind::integral, 2);
  auto res3 = op_UI(relaxed2, trivial_rho(), 0, kernel());
  REQUIRE(res3.status == OpResult::Status::ok);
  CHECK(res3.value == cls[7]);
  // Geometric precondition violations throw.
  CHECK_THROWS_AS(op_UI(cls[2], trivial_rho(), 0, kernel()), std::invalid_argument);
}

TEST_CASE("union-intersection inverse") {
  auto cls = testsupport::sp8_class();
  // e8 second row splits back to e7.
  auto res = op_UI_inverse(cls[7], trivial_rho(), 1, false, 0, kernel());
  REQUIRE(res.status == OpResult::Status::ok);
  CHECK(res.value == cls[6]);
  // Round trip: forward again.
  auto fwd = op_UI(res.value, trivial_rho(), 1, kernel());
  REQUIRE(fwd.status == OpResult::Status::ok);
  CHECK(fwd.value == cls[7]);
  // Split outside the support throws.
  CHECK_THROWS_AS(op_UI_inverse(cls[7], trivial_rho(), 1, false, 6, kernel()),
                  std::invalid_argument);
}

TEST_CASE("order swap is an involution") {
  auto& so = testsupport::so31();
  // pi2 forms of the (-,-,+) pattern swap rows 2,3.
  auto res = op_C(so.mmp_pi2_a, trivial_rho(), 2, kernel());
  REQUIRE(res.status == OpResult::Status::ok);
  CHECK(res.value == so.mmp_pi2_b);
  auto back = op_C(res.value, trivial_rho(), 2, kernel());
  REQUIRE(back.status == OpResult::Status::ok);
  CHECK(back.value == so.mmp_pi2_a);
  // Swapping equal rows is the identity.
  auto eq = make_ems(Family::SO_odd, 2, {{1, 1, 0, -1}, {1, 1, 0, -1}});
  auto idres = op_C(eq, trivial_rho(), 0, kernel());
  REQUIRE(idres.status == OpResult::Status::ok);
  CHECK(idres.value == eq);
  // Non-nested rows are a precondition error.
  auto e1 = testsupport::sp8_class()[0];
  CHECK_THROWS_AS(op_C(e1, trivial_rho(), 0, kernel()), std::invalid_argument);
}

TEST_CASE("e8 to e9 replays through phantom, order swap and union") {
  auto cls = testsupport::sp8_class();
  std::vector<RewriteStep> steps{
      {OpKind::Padd, trivial_rho(), 0, false, 0, PhantomKind::integral, 1},
      {OpKind::C, trivial_rho(), 0},
      {OpKind::UI, trivial_rho(), 1},
  };
  CHECK(apply_steps(cls[7], steps, kernel()) == cls[8]);
}

TEST_CASE("neighbors of the worked members") {
  auto cls = testsupport::sp8_class();
  auto keys = [&](const ExtendedMultiSegment& e) {
    std::set<std::string> out;
    for (const auto& item : neighbors(e, kernel()).items) out.insert(to_oneline(item.result));
    return out;
  };
  auto n1 = keys(cls[0]);
  CHECK(n1.count(to_oneline(cls[1])));
  CHECK(n1.count(to_oneline(cls[3])));
  auto n5 = keys(cls[4]);
  CHECK(n5.count(to_oneline(cls[1])));
  CHECK(n5.count(to_oneline(cls[3])));
  CHECK(n5.count(to_oneline(cls[5])));
  CHECK(n5.count(to_oneline(cls[7])));
  // The rank-0 edge case: a single tempered row with nothing applicable.
  auto tiny = make_ems(Family::Sp, 0, {{0, 0, 0, 1}});
  CHECK(neighbors(tiny, kernel()).items.empty());
}

TEST_CASE("neighbor steps replay exactly") {
  auto cls = testsupport::sp8_class();
  for (const auto& e : cls) {
    for (const auto& item : neighbors(e, kernel()).items)
      CHECK(apply_steps(e, item.steps, kernel()) == item.result);
  }
}

TEST_CASE("edges preserve the class invariants") {
  testsupport::RandomMultiSegments gen(1234);
  int edges_seen = 0;
  for (int i = 0; i < 250; ++i) {
    auto e = gen.next();
    auto psi = psi_of(e);
    auto supp = ex_supp_of_psi(psi);
    for (const auto& item : neighbors(e, kernel()).items) {
      ++edges_seen;
      CHECK(validate(item.result).empty());
      auto psi2 = psi_of(item.result);
      CHECK(psi2.total_dim() == psi.total_dim());
      CHECK(ex_supp_of_psi(psi2) == supp);
    }
  }
  CHECK(edges_seen > 0);
}

TEST_CASE("class enumeration is independent of the seed member") {
  auto cls = testsupport::sp8_class();
  auto from_e1 = enumerate_class(cls[0], kernel());
  auto from_e9 = enumerate_class(cls[8], kernel());
  REQUIRE(from_e1.exhausted);
  REQUIRE(from_e9.exhausted);
  std::vector<std::string> a, b;
  for (const auto& m : from_e1.members) a.push_back(to_oneline(m));
  for (const auto& m : from_e9.members) b.push_back(to_oneline(m));
  CHECK(a == b);
}

TEST_CASE("strong equivalence verdicts") {
  auto cls = testsupport::sp8_class();
  auto yes = strongly_equivalent(cls[0], cls[8], kernel());
  REQUIRE(yes.verdict == EquivalenceResult::Verdict::yes);
  CHECK(apply_steps(weak_normalize(cls[0]), yes.path, kernel()) == weak_normalize(cls[8]));
  auto refl = strongly_equivalent(cls[0], cls[0], kernel());
  CHECK(refl.verdict == EquivalenceResult::Verdict::yes);
  CHECK(refl.path.empty());
  // Different diagonal restriction: definite no without any search.
  auto singleton = make_ems(Family::Sp, 4, {{4, 0, 1, 1}});
  auto steinberg = make_ems(Family::Sp, 4, {{8, 8, 0, 1}});
  REQUIRE(validate(singleton).empty());
  REQUIRE(validate(steinberg).empty());
  CHECK(ex_supp_of_psi(psi_of(singleton)) != ex_supp_of_psi(psi_of(steinberg)));
  CHECK(strongly_equivalent(singleton, steinberg, kernel()).verdict ==
        EquivalenceResult::Verdict::no);
  // Same diagonal restriction but one exhausted class misses the other input.
  auto reordered = make_ems(Family::Sp, 4, {{2, 2, 0, -1}, {0, 0, 0, 1}, {4, 4, 0, -1}});
  REQUIRE(validate(reordered).empty());
  CHECK(ex_supp_of_psi(psi_of(reordered)) == ex_supp_of_psi(psi_of(cls[0])));
  CHECK(strongly_equivalent(reordered, cls[0], kernel()).verdict ==
        EquivalenceResult::Verdict::no);
  // Same diagonal restriction, both classes exhausted and disjoint.
  auto& so = testsupport::so31();
  auto w2 = make_ems(Family::SO_odd, 11,
                     {{1, 1, 0, -1}, {3, 3, 0, -1}, {5, 5, 0, -1}, {5, 3, 0, -1}});
  REQUIRE(validate(w2).empty());
  CHECK(ex_supp_of_psi(psi_of(w2)) == ex_supp_of_psi(psi_of(so.ppp_pi1_a)));
  CHECK(strongly_equivalent(so.ppp_pi1_a, w2, kernel()).verdict ==
        EquivalenceResult::Verdict::no);
}
