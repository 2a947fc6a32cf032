#pragma once

#include <array>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ems/arthur.hpp"
#include "ems/dsl.hpp"
#include "ems/kernel.hpp"
#include "ems/langlands.hpp"
#include "ems/multiseg.hpp"
#include "ems/oracles.hpp"
#include "ems/rewrite.hpp"

#ifndef EMS_FIXTURE_DIR
#define EMS_FIXTURE_DIR "fixtures"
#endif

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(EMS_FIXTURE_DIR) + "/" + name;
}

inline const ems::KernelTable& kernel() {
  static ems::KernelTable table = ems::KernelTable::load_file(fixture_path("kernel.tbl"));
  return table;
}

inline const ems::FixtureDerivativeOracle& derivatives() {
  static auto oracle =
      ems::FixtureDerivativeOracle::load_file(fixture_path("derivatives.tbl"));
  return oracle;
}

inline const ems::FixtureEvalOracle& eval_oracle() {
  static auto oracle = ems::FixtureEvalOracle::load_file(fixture_path("eval.tbl"));
  return oracle;
}

// Row literal: A and B as doubled integers.
struct Row {
  std::int64_t A2, B2;
  int l, eta;
};

inline ems::ExtendedMultiSegment make_ems(ems::Family family, int rank,
                                          const std::vector<Row>& rows,
                                          const ems::RhoLabel& rho = ems::trivial_rho()) {
  ems::RhoBlock blk{rho, {}};
  for (const auto& r : rows)
    blk.rows.push_back({ems::HalfInt(r.A2), ems::HalfInt(r.B2), r.l, r.eta});
  return ems::make_multisegment({family, rank}, {blk});
}

// The nine members of the rank-4 symplectic class (integral grid).
inline std::vector<ems::ExtendedMultiSegment> sp8_class() {
  using F = ems::Family;
  return {
      make_ems(F::Sp, 4, {{0, 0, 0, -1}, {2, 2, 0, 1}, {4, 4, 0, -1}}),            // e1
      make_ems(F::Sp, 4, {{2, 0, 0, -1}, {4, 4, 0, -1}}),                          // e2
      make_ems(F::Sp, 4, {{2, -2, 1, -1}, {0, 0, 0, 1}, {4, 4, 0, -1}}),           // e3
      make_ems(F::Sp, 4, {{0, 0, 0, -1}, {4, 2, 0, 1}}),                           // e4
      make_ems(F::Sp, 4, {{4, 0, 0, -1}}),                                         // e5
      make_ems(F::Sp, 4, {{4, -2, 1, -1}, {0, 0, 0, -1}}),                         // e6
      make_ems(F::Sp, 4, {{4, -4, 2, -1}, {0, 0, 0, 1}, {2, 2, 0, -1}}),           // e7
      make_ems(F::Sp, 4, {{4, -4, 2, -1}, {2, 0, 0, 1}}),                          // e8
      make_ems(F::Sp, 4, {{4, -4, 2, -1}, {2, -2, 1, 1}, {0, 0, 0, -1}}),          // e9
  };
}

inline ems::AParameter sp8_psi(const std::string& text) {
  return ems::parse_aparameter({ems::Family::Sp, 4}, text);
}

// Printed symbols of the rank-15 odd orthogonal walkthroughs
// (half-integral grid; values are doubled).
struct So31 {
  using F = ems::Family;
  // sign pattern (+,+,+)
  ems::ExtendedMultiSegment ppp_pi2 = make_ems(F::SO_odd, 7,
      {{1, 1, 0, 1}, {3, 1, 0, 1}, {3, 1, 0, -1}});
  ems::ExtendedMultiSegment ppp_pi1_a = make_ems(F::SO_odd, 11,
      {{1, 1, 0, 1}, {5, 3, 0, 1}, {5, 3, 0, -1}});
  ems::ExtendedMultiSegment ppp_pi1_b = make_ems(F::SO_odd, 11,
      {{1, 1, 0, 1}, {5, 3, 0, 1}, {3, 3, 0, -1}, {5, 5, 0, 1}});
  // sign pattern (-,-,+)
  ems::ExtendedMultiSegment mmp_pi3 = make_ems(F::SO_odd, 6,
      {{1, 1, 0, -1}, {1, 1, 0, -1}, {1, 1, 0, -1}, {3, 1, 0, -1}});
  ems::ExtendedMultiSegment mmp_pi2_a = make_ems(F::SO_odd, 10,
      {{1, 1, 0, -1}, {3, 3, 0, -1}, {3, 3, 0, -1}, {5, 3, 0, -1}});
  ems::ExtendedMultiSegment mmp_pi2_b = make_ems(F::SO_odd, 10,
      {{1, 1, 0, -1}, {3, 3, 0, -1}, {5, 3, 1, 1}, {3, 3, 0, 1}});
  ems::ExtendedMultiSegment mmp_pi1_a = make_ems(F::SO_odd, 11,
      {{1, 1, 0, -1}, {3, 3, 0, -1}, {5, 3, 1, 1}, {5, 5, 0, 1}});
  ems::ExtendedMultiSegment mmp_pi1_b = make_ems(F::SO_odd, 11,
      {{1, -1, 0, 1}, {3, 3, 0, -1}, {5, 3, 1, 1}, {5, 5, 0, 1}});
  // sign pattern (-,+,-)
  ems::ExtendedMultiSegment mpm_pi3_a = make_ems(F::SO_odd, 8,
      {{1, 1, 0, -1}, {1, 1, 0, -1}, {5, 1, 0, -1}});
  ems::ExtendedMultiSegment mpm_pi3_b = make_ems(F::SO_odd, 8,
      {{5, 1, 0, -1}, {1, 1, 0, -1}, {1, 1, 0, -1}});
  ems::ExtendedMultiSegment mpm_pi2 = make_ems(F::SO_odd, 10,
      {{5, 1, 0, -1}, {3, 3, 0, -1}, {3, 3, 0, -1}});
  ems::ExtendedMultiSegment mpm_pi1 = make_ems(F::SO_odd, 11,
      {{5, 1, 0, -1}, {3, 3, 0, -1}, {5, 5, 0, -1}});
  ems::ExtendedMultiSegment mpm_pi1_split = make_ems(F::SO_odd, 11,
      {{3, 1, 0, -1}, {5, 3, 1, 1}, {5, 5, 0, -1}});
  ems::ExtendedMultiSegment mpm_final = make_ems(F::SO_odd, 15,
      {{1, -1, 1, 1}, {5, -1, 1, -1}, {5, 3, 1, 1}, {5, 5, 0, -1}});
  // sign pattern (+,-,-)
  ems::ExtendedMultiSegment pmm_pi2_a = make_ems(F::SO_odd, 9,
      {{3, 1, 0, 1}, {5, 1, 1, -1}});
  ems::ExtendedMultiSegment pmm_pi2_b = make_ems(F::SO_odd, 9,
      {{5, 1, 0, 1}, {3, 1, 0, 1}});
  ems::ExtendedMultiSegment pmm_pi1_a = make_ems(F::SO_odd, 11,
      {{5, 1, 0, 1}, {5, 3, 0, 1}});
  ems::ExtendedMultiSegment pmm_pi1_b = make_ems(F::SO_odd, 11,
      {{3, 1, 0, 1}, {5, 3, 1, 1}, {5, 5, 0, -1}});
  ems::ExtendedMultiSegment pmm_final = make_ems(F::SO_odd, 15,
      {{1, -1, 1, 1}, {5, -1, 1, 1}, {5, 3, 1, 1}, {5, 5, 0, -1}});
};

inline const So31& so31() {
  static So31 data;
  return data;
}

// Independent weight-counting oracle for the tensor decomposition of
// S_a (x) S_b into irreducibles.
inline std::multiset<int> tensor_components_oracle(int a, int b) {
  std::map<int, int> weight_mult;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) weight_mult[(a - 1 - 2 * i) + (b - 1 - 2 * j)]++;
  std::multiset<int> comps;
  while (!weight_mult.empty()) {
    int top = weight_mult.rbegin()->first;
    comps.insert(top + 1);
    for (int w = -top; w <= top; w += 2) {
      auto it = weight_mult.find(w);
      if (--it->second == 0) weight_mult.erase(it);
    }
  }
  return comps;
}

// Random strict-valid extended multi-segments with dual dimension <= 20.
class RandomMultiSegments {
 public:
  explicit RandomMultiSegments(std::uint64_t seed) : rng_(seed) {}

  ems::ExtendedMultiSegment next() {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      auto e = try_one();
      if (e && ems::validate(*e).empty()) return *e;
    }
    throw std::logic_error("random generator failed to produce a valid multi-segment");
  }

 private:
  std::optional<ems::ExtendedMultiSegment> try_one() {
    ems::Family family = coin() ? ems::Family::Sp : ems::Family::SO_odd;
    ems::RhoLabel rho = ems::trivial_rho();
    if (pick(0, 5) == 0) rho = ems::RhoLabel{"sig", 2, ems::Duality::symplectic};
    // Good parity fixes the grid parity: a+b = 2A+2.
    bool a_plus_b_even = (family == ems::Family::Sp) ==
                         (rho.duality == ems::Duality::orthogonal);
    std::int64_t parity = a_plus_b_even ? 0 : 1;  // A2 mod 2
    int nrows = pick(1, 4);
    std::vector<ems::ExtendedSegment> rows;
    for (int i = 0; i < nrows; ++i) {
      std::int64_t B2 = 2 * pick(-2, 3) + parity;
      std::int64_t b = pick(1, 4);
      std::int64_t A2 = B2 + 2 * (b - 1);
      if (A2 + B2 < 0) return std::nullopt;
      int l = pick(0, int(b / 2));
      int eta = coin() ? 1 : -1;
      rows.push_back({ems::HalfInt(A2), ems::HalfInt(B2), l, eta});
    }
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
      return std::tie(x.B.twice, x.A.twice) < std::tie(y.B.twice, y.A.twice);
    });
    auto e = ems::make_multisegment({family, 0}, {{rho, rows}});
    // Fix the sign condition by flipping one eta that matters.
    int product = 1;
    for (const auto& r : e.blocks[0].rows) product *= ems::sign_factor(r);
    if (product != 1) {
      bool fixed = false;
      for (auto& r : e.blocks[0].rows) {
        if (r.b() % 2 == 1 && 2 * r.l < r.b()) {
          r.eta = -r.eta;
          fixed = true;
          break;
        }
      }
      if (!fixed) return std::nullopt;
    }
    std::int64_t dim = psi_of(e).total_dim();
    if (dim > 20) return std::nullopt;
    if (family == ems::Family::Sp && (dim % 2 == 0 || dim < 1)) return std::nullopt;
    if (family == ems::Family::SO_odd && dim % 2 != 0) return std::nullopt;
    e.ctx.rank = int(family == ems::Family::Sp ? (dim - 1) / 2 : dim / 2);
    return e;
  }

  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937_64 rng_;
};

// Random Langlands data in the certified step-2 shape: every delta has
// x >= 0 > y.
class RandomStep2Langlands {
 public:
  explicit RandomStep2Langlands(std::uint64_t seed) : rng_(seed) {}

  ems::LanglandsData next() {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      auto l = try_one();
      if (l && ems::validate_langlands(*l).empty()) return *l;
    }
    throw std::logic_error("random generator failed to produce valid Langlands data");
  }

 private:
  std::optional<ems::LanglandsData> try_one() {
    ems::LanglandsData l;
    std::int64_t parity = coin() ? 0 : 1;
    int ndeltas = pick(0, 3);
    for (int i = 0; i < ndeltas; ++i) {
      std::int64_t x2 = 2 * pick(0, 3) + parity;
      std::int64_t y2 = -2 * pick(1, 4) - parity;
      if (x2 + y2 >= 0) return std::nullopt;
      l.deltas.push_back({ems::trivial_rho(), ems::HalfInt(x2), ems::HalfInt(y2)});
    }
    int nphi = pick(ndeltas == 0 ? 1 : 0, 3);
    std::vector<ems::Summand> summands;
    int product = 1;
    for (int i = 0; i < nphi; ++i) {
      int a = int(2 * pick(0, 3) + parity + 1);
      int sign;
      if (auto it = l.tempered.eps.find({ems::trivial_rho(), a});
          it != l.tempered.eps.end()) {
        sign = it->second;
      } else {
        sign = coin() ? 1 : -1;
        l.tempered.eps[{ems::trivial_rho(), a}] = sign;
      }
      summands.push_back({ems::trivial_rho(), a, 1});
      product *= sign;
    }
    if (product != 1) return std::nullopt;
    std::int64_t dim = 0;
    for (const auto& d : l.deltas) dim += 2 * ((d.x.twice - d.y.twice) / 2 + 1);
    for (const auto& s : summands) dim += s.a;
    if (dim == 0 || dim > 40) return std::nullopt;
    l.ctx = dim % 2 == 0 ? ems::GroupContext{ems::Family::SO_odd, int(dim / 2)}
                         : ems::GroupContext{ems::Family::Sp, int((dim - 1) / 2)};
    l.tempered.phi = ems::make_aparameter(l.ctx, std::move(summands));
    return ems::canonical(l);
  }

  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937_64 rng_;
};

}  // namespace testsupport
