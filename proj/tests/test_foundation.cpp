#include "doctest.h"

#include "support.hpp"

using namespace ems;

namespace {

// Tiny exact-rational oracle for checking HalfInt arithmetic.
struct Rat {
  long long num, den;
  Rat reduce() const {
    long long g = std::gcd(std::abs(num), den);
    return {num / g, den / g};
  }
  friend Rat operator+(Rat a, Rat b) {
    return Rat{a.num * b.den + b.num * a.den, a.den * b.den}.reduce();
  }
  friend Rat operator-(Rat a) { return {-a.num, a.den}; }
  friend bool operator==(Rat a, Rat b) { return a.num * b.den == b.num * a.den; }
  friend bool operator<(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }
};

Rat to_rat(HalfInt h) { return Rat{h.twice, 2}.reduce(); }

}  // namespace

TEST_CASE("half-integer literals") {
  CHECK(HalfInt::whole(2).twice == 4);
  CHECK(HalfInt::half(5).twice == 5);
  CHECK(!HalfInt::half(5).is_integer());
  CHECK_THROWS_AS(HalfInt::half(4), std::invalid_argument);
  CHECK(parse_halfint("3") == HalfInt::whole(3));
  CHECK(parse_halfint("-5/2") == HalfInt::half(-5));
  CHECK_THROWS(parse_halfint("5/3"));
  CHECK_THROWS(parse_halfint("x"));
  CHECK(to_string(HalfInt(5)) == "5/2");
  CHECK(to_string(HalfInt(-4)) == "-2");
}

TEST_CASE("half-integer arithmetic matches the rational oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> d(-50, 50);
  for (int i = 0; i < 2000; ++i) {
    HalfInt a(d(rng)), b(d(rng));
    CHECK(to_rat(a + b) == (to_rat(a) + to_rat(b)));
    CHECK(to_rat(-a) == -to_rat(a));
    CHECK((a < b) == (to_rat(a) < to_rat(b)));
    CHECK(a.is_integer() == (to_rat(a).den == 1));
  }
}

TEST_CASE("segment length") {
  Segment single{trivial_rho(), HalfInt::whole(2), HalfInt::whole(2)};
  CHECK(seg_length(single) == 1);
  Segment five{trivial_rho(), HalfInt::half(3), HalfInt::half(-5)};
  CHECK(seg_length(five) == 5);
  Segment empty{trivial_rho(), HalfInt::half(-1), HalfInt::half(1)};
  CHECK(seg_length(empty) == 0);
  CHECK_THROWS(seg_length(Segment{trivial_rho(), HalfInt::whole(0), HalfInt::half(1)}));
  CHECK_THROWS(seg_length(Segment{trivial_rho(), HalfInt::whole(0), HalfInt::whole(2)}));
}

TEST_CASE("segment length is non-negative and zero only for the empty form") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> d(-6, 6);
  for (int i = 0; i < 500; ++i) {
    long long b2 = 2 * d(rng);
    long long len = std::abs(d(rng));
    Segment s{trivial_rho(), HalfInt(b2 + 2 * (len - 1)), HalfInt(b2)};
    CHECK(seg_length(s) == len);
    CHECK(seg_length(s) >= 0);
    CHECK((seg_length(s) == 0) == (s.A == s.B - HalfInt::whole(1)));
  }
}

TEST_CASE("rho literals") {
  CHECK(parse_rho("1") == trivial_rho());
  RhoLabel r{"st3", 2, Duality::symplectic};
  CHECK(parse_rho(to_string(r)) == r);
  CHECK(to_string(r) == "rho:st3:2:S");
  CHECK_THROWS(parse_rho("rho:x:0:O"));
  CHECK_THROWS(parse_rho("rho:x:1:Q"));
  RhoLabel same_dim{"other", 2, Duality::symplectic};
  CHECK(r != same_dim);
}

TEST_CASE("group context dual data") {
  GroupContext sp{Family::Sp, 4};
  CHECK(sp.dual_dim() == 9);
  CHECK(sp.dual_type() == Duality::orthogonal);
  GroupContext so{Family::SO_odd, 15};
  CHECK(so.dual_dim() == 30);
  CHECK(so.dual_type() == Duality::symplectic);
  CHECK(GroupContext{Family::SO_odd, 0}.dual_dim() == 0);
}
