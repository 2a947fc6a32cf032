#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ems/labels.hpp"

namespace ems {

// One summand rho (x) S_a (x) S_b of an A-parameter.
struct Summand {
  RhoLabel rho;
  int a = 1;
  int b = 1;

  std::int64_t dim() const { return std::int64_t(rho.dim) * a * b; }

  friend bool operator==(const Summand&, const Summand&) = default;
  friend auto operator<=>(const Summand& x, const Summand& y) {
    return std::tie(x.rho, x.a, x.b) <=> std::tie(y.rho, y.a, y.b);
  }
};

// Multiset of summands with group context; stored sorted so equality is
// structural.
struct AParameter {
  GroupContext ctx;
  std::vector<Summand> summands;

  void canonicalize();
  std::int64_t total_dim() const;

  friend bool operator==(const AParameter&, const AParameter&) = default;
  friend auto operator<=>(const AParameter& x, const AParameter& y) {
    return std::tie(x.ctx.family, x.ctx.rank, x.summands) <=>
           std::tie(y.ctx.family, y.ctx.rank, y.summands);
  }
};

AParameter make_aparameter(GroupContext ctx, std::vector<Summand> summands);

// Parity rule of good parity for one summand in the given context.
bool summand_good_parity(const GroupContext& ctx, const Summand& s);

bool is_good_parity(const AParameter& psi);
bool is_tempered(const AParameter& psi);

// Pullback along the diagonal SL2: each rho (x) S_a (x) S_b becomes
// (+)_{k=0}^{min(a,b)-1} rho (x) S_{a+b-1-2k}.  Cross-checked against the
// weight-counting oracle in the test suite.
AParameter diagonal_restriction(const AParameter& psi);

using SupportMultiset = std::vector<std::pair<RhoLabel, HalfInt>>;  // sorted

// Multiset of cuspidal twists determined by the diagonal restriction.
SupportMultiset ex_supp_of_psi(const AParameter& psi);

// Multiset count of rho (x) S_a in a tempered parameter.
int multiplicity(const AParameter& phi, const RhoLabel& rho, int a);

// Tempered parameter with component-group sign data.  eps is keyed on the
// isomorphism class (rho, a).
struct TemperedParamWithSign {
  AParameter phi;  // all b = 1
  std::map<std::pair<RhoLabel, int>, int> eps;

  friend bool operator==(const TemperedParamWithSign&, const TemperedParamWithSign&) = default;
};

// True iff the with-multiplicity product of eps values is +1.
// Throws if eps misses a class present in phi.
bool validate_sign_character(const TemperedParamWithSign& t);

std::string to_string(const Summand& s);
std::string to_string(const AParameter& psi);

// "S_a*S_b@<rho>" terms with "^m" multiplicity suffix, joined by '+'.
AParameter parse_aparameter(GroupContext ctx, const std::string& text);

}  // namespace ems
