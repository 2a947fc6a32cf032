#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ems/aparam.hpp"

namespace ems {

// One Steinberg factor Delta_rho[x,y], x >= y, x - y integral.
struct Delta {
  RhoLabel rho;
  HalfInt x;
  HalfInt y;

  friend bool operator==(const Delta&, const Delta&) = default;
};

// Langlands data (Delta factors; tempered part (phi, eps)).
struct LanglandsData {
  GroupContext ctx;
  std::vector<Delta> deltas;  // sorted: x1+y1 <= ... <= xr+yr < 0
  TemperedParamWithSign tempered;

  friend bool operator==(const LanglandsData&, const LanglandsData&) = default;
};

// Structural issues (sorting, segment form, sign character, dual dimension).
std::vector<std::string> validate_langlands(const LanglandsData& l);

// Good-parity requirements on top of the structural ones.
std::vector<std::string> good_parity_issues(const LanglandsData& l);

// Canonical form: deltas sorted by (x+y, x, rho), eps as stored.
LanglandsData canonical(const LanglandsData& l);
std::string to_text(const LanglandsData& l);  // one line, includes the group header

// Each delta contributes its twists and their duals; each tempered summand
// contributes its symmetric ladder.
SupportMultiset ex_supp_of_langlands(const LanglandsData& l);

// k_{rho,z} for z >= 0: #{deltas with x_i = z or y_i = -z} + m_phi(rho x S_{2z+1}).
std::map<std::pair<RhoLabel, HalfInt>, int> k_profile(const LanglandsData& l);

// Verifies M_{rho,x} = sum_{z >= x, z = x mod 1} k_{rho,z} against the
// extended cuspidal support, for all x >= 0.
bool check_M_consistency(const LanglandsData& l);

struct Step2Result {
  bool not_arthur = false;
  RhoLabel violation_rho;  // witness when not_arthur
  HalfInt violation_z;
  AParameter psi;
};

// The closed-form candidate parameter.  Requires every delta to satisfy
// x_i >= 0 > y_i (the shape the certified derivative condition forces);
// throws otherwise.
Step2Result step2_candidate(const LanglandsData& l);

// Parses "group <family> rank <n>" followed by
// "L( D[x,y]@rho, ... ; (x)^+ (y)^- ... @rho ... )".
LanglandsData parse_langlands(const std::string& text);

}  // namespace ems
