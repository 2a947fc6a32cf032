#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ems/langlands.hpp"
#include "ems/multiseg.hpp"
#include "ems/oracles.hpp"
#include "ems/rewrite.hpp"

namespace ems {

// Step-1+ lifting: replaces ([x+j-2,x-1], l, eta) with ([x+j-1,x], l, eta)
// exactly k_{j-1}-k_j times per 1 <= j <= t (k_t = 0), taking the last
// copies.  The context grows to match the new dual dimension.  Throws
// std::invalid_argument naming the failing bullet.
ExtendedMultiSegment lift_plus(const ExtendedMultiSegment& eplus, const RhoLabel& rho,
                               HalfInt x, const std::vector<int>& counts);

// Step-1- lifting: replaces ([-x+j-2,x+1], l, eta) with ([-x+j-1,x], l+1,
// eta); for x = -1/2 the j = 1 round instead prepends ([1/2,-1/2],1,+1)
// exactly k_0-k_1 times at the minimum of the rho-order.
ExtendedMultiSegment lift_minus(const ExtendedMultiSegment& eminus, const RhoLabel& rho,
                                HalfInt x, const std::vector<int>& counts);

// Bullet test used by the decision procedure's witness search; depends only
// on the segment multiset of the rho-block.
bool step1_qualifies(const ExtendedMultiSegment& e, const RhoLabel& rho, int direction,
                     HalfInt x, const std::vector<int>& counts);

struct ArthurVerdict {
  enum class Status { arthur_type, not_arthur_type, unknown } status = Status::unknown;
  std::vector<std::pair<ExtendedMultiSegment, AParameter>> witnesses;
  std::vector<std::string> trace;
  std::vector<std::string> gaps;
};

std::string to_string(ArthurVerdict::Status s);

// The decision procedure: recursive derivative reduction via the oracle,
// class search for lifting witnesses, and the closed-form candidate with a
// packet-membership test at the bottom.  All incompleteness lands in the
// unknown verdict, never in a guess.
ArthurVerdict decide_arthur(const LanglandsData& l, const KernelTable& kernel,
                            const DerivativeOracle& derivatives, const EvalOracle& eval,
                            const Bounds& bounds = {});

// All admissible (order, l, eta) decorations of psi's summand segments that
// pass validation and the necessary non-vanishing conditions.
std::vector<ExtendedMultiSegment> candidate_multisegments(const AParameter& psi,
                                                          const Bounds& bounds,
                                                          bool* overflow = nullptr);

struct PsiList {
  std::vector<AParameter> psis;  // sorted, deduplicated
  bool exhausted = false;
};

// { psi_E' : E' in the strong-equivalence class of E }.
PsiList list_all_psi(const ExtendedMultiSegment& e, const KernelTable& kernel,
                     const Bounds& bounds = {});

}  // namespace ems
