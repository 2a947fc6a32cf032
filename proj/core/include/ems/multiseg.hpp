#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ems/aparam.hpp"
#include "ems/labels.hpp"

namespace ems {

// One extended segment ([A,B]_rho, l, eta); rho lives on the enclosing block.
// Weak-equivalence canonical form: eta is stored as +1 whenever 2l = b.
struct ExtendedSegment {
  HalfInt A;
  HalfInt B;
  int l = 0;
  int eta = +1;

  std::int64_t b() const { return (A.twice - B.twice) / 2 + 1; }
  std::int64_t a() const { return (A.twice + B.twice) / 2 + 1; }

  friend bool operator==(const ExtendedSegment&, const ExtendedSegment&) = default;
};

// Rows of one rho in admissible order (list position is the order).
struct RhoBlock {
  RhoLabel rho;
  std::vector<ExtendedSegment> rows;

  friend bool operator==(const RhoBlock&, const RhoBlock&) = default;
};

struct ExtendedMultiSegment {
  GroupContext ctx;
  std::vector<RhoBlock> blocks;  // sorted by rho
  bool strict = true;            // relaxed mode admits A+B < 0 phantom rows

  friend bool operator==(const ExtendedMultiSegment&, const ExtendedMultiSegment&) = default;
};

struct Violation {
  std::string rule;  // one of the rule ids below
  RhoLabel rho;
  int row = -1;  // block-local index, -1 for global rules
  std::string detail;
};

// Rule ids reported by validate().
inline constexpr const char* kRuleSegmentForm = "segment-form";
inline constexpr const char* kRuleLRange = "l-range";
inline constexpr const char* kRuleWeakCanonical = "weak-canonical";
inline constexpr const char* kRuleAdmissibleOrder = "admissible-order";
inline constexpr const char* kRuleNonNegativeAB = "A+B>=0";
inline constexpr const char* kRuleGoodParity = "good-parity";
inline constexpr const char* kRuleDualDim = "dual-dim";
inline constexpr const char* kRuleSignCondition = "sign-condition";
inline constexpr const char* kRuleBPlusL = "B+l>=-1/2";

// Sorts blocks, canonicalizes eta on rows with 2l = b, drops empty blocks.
// Does not reject invalid data; validate() reports.
ExtendedMultiSegment make_multisegment(GroupContext ctx, std::vector<RhoBlock> blocks,
                                       bool strict = true);

ExtendedMultiSegment weak_normalize(ExtendedMultiSegment e);

// Empty list iff all invariants hold; A+B >= 0 is enforced only in strict
// mode.  Never throws.
std::vector<Violation> validate(const ExtendedMultiSegment& e);

// Sign factor (-1)^{floor(b/2)+l} eta^b of one row.
int sign_factor(const ExtendedSegment& row);

// psi_E; rows with a <= 0 contribute dimension zero and are dropped.
AParameter psi_of(const ExtendedMultiSegment& e);

struct NecessaryNonvanishingReport {
  bool passes = true;
  std::vector<Violation> violations;
  // Rows with B+l = -1/2, where eta is forced (value not checked here).
  std::vector<std::pair<RhoLabel, int>> forced_eta;
};

NecessaryNonvanishingReport necessary_nonvanishing(const ExtendedMultiSegment& e);

// Every row [A,B] becomes [A+z, B+z]; ctx is left untouched (shifted objects
// are scratch values, not parameters for the same group).
ExtendedMultiSegment shift(const ExtendedMultiSegment& e, HalfInt z);

// True iff every row has B >= 0.
bool is_nonnegative(const ExtendedMultiSegment& e);

enum class PhantomKind { integral, half_integral };

// ([l-1,-l], l, +1) for integral (l > 0); ([l-1/2,-l-1/2], l, +1) for
// half-integral (l >= 0).  Both have A+B = -1 and zero dual dimension.
ExtendedSegment phantom_row(PhantomKind kind, int l);

// Phantom-shape test on a stored row; yields the (kind, l) when it matches
// ([l-1,-l],l,+1) or ([l-1/2,-l-1/2],l,+1) exactly.
std::optional<std::pair<PhantomKind, int>> phantom_shape(const ExtendedSegment& row);

const RhoBlock* find_block(const ExtendedMultiSegment& e, const RhoLabel& rho);
RhoBlock* find_block(ExtendedMultiSegment& e, const RhoLabel& rho);

// Canonical one-line encoding, e.g. "Sp 4 @1{(0,0,0,-)(1,1,0,+)(2,2,0,-)}".
// Used as the dedup key of class enumeration and as the eval-fixture key.
std::string to_oneline(const ExtendedMultiSegment& e);
ExtendedMultiSegment parse_oneline(const std::string& text);

// Weak-equivalence comparison (both sides are canonicalized first).
bool weak_equal(const ExtendedMultiSegment& a, const ExtendedMultiSegment& b);

}  // namespace ems
