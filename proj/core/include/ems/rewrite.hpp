#pragma once

#include <string>
#include <vector>

#include "ems/kernel.hpp"
#include "ems/multiseg.hpp"

namespace ems {

struct Bounds {
  // Maximum phantom size for (P)-composites; -1 derives floor(max A)+1 from
  // the host block, which always covers the geometric window.
  int phantom_l_max = -1;
  std::size_t max_members = 20000;
  std::size_t max_step2_candidates = 100000;
};

enum class OpKind { C, UI, UIinv, Padd, Premove };

std::string to_string(OpKind k);

// One replayable rewrite step.  Positions are block-local row indexes into
// the state the step is applied to.
struct RewriteStep {
  OpKind op = OpKind::UI;
  RhoLabel rho;
  int pos = 0;
  bool pair = false;          // UIinv: pair split instead of single split
  std::int64_t split_A2 = 0;  // UIinv single split: doubled A of the first input
  PhantomKind kind = PhantomKind::integral;
  int l = 0;  // P operations

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

std::string to_string(const RewriteStep& s);

// Outcome of one kernel-mediated operation.
struct OpResult {
  enum class Status { ok, kernel_gap, inapplicable } status = Status::ok;
  ExtendedMultiSegment value;
  std::string gap;  // pattern text when status == kernel_gap
};

// Phantom (dis)appearing.  The added row is prepended to rho's list; the
// result is relaxed.  Throws on an illegal kind/l combination.
ExtendedMultiSegment op_P_add(const ExtendedMultiSegment& e, const RhoLabel& rho,
                              PhantomKind kind, int l);

// Removes the leading phantom row of rho's list; refuses when the first row
// is not exactly phantom-shaped.
ExtendedMultiSegment op_P_remove(const ExtendedMultiSegment& e, const RhoLabel& rho);

// Union-intersection on the adjacent rows (pos, pos+1) of rho's list.
// Throws on geometric precondition violations; kernel gaps and calibrated
// inapplicability are returned in the result.
OpResult op_UI(const ExtendedMultiSegment& e, const RhoLabel& rho, int pos,
               const KernelTable& kernel);

// Inverse of (UI): split the union row at pos back into two rows.  With
// pair = false the intersection was empty and split_A2 names the doubled A
// of the reconstructed first row; with pair = true rows (pos, pos+1) are the
// (union, intersection) pair.
OpResult op_UI_inverse(const ExtendedMultiSegment& e, const RhoLabel& rho, int pos,
                       bool pair, std::int64_t split_A2, const KernelTable& kernel);

// Order swap of the adjacent nested rows (pos, pos+1).  Swapping two equal
// rows is the identity.  Applying the swap twice restores the input.
OpResult op_C(const ExtendedMultiSegment& e, const RhoLabel& rho, int pos,
              const KernelTable& kernel);

// Replays one recorded step; throws if the step does not apply exactly.
ExtendedMultiSegment apply_step(const ExtendedMultiSegment& e, const RewriteStep& s,
                                const KernelTable& kernel);
ExtendedMultiSegment apply_steps(const ExtendedMultiSegment& e,
                                 const std::vector<RewriteStep>& steps,
                                 const KernelTable& kernel);

struct NeighborSet {
  struct Item {
    std::vector<RewriteStep> steps;
    ExtendedMultiSegment result;
  };
  std::vector<Item> items;
  std::vector<std::string> gaps;  // unresolved kernel patterns, deduplicated
  bool bound_hit = false;
};

// All strict-valid one-step results: kernel-covered (C), (UI), (UI)-inverse,
// and (P)-composites "add one phantom, absorb it with the next (UI)" plus
// their reverses.  Raw phantom additions are never emitted.
NeighborSet neighbors(const ExtendedMultiSegment& e, const KernelTable& kernel,
                      const Bounds& bounds = {});

struct ClassEnumeration {
  struct Edge {
    std::string from;
    std::string to;
    std::vector<RewriteStep> steps;
  };
  std::vector<ExtendedMultiSegment> members;  // sorted by canonical encoding
  std::vector<Edge> edges;
  std::vector<std::string> gaps;
  bool bound_hit = false;
  bool exhausted = false;
};

ClassEnumeration enumerate_class(const ExtendedMultiSegment& e, const KernelTable& kernel,
                                 const Bounds& bounds = {});
ClassEnumeration enumerate_class(const std::vector<ExtendedMultiSegment>& seeds,
                                 const KernelTable& kernel, const Bounds& bounds = {});

struct EquivalenceResult {
  enum class Verdict { yes, no, unknown } verdict = Verdict::unknown;
  std::vector<RewriteStep> path;  // replayable when verdict == yes
  std::string reason;
};

EquivalenceResult strongly_equivalent(const ExtendedMultiSegment& a,
                                      const ExtendedMultiSegment& b,
                                      const KernelTable& kernel, const Bounds& bounds = {});

}  // namespace ems
