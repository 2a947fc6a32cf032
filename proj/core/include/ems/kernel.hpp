#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "ems/multiseg.hpp"

namespace ems {

// Normalized local pattern of one row: exact (A,B) endpoints (doubled), l and
// eta, rho erased.  eta is stored in weak-canonical form.
struct RowPat {
  std::int64_t A2 = 0;
  std::int64_t B2 = 0;
  int l = 0;
  int eta = +1;

  friend bool operator==(const RowPat&, const RowPat&) = default;
  friend auto operator<=>(const RowPat& x, const RowPat& y) {
    return std::tie(x.A2, x.B2, x.l, x.eta) <=> std::tie(y.A2, y.B2, y.l, y.eta);
  }

  std::int64_t b() const { return (A2 - B2) / 2 + 1; }
  std::int64_t a() const { return (A2 + B2) / 2 + 1; }
};

RowPat pattern_of(const ExtendedSegment& row);
ExtendedSegment row_of(const RowPat& p);
std::string to_string(const RowPat& p);
int sign_factor(const RowPat& p);

// Output of a union-intersection rewrite: the union row parameters and,
// unless the intersection is empty and dropped, the intersection row.
struct UIOutcome {
  RowPat u;
  bool drop = false;
  RowPat v;

  friend bool operator==(const UIOutcome&, const UIOutcome&) = default;
};

// Calibrated lookup table for the (C) and (UI) parameter updates.  The
// closed-form updates live outside this artifact; every entry here is pinned
// to a worked transition (see the source tags in the fixture file).  A
// missing pattern is a first-class kernel gap, never a silent default;
// entries mapped to nullopt record calibrated inapplicability.
class KernelTable {
 public:
  enum class Answer { covered, inapplicable, gap };

  struct UILookup {
    Answer answer = Answer::gap;
    UIOutcome out;
  };
  struct CLookup {
    Answer answer = Answer::gap;
    RowPat first, second;  // parameters after the swap, in position order
  };
  struct InvLookup {
    Answer answer = Answer::gap;
    RowPat i, j;  // forward inputs that produce the probed output
  };

  UILookup lookup_ui(const RowPat& i, const RowPat& j) const;
  CLookup lookup_c(const RowPat& x, const RowPat& y) const;
  // Single-row split: the probed row is a union whose intersection was
  // dropped; splitA2 is the doubled A of the reconstructed first input.
  InvLookup lookup_ui_inverse_single(const RowPat& u, std::int64_t splitA2) const;
  // Pair split: adjacent (union, intersection) rows.
  InvLookup lookup_ui_inverse_pair(const RowPat& u, const RowPat& v) const;

  // Entry registration; validates geometry, sign and dimension preservation
  // and involution consistency, throws std::invalid_argument on bad data.
  void add_ui(const RowPat& i, const RowPat& j, std::optional<UIOutcome> out,
              const std::string& source);
  void add_c(const RowPat& x, const RowPat& y,
             std::optional<std::pair<RowPat, RowPat>> out, const std::string& source);
  void add_uiinv_single_neg(const RowPat& u, std::int64_t splitA2, const std::string& source);
  void add_uiinv_pair_neg(const RowPat& u, const RowPat& v, const std::string& source);

  std::size_t entry_count() const;
  const std::map<std::pair<RowPat, RowPat>, std::optional<UIOutcome>>& ui_entries() const {
    return ui_;
  }

  static KernelTable parse(const std::string& text);
  static KernelTable load_file(const std::string& path);

 private:
  std::map<std::pair<RowPat, RowPat>, std::optional<UIOutcome>> ui_;
  std::map<std::pair<RowPat, RowPat>, std::optional<std::pair<RowPat, RowPat>>> c_;
  std::set<std::pair<RowPat, std::int64_t>> single_neg_;
  std::set<std::pair<RowPat, RowPat>> pair_neg_;
  // Derived inverse indexes over the forward entries.
  std::map<std::pair<RowPat, std::int64_t>, std::pair<RowPat, RowPat>> inv_single_;
  std::map<std::pair<RowPat, RowPat>, std::pair<RowPat, RowPat>> inv_pair_;
};

std::string gap_ui(const RowPat& i, const RowPat& j);
std::string gap_c(const RowPat& x, const RowPat& y);
std::string gap_inv_single(const RowPat& u, std::int64_t splitA2);
std::string gap_inv_pair(const RowPat& u, const RowPat& v);

}  // namespace ems
