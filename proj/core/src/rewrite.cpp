#include "ems/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ems {

std::string to_string(OpKind k) {
  switch (k) {
    case OpKind::C: return "C";
    case OpKind::UI: return "UI";
    case OpKind::UIinv: return "UIinv";
    case OpKind::Padd: return "Padd";
    case OpKind::Premove: return "Premove";
  }
  return "?";
}

std::string to_string(const RewriteStep& s) {
  std::ostringstream os;
  os << to_string(s.op) << "@" << to_string(s.rho);
  switch (s.op) {
    case OpKind::C:
    case OpKind::UI:
      os << " pos=" << s.pos;
      break;
    case OpKind::UIinv:
      os << " pos=" << s.pos;
      if (s.pair)
        os << " pair";
      else
        os << " split=" << to_string(HalfInt(s.split_A2));
      break;
    case OpKind::Padd:
      os << " kind=" << (s.kind == PhantomKind::integral ? "int" : "half") << " l=" << s.l;
      break;
    case OpKind::Premove:
      break;
  }
  return os.str();
}

namespace {

bool has_negative_row(const ExtendedMultiSegment& e) {
  for (const auto& blk : e.blocks)
    for (const auto& r : blk.rows)
      if (r.A.twice + r.B.twice < 0) return true;
  return false;
}

ExtendedMultiSegment finish(GroupContext ctx, std::vector<RhoBlock> blocks) {
  auto e = make_multisegment(ctx, std::move(blocks), true);
  e.strict = !has_negative_row(e);
  return e;
}

const RhoBlock& block_or_throw(const ExtendedMultiSegment& e, const RhoLabel& rho,
                               const char* op) {
  const RhoBlock* b = find_block(e, rho);
  if (!b)
    throw std::invalid_argument(std::string(op) + ": no rows for rho " + to_string(rho));
  return *b;
}

void check_pos(const RhoBlock& blk, int pos, int span, const char* op) {
  if (pos < 0 || pos + span > int(blk.rows.size()))
    throw std::invalid_argument(std::string(op) + ": row position " + std::to_string(pos) +
                                " out of range");
}

}  // namespace

ExtendedMultiSegment op_P_add(const ExtendedMultiSegment& e, const RhoLabel& rho,
                              PhantomKind kind, int l) {
  ExtendedSegment ph = phantom_row(kind, l);  // validates the kind/l combination
  auto blocks = e.blocks;
  bool found = false;
  for (auto& blk : blocks)
    if (blk.rho == rho) {
      blk.rows.insert(blk.rows.begin(), ph);
      found = true;
    }
  if (!found) blocks.push_back({rho, {ph}});
  auto out = make_multisegment(e.ctx, std::move(blocks), false);
  out.strict = false;
  return out;
}

ExtendedMultiSegment op_P_remove(const ExtendedMultiSegment& e, const RhoLabel& rho) {
  const RhoBlock& blk = block_or_throw(e, rho, "op_P_remove");
  if (!phantom_shape(blk.rows.front()))
    throw std::invalid_argument("op_P_remove: leading row of " + to_string(rho) +
                                " is not phantom-shaped");
  auto blocks = e.blocks;
  for (auto& b : blocks)
    if (b.rho == rho) b.rows.erase(b.rows.begin());
  return finish(e.ctx, std::move(blocks));
}

OpResult op_UI(const ExtendedMultiSegment& e, const RhoLabel& rho, int pos,
               const KernelTable& kernel) {
  const RhoBlock& blk = block_or_throw(e, rho, "op_UI");
  check_pos(blk, pos, 2, "op_UI");
  const auto& X = blk.rows[pos];
  const auto& Y = blk.rows[pos + 1];
  if (!(X.B < Y.B && X.A < Y.A && Y.B.twice <= X.A.twice + 2))
    throw std::invalid_argument("op_UI: rows " + std::to_string(pos) + "," +
                                std::to_string(pos + 1) + " violate the precondition");
  auto look = kernel.lookup_ui(pattern_of(X), pattern_of(Y));
  if (look.answer == KernelTable::Answer::gap)
    return {OpResult::Status::kernel_gap, {}, gap_ui(pattern_of(X), pattern_of(Y))};
  if (look.answer == KernelTable::Answer::inapplicable)
    return {OpResult::Status::inapplicable, {}, {}};
  auto blocks = e.blocks;
  for (auto& b : blocks)
    if (b.rho == rho) {
      std::vector<ExtendedSegment> repl;
      repl.push_back(row_of(look.out.u));
      if (!look.out.drop) repl.push_back(row_of(look.out.v));
      b.rows.erase(b.rows.begin() + pos, b.rows.begin() + pos + 2);
      b.rows.insert(b.rows.begin() + pos, repl.begin(), repl.end());
    }
  return {OpResult::Status::ok, finish(e.ctx, std::move(blocks)), {}};
}

OpResult op_UI_inverse(const ExtendedMultiSegment& e, const RhoLabel& rho, int pos,
                       bool pair, std::int64_t split_A2, const KernelTable& kernel) {
  const RhoBlock& blk = block_or_throw(e, rho, "op_UI_inverse");
  KernelTable::InvLookup look;
  std::string gap;
  if (pair) {
    check_pos(blk, pos, 2, "op_UI_inverse");
    const auto& u = blk.rows[pos];
    const auto& v = blk.rows[pos + 1];
    if (!(u.B < v.B && v.A < u.A))
      throw std::invalid_argument("op_UI_inverse: rows are not a (union, intersection) pair");
    look = kernel.lookup_ui_inverse_pair(pattern_of(u), pattern_of(v));
    gap = gap_inv_pair(pattern_of(u), pattern_of(v));
  } else {
    check_pos(blk, pos, 1, "op_UI_inverse");
    const auto& u = blk.rows[pos];
    if (split_A2 < u.B.twice || split_A2 > u.A.twice - 2 ||
        (split_A2 - u.B.twice) % 2 != 0)
      throw std::invalid_argument("op_UI_inverse: split outside the row support");
    look = kernel.lookup_ui_inverse_single(pattern_of(u), split_A2);
    gap = gap_inv_single(pattern_of(u), split_A2);
  }
  if (look.answer == KernelTable::Answer::gap)
    return {OpResult::Status::kernel_gap, {}, gap};
  if (look.answer == KernelTable::Answer::inapplicable)
    return {OpResult::Status::inapplicable, {}, {}};
  auto blocks = e.blocks;
  for (auto& b : blocks)
    if (b.rho == rho) {
      b.rows.erase(b.rows.begin() + pos, b.rows.begin() + pos + (pair ? 2 : 1));
      b.rows.insert(b.rows.begin() + pos, {row_of(look.i), row_of(look.j)});
    }
  return {OpResult::Status::ok, finish(e.ctx, std::move(blocks)), {}};
}

OpResult op_C(const ExtendedMultiSegment& e, const RhoLabel& rho, int pos,
              const KernelTable& kernel) {
  const RhoBlock& blk = block_or_throw(e, rho, "op_C");
  check_pos(blk, pos, 2, "op_C");
  const auto& X = blk.rows[pos];
  const auto& Y = blk.rows[pos + 1];
  if (X == Y) return {OpResult::Status::ok, e, {}};  // swapping equal rows is the identity
  bool x_in_y = Y.B <= X.B && X.A <= Y.A;
  bool y_in_x = X.B <= Y.B && Y.A <= X.A;
  if (!x_in_y && !y_in_x)
    throw std::invalid_argument("op_C: rows " + std::to_string(pos) + "," +
                                std::to_string(pos + 1) + " are not nested");
  auto look = kernel.lookup_c(pattern_of(X), pattern_of(Y));
  if (look.answer == KernelTable::Answer::gap)
    return {OpResult::Status::kernel_gap, {}, gap_c(pattern_of(X), pattern_of(Y))};
  if (look.answer == KernelTable::Answer::inapplicable)
    return {OpResult::Status::inapplicable, {}, {}};
  auto blocks = e.blocks;
  for (auto& b : blocks)
    if (b.rho == rho) {
      b.rows[pos] = row_of(look.first);
      b.rows[pos + 1] = row_of(look.second);
    }
  return {OpResult::Status::ok, finish(e.ctx, std::move(blocks)), {}};
}

ExtendedMultiSegment apply_step(const ExtendedMultiSegment& e, const RewriteStep& s,
                                const KernelTable& kernel) {
  auto unwrap = [&](OpResult r) {
    if (r.status == OpResult::Status::kernel_gap)
      throw std::runtime_error("replay hit a kernel gap: " + r.gap);
    if (r.status == OpResult::Status::inapplicable)
      throw std::runtime_error("replay hit a calibrated-inapplicable pattern at " +
                               to_string(s));
    return r.value;
  };
  switch (s.op) {
    case OpKind::C: return unwrap(op_C(e, s.rho, s.pos, kernel));
    case OpKind::UI: return unwrap(op_UI(e, s.rho, s.pos, kernel));
    case OpKind::UIinv:
      return unwrap(op_UI_inverse(e, s.rho, s.pos, s.pair, s.split_A2, kernel));
    case OpKind::Padd: return op_P_add(e, s.rho, s.kind, s.l);
    case OpKind::Premove: return op_P_remove(e, s.rho);
  }
  throw std::logic_error("unknown rewrite step");
}

ExtendedMultiSegment apply_steps(const ExtendedMultiSegment& e,
                                 const std::vector<RewriteStep>& steps,
                                 const KernelTable& kernel) {
  ExtendedMultiSegment cur = e;
  for (const auto& s : steps) cur = apply_step(cur, s, kernel);
  return cur;
}

namespace {

std::int64_t floor_halfint(HalfInt h) {
  return h.twice >= 0 ? h.twice / 2 : (h.twice - 1) / 2;
}

}  // namespace

NeighborSet neighbors(const ExtendedMultiSegment& e, const KernelTable& kernel,
                      const Bounds& bounds) {
  if (!validate(e).empty())
    throw std::invalid_argument("neighbors requires a strict-valid multi-segment");
  NeighborSet out;
  std::set<std::string> gaps;
  auto emit = [&](std::vector<RewriteStep> steps, ExtendedMultiSegment cand) {
    cand.strict = true;
    if (validate(cand).empty()) out.items.push_back({std::move(steps), std::move(cand)});
  };

  for (const auto& blk : e.blocks) {
    const auto& rows = blk.rows;
    int n = int(rows.size());

    for (int pos = 0; pos + 1 < n; ++pos) {  // (C)
      const auto& X = rows[pos];
      const auto& Y = rows[pos + 1];
      if (X == Y) continue;
      bool nested = (Y.B <= X.B && X.A <= Y.A) || (X.B <= Y.B && Y.A <= X.A);
      if (!nested) continue;
      auto res = op_C(e, blk.rho, pos, kernel);
      if (res.status == OpResult::Status::ok)
        emit({{OpKind::C, blk.rho, pos}}, std::move(res.value));
      else if (res.status == OpResult::Status::kernel_gap)
        gaps.insert(res.gap);
    }

    for (int pos = 0; pos + 1 < n; ++pos) {  // (UI)
      const auto& X = rows[pos];
      const auto& Y = rows[pos + 1];
      if (!(X.B < Y.B && X.A < Y.A && Y.B.twice <= X.A.twice + 2)) continue;
      auto res = op_UI(e, blk.rho, pos, kernel);
      if (res.status == OpResult::Status::ok)
        emit({{OpKind::UI, blk.rho, pos}}, std::move(res.value));
      else if (res.status == OpResult::Status::kernel_gap)
        gaps.insert(res.gap);
    }

    for (int pos = 0; pos < n; ++pos) {  // (UI)-inverse, single splits
      const auto& u = rows[pos];
      for (std::int64_t A2 = u.B.twice; A2 <= u.A.twice - 2; A2 += 2) {
        std::int64_t i_ab = A2 + u.B.twice;
        bool phantomish = (i_ab == -2);
        // A reconstructed first row with A+B < 0 can only survive as a
        // removable front phantom; anything else has no valid pre-state.
        if (i_ab < 0 && !phantomish) continue;
        if (phantomish && pos != 0) continue;
        auto look = kernel.lookup_ui_inverse_single(pattern_of(u), A2);
        if (look.answer == KernelTable::Answer::gap) {
          gaps.insert(gap_inv_single(pattern_of(u), A2));
          continue;
        }
        if (look.answer == KernelTable::Answer::inapplicable) continue;
        if (phantomish && !phantom_shape(row_of(look.i))) continue;
        auto res = op_UI_inverse(e, blk.rho, pos, false, A2, kernel);
        if (res.status != OpResult::Status::ok) continue;
        RewriteStep inv{OpKind::UIinv, blk.rho, pos, false, A2};
        if (phantomish)
          emit({inv, {OpKind::Premove, blk.rho}}, op_P_remove(res.value, blk.rho));
        else
          emit({inv}, std::move(res.value));
      }
    }

    for (int pos = 0; pos + 1 < n; ++pos) {  // (UI)-inverse, pair splits
      const auto& u = rows[pos];
      const auto& v = rows[pos + 1];
      if (!(u.B < v.B && v.A < u.A)) continue;
      std::int64_t i_ab = v.A.twice + u.B.twice;
      bool phantomish = (i_ab == -2);
      if (i_ab < 0 && !phantomish) continue;
      if (phantomish && pos != 0) continue;
      auto look = kernel.lookup_ui_inverse_pair(pattern_of(u), pattern_of(v));
      if (look.answer == KernelTable::Answer::gap) {
        gaps.insert(gap_inv_pair(pattern_of(u), pattern_of(v)));
        continue;
      }
      if (look.answer == KernelTable::Answer::inapplicable) continue;
      if (phantomish && !phantom_shape(row_of(look.i))) continue;
      auto res = op_UI_inverse(e, blk.rho, pos, true, 0, kernel);
      if (res.status != OpResult::Status::ok) continue;
      RewriteStep inv{OpKind::UIinv, blk.rho, pos, true, 0};
      if (phantomish)
        emit({inv, {OpKind::Premove, blk.rho}}, op_P_remove(res.value, blk.rho));
      else
        emit({inv}, std::move(res.value));
    }

    if (n > 0) {  // (P)-composites: add one phantom, absorb it with (UI)
      const auto& r1 = rows[0];
      PhantomKind kind = r1.A.is_integer() ? PhantomKind::integral : PhantomKind::half_integral;
      int lo = kind == PhantomKind::integral ? 1 : 0;
      HalfInt max_a = rows[0].A;
      for (const auto& r : rows) max_a = std::max(max_a, r.A);
      int lmax = bounds.phantom_l_max >= 0 ? bounds.phantom_l_max
                                           : int(floor_halfint(max_a)) + 1;
      auto geometric = [&](int l) {
        ExtendedSegment ph = phantom_row(kind, l);
        return ph.B < r1.B && ph.A < r1.A && r1.B.twice <= ph.A.twice + 2;
      };
      // The geometric window is capped by A_ph < A_1.
      int intrinsic_max = kind == PhantomKind::integral
                              ? int(r1.A.twice / 2)
                              : int((r1.A.twice - 1) / 2);
      for (int l = lo; l <= std::min(lmax, intrinsic_max); ++l) {
        if (!geometric(l)) continue;
        ExtendedSegment ph = phantom_row(kind, l);
        auto look = kernel.lookup_ui(pattern_of(ph), pattern_of(r1));
        if (look.answer == KernelTable::Answer::gap) {
          gaps.insert(gap_ui(pattern_of(ph), pattern_of(r1)));
          continue;
        }
        if (look.answer == KernelTable::Answer::inapplicable) continue;
        auto relaxed = op_P_add(e, blk.rho, kind, l);
        auto res = op_UI(relaxed, blk.rho, 0, kernel);
        if (res.status != OpResult::Status::ok) continue;
        emit({{OpKind::Padd, blk.rho, 0, false, 0, kind, l},
              {OpKind::UI, blk.rho, 0}},
             std::move(res.value));
      }
      for (int l = lmax + 1; l <= intrinsic_max; ++l)
        if (geometric(l)) {
          out.bound_hit = true;
          break;
        }
    }
  }
  out.gaps.assign(gaps.begin(), gaps.end());
  return out;
}

ClassEnumeration enumerate_class(const ExtendedMultiSegment& e, const KernelTable& kernel,
                                 const Bounds& bounds) {
  return enumerate_class(std::vector<ExtendedMultiSegment>{e}, kernel, bounds);
}

ClassEnumeration enumerate_class(const std::vector<ExtendedMultiSegment>& seeds,
                                 const KernelTable& kernel, const Bounds& bounds) {
  ClassEnumeration out;
  std::map<std::string, ExtendedMultiSegment> members;
  std::deque<std::string> queue;
  std::set<std::string> gapset;
  bool cap_hit = false;
  for (const auto& s : seeds) {
    auto e = weak_normalize(s);
    e.strict = true;
    if (!validate(e).empty())
      throw std::invalid_argument("enumerate_class requires strict-valid seeds");
    auto key = to_oneline(e);
    if (members.emplace(key, e).second) queue.push_back(key);
  }
  while (!queue.empty()) {
    auto key = queue.front();
    queue.pop_front();
    auto ns = neighbors(members.at(key), kernel, bounds);
    out.bound_hit |= ns.bound_hit;
    for (const auto& g : ns.gaps) gapset.insert(g);
    for (auto& item : ns.items) {
      auto tkey = to_oneline(item.result);
      out.edges.push_back({key, tkey, item.steps});
      if (!members.count(tkey)) {
        if (members.size() >= bounds.max_members) {
          cap_hit = true;
          continue;
        }
        members.emplace(tkey, item.result);
        queue.push_back(tkey);
      }
    }
  }
  for (auto& [k, v] : members) out.members.push_back(v);
  std::sort(out.edges.begin(), out.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  out.gaps.assign(gapset.begin(), gapset.end());
  out.bound_hit |= cap_hit;
  out.exhausted = out.gaps.empty() && !out.bound_hit;
  return out;
}

EquivalenceResult strongly_equivalent(const ExtendedMultiSegment& a,
                                      const ExtendedMultiSegment& b,
                                      const KernelTable& kernel, const Bounds& bounds) {
  auto A = weak_normalize(a);
  auto B = weak_normalize(b);
  A.strict = B.strict = true;
  if (!validate(A).empty() || !validate(B).empty())
    throw std::invalid_argument("strongly_equivalent requires strict-valid inputs");
  auto akey = to_oneline(A), bkey = to_oneline(B);
  if (akey == bkey) return {EquivalenceResult::Verdict::yes, {}, "identical"};
  if (ex_supp_of_psi(psi_of(A)) != ex_supp_of_psi(psi_of(B)))
    return {EquivalenceResult::Verdict::no, {},
            "diagonal restrictions differ (invariant along every edge)"};
  auto enum_a = enumerate_class(A, kernel, bounds);
  bool found = false;
  for (const auto& m : enum_a.members)
    if (to_oneline(m) == bkey) found = true;
  if (found) {
    // Shortest replayable path over the recorded edges.
    std::map<std::string, std::pair<std::string, std::vector<RewriteStep>>> parent;
    std::deque<std::string> queue{akey};
    parent[akey] = {"", {}};
    while (!queue.empty() && !parent.count(bkey)) {
      auto key = queue.front();
      queue.pop_front();
      for (const auto& edge : enum_a.edges)
        if (edge.from == key && !parent.count(edge.to)) {
          parent[edge.to] = {key, edge.steps};
          queue.push_back(edge.to);
        }
    }
    std::vector<RewriteStep> path;
    for (std::string cur = bkey; cur != akey;) {
      auto& [prev, steps] = parent.at(cur);
      path.insert(path.begin(), steps.begin(), steps.end());
      cur = prev;
    }
    return {EquivalenceResult::Verdict::yes, std::move(path), "connected"};
  }
  if (enum_a.exhausted)
    return {EquivalenceResult::Verdict::no, {}, "classes are exhausted and disjoint"};
  auto enum_b = enumerate_class(B, kernel, bounds);
  for (const auto& m : enum_b.members)
    if (to_oneline(m) == akey)
      return {EquivalenceResult::Verdict::yes, {}, "connected (reverse search)"};
  if (enum_b.exhausted)
    return {EquivalenceResult::Verdict::no, {}, "classes are exhausted and disjoint"};
  return {EquivalenceResult::Verdict::unknown, {},
          "enumeration not exhausted (kernel gaps or bounds)"};
}

}  // namespace ems
