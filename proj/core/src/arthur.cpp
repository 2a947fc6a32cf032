#include "ems/arthur.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ems {

namespace {

GroupContext context_for_dim(Family family, std::int64_t dim) {
  if (family == Family::SO_odd) {
    if (dim % 2 != 0)
      throw std::invalid_argument("odd dual dimension is impossible for this family");
    return {family, int(dim / 2)};
  }
  if (dim % 2 != 1 || dim < 1)
    throw std::invalid_argument("even dual dimension is impossible for this family");
  return {family, int((dim - 1) / 2)};
}

int count_shape(const RhoBlock& blk, HalfInt A, HalfInt B) {
  int n = 0;
  for (const auto& r : blk.rows)
    if (r.A == A && r.B == B) ++n;
  return n;
}

// Replaces the last `need` rows of shape [A,B] using `edit`; returns false
// when fewer than `need` copies exist.
bool replace_last_copies(RhoBlock& blk, HalfInt A, HalfInt B, int need,
                         const std::function<void(ExtendedSegment&)>& edit) {
  if (need == 0) return true;
  std::vector<int> idx;
  for (int i = 0; i < int(blk.rows.size()); ++i)
    if (blk.rows[i].A == A && blk.rows[i].B == B) idx.push_back(i);
  if (int(idx.size()) < need) return false;
  for (int k = 0; k < need; ++k) edit(blk.rows[idx[idx.size() - 1 - k]]);
  return true;
}

ExtendedMultiSegment finalize_lift(GroupContext old_ctx, std::vector<RhoBlock> blocks,
                                   const char* op) {
  auto e = make_multisegment(old_ctx, std::move(blocks), true);
  e.ctx = context_for_dim(old_ctx.family, psi_of(e).total_dim());
  auto issues = validate(e);
  if (!issues.empty())
    throw std::invalid_argument(std::string(op) + ": lifted multi-segment is invalid (" +
                                issues.front().rule + ")");
  return e;
}

}  // namespace

ExtendedMultiSegment lift_plus(const ExtendedMultiSegment& eplus, const RhoLabel& rho,
                               HalfInt x, const std::vector<int>& counts) {
  if (!validate(eplus).empty())
    throw std::invalid_argument("lift_plus: input multi-segment is invalid");
  if (counts.empty()) return eplus;  // t = 0, no derivative taken
  const RhoBlock* blk = find_block(eplus, rho);
  if (!blk) throw std::invalid_argument("lift_plus: no rows for rho " + to_string(rho));
  HalfInt max_b = blk->rows.front().B;
  for (const auto& r : blk->rows) max_b = std::max(max_b, r.B);
  if (max_b != x - 1)
    throw std::invalid_argument("lift_plus: max B bullet fails (max B = " +
                                to_string(max_b) + ", expected " + to_string(x - 1) + ")");
  auto blocks = eplus.blocks;
  RhoBlock* target = nullptr;
  for (auto& b : blocks)
    if (b.rho == rho) target = &b;
  int t = int(counts.size());
  for (int j = 1; j <= t; ++j) {
    int need = counts[j - 1] - (j < t ? counts[j] : 0);
    if (need < 0)
      throw std::invalid_argument("lift_plus: counts must be non-increasing overall");
    HalfInt A = x + (j - 2), B = x - 1;
    if (!replace_last_copies(*target, A, B, need, [&](ExtendedSegment& r) {
          r.A += HalfInt::whole(1);
          r.B += HalfInt::whole(1);
        }))
      throw std::invalid_argument("lift_plus: row-shape bullet fails at j=" +
                                  std::to_string(j) + " (need " + std::to_string(need) +
                                  " rows [" + to_string(A) + "," + to_string(B) + "])");
  }
  return finalize_lift(eplus.ctx, std::move(blocks), "lift_plus");
}

ExtendedMultiSegment lift_minus(const ExtendedMultiSegment& eminus, const RhoLabel& rho,
                                HalfInt x, const std::vector<int>& counts) {
  if (!validate(eminus).empty())
    throw std::invalid_argument("lift_minus: input multi-segment is invalid");
  if (counts.empty()) return eminus;
  const RhoBlock* blk = find_block(eminus, rho);
  if (!blk) throw std::invalid_argument("lift_minus: no rows for rho " + to_string(rho));
  HalfInt min_b = blk->rows.front().B;
  for (const auto& r : blk->rows) min_b = std::min(min_b, r.B);
  if (min_b != x + 1)
    throw std::invalid_argument("lift_minus: min B bullet fails (min B = " +
                                to_string(min_b) + ", expected " + to_string(x + 1) + ")");
  bool half_case = (x.twice == -1);
  auto blocks = eminus.blocks;
  RhoBlock* target = nullptr;
  for (auto& b : blocks)
    if (b.rho == rho) target = &b;
  int t = int(counts.size());
  for (int j = 1; j <= t; ++j) {
    int need = counts[j - 1] - (j < t ? counts[j] : 0);
    if (need < 0)
      throw std::invalid_argument("lift_minus: counts must be non-increasing overall");
    if (j == 1 && half_case) {
      // [-1/2,1/2] is empty: realize the round as k0-k1 front additions of
      // ([1/2,-1/2],1,+1).
      for (int m = 0; m < need; ++m)
        target->rows.insert(target->rows.begin(),
                            ExtendedSegment{HalfInt(1), HalfInt(-1), 1, +1});
      continue;
    }
    HalfInt A = -x + (j - 2), B = x + 1;
    if (!replace_last_copies(*target, A, B, need, [&](ExtendedSegment& r) {
          r.A += HalfInt::whole(1);
          r.B = x;
          r.l += 1;
        }))
      throw std::invalid_argument("lift_minus: row-shape bullet fails at j=" +
                                  std::to_string(j) + " (need " + std::to_string(need) +
                                  " rows [" + to_string(A) + "," + to_string(B) + "])");
  }
  return finalize_lift(eminus.ctx, std::move(blocks), "lift_minus");
}

bool step1_qualifies(const ExtendedMultiSegment& e, const RhoLabel& rho, int direction,
                     HalfInt x, const std::vector<int>& counts) {
  const RhoBlock* blk = find_block(e, rho);
  if (!blk || blk->rows.empty()) return false;
  HalfInt extreme = blk->rows.front().B;
  for (const auto& r : blk->rows)
    extreme = direction > 0 ? std::max(extreme, r.B) : std::min(extreme, r.B);
  if (direction > 0 && extreme != x - 1) return false;
  if (direction < 0 && extreme != x + 1) return false;
  int t = int(counts.size());
  for (int j = 1; j <= t; ++j) {
    int need = counts[j - 1] - (j < t ? counts[j] : 0);
    if (need <= 0) continue;
    if (direction < 0 && x.twice == -1 && j == 1) continue;  // waived, segment is empty
    HalfInt A = direction > 0 ? x + (j - 2) : -x + (j - 2);
    HalfInt B = direction > 0 ? x - 1 : x + 1;
    if (count_shape(*blk, A, B) < need) return false;
  }
  return true;
}

std::string to_string(ArthurVerdict::Status s) {
  switch (s) {
    case ArthurVerdict::Status::arthur_type: return "ArthurType";
    case ArthurVerdict::Status::not_arthur_type: return "NotArthurType";
    case ArthurVerdict::Status::unknown: return "Unknown";
  }
  return "?";
}

std::vector<ExtendedMultiSegment> candidate_multisegments(const AParameter& psi,
                                                          const Bounds& bounds,
                                                          bool* overflow) {
  if (overflow) *overflow = false;
  // Segments per rho, as (A,B) pairs.
  std::map<RhoLabel, std::vector<std::pair<HalfInt, HalfInt>>> segs;
  for (const auto& s : psi.summands)
    segs[s.rho].emplace_back(HalfInt(s.a + s.b - 2), HalfInt(s.a - s.b));
  // Per rho: all admissible orders of the segment multiset, then all sign
  // decorations; assembled across rho blocks by cartesian product.
  std::vector<std::vector<RhoBlock>> per_rho;
  std::size_t budget = bounds.max_step2_candidates;
  for (auto& [rho, list] : segs) {
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      return std::tie(a.first.twice, a.second.twice) < std::tie(b.first.twice, b.second.twice);
    });
    std::vector<std::vector<std::pair<HalfInt, HalfInt>>> orders;
    auto perm = list;
    do {
      bool admissible = true;
      for (std::size_t i = 0; i < perm.size() && admissible; ++i)
        for (std::size_t j = i + 1; j < perm.size() && admissible; ++j)
          if (perm[j].first < perm[i].first && perm[j].second < perm[i].second)
            admissible = false;
      if (admissible) orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end(), [](const auto& a, const auto& b) {
      return std::tie(a.first.twice, a.second.twice) < std::tie(b.first.twice, b.second.twice);
    }));
    std::vector<RhoBlock> decorated;
    for (const auto& order : orders) {
      std::vector<RhoBlock> partial{{rho, {}}};
      for (const auto& [A, B] : order) {
        std::vector<RhoBlock> next;
        std::int64_t b = (A.twice - B.twice) / 2 + 1;
        for (const auto& base : partial) {
          for (int l = 0; 2 * l <= b; ++l) {
            for (int eta : {+1, -1}) {
              if (2 * l == b && eta < 0) continue;  // weak-canonical form
              RhoBlock nb = base;
              nb.rows.push_back(ExtendedSegment{A, B, l, eta});
              next.push_back(std::move(nb));
            }
          }
        }
        partial = std::move(next);
        if (partial.size() > budget) {
          if (overflow) *overflow = true;
          return {};
        }
      }
      decorated.insert(decorated.end(), partial.begin(), partial.end());
      if (decorated.size() > budget) {
        if (overflow) *overflow = true;
        return {};
      }
    }
    per_rho.push_back(std::move(decorated));
  }
  std::vector<std::vector<RhoBlock>> assembly{{}};
  for (const auto& choices : per_rho) {
    std::vector<std::vector<RhoBlock>> next;
    for (const auto& base : assembly)
      for (const auto& choice : choices) {
        auto combo = base;
        combo.push_back(choice);
        next.push_back(std::move(combo));
      }
    assembly = std::move(next);
    if (assembly.size() > budget) {
      if (overflow) *overflow = true;
      return {};
    }
  }
  std::set<std::string> seen;
  std::vector<ExtendedMultiSegment> out;
  for (auto& blocks : assembly) {
    auto e = make_multisegment(psi.ctx, std::move(blocks), true);
    if (!validate(e).empty()) continue;
    if (!necessary_nonvanishing(e).passes) continue;
    auto key = to_oneline(e);
    if (seen.insert(key).second) out.push_back(std::move(e));
  }
  return out;
}

namespace {

ArthurVerdict decide_impl(const LanglandsData& l, const KernelTable& kernel,
                          const DerivativeOracle& dor, const EvalOracle& eor,
                          const Bounds& bounds, int depth) {
  ArthurVerdict v;
  if (depth > 512) throw std::logic_error("derivative recursion failed to terminate");
  auto issues = validate_langlands(l);
  auto parity = good_parity_issues(l);
  issues.insert(issues.end(), parity.begin(), parity.end());
  if (!issues.empty())
    throw std::invalid_argument("decide_arthur: invalid Langlands data: " + issues.front());

  if (l.ctx.dual_dim() == 0) {
    ExtendedMultiSegment empty = make_multisegment(l.ctx, {});
    v.status = ArthurVerdict::Status::arthur_type;
    v.witnesses.emplace_back(empty, psi_of(empty));
    v.trace.push_back("rank 0: the empty multi-segment is a witness");
    return v;
  }

  std::set<RhoLabel> rhos;
  for (const auto& d : l.deltas) rhos.insert(d.rho);
  for (const auto& s : l.tempered.phi.summands) rhos.insert(s.rho);

  // Step 1+ / Step 1-: the first rho with a cascade in the direction wins.
  for (int direction : {+1, -1}) {
    for (const auto& rho : rhos) {
      auto q = dor.query(l, rho, direction);
      if (q.answer == DerivativeOracle::Answer::no_data) {
        v.status = ArthurVerdict::Status::unknown;
        v.gaps.push_back("derivative oracle has no data for " + to_text(l) + " at rho " +
                         to_string(rho) + " direction " + (direction > 0 ? "+" : "-"));
        return v;
      }
      if (q.answer == DerivativeOracle::Answer::none_in_direction) continue;

      const auto& rep = q.report;
      std::ostringstream step;
      step << "step 1" << (direction > 0 ? "+" : "-") << " at rho " << to_string(rho)
           << ", x = " << to_string(rep.x) << ", counts =";
      for (int k : rep.counts) step << " " << k;
      v.trace.push_back(step.str());

      ArthurVerdict sub = decide_impl(rep.residual, kernel, dor, eor, bounds, depth + 1);
      v.trace.insert(v.trace.end(), sub.trace.begin(), sub.trace.end());
      v.gaps.insert(v.gaps.end(), sub.gaps.begin(), sub.gaps.end());
      if (sub.status == ArthurVerdict::Status::unknown) {
        v.status = ArthurVerdict::Status::unknown;
        return v;
      }
      if (sub.status == ArthurVerdict::Status::not_arthur_type) {
        v.status = ArthurVerdict::Status::not_arthur_type;
        v.trace.push_back("residual representation is not of Arthur type");
        return v;
      }
      std::vector<ExtendedMultiSegment> seeds;
      for (const auto& [e, psi] : sub.witnesses) seeds.push_back(e);
      auto cls = enumerate_class(seeds, kernel, bounds);
      std::set<std::string> lifted;
      for (const auto& member : cls.members) {
        if (!step1_qualifies(member, rho, direction, rep.x, rep.counts)) continue;
        try {
          ExtendedMultiSegment e = direction > 0
                                       ? lift_plus(member, rho, rep.x, rep.counts)
                                       : lift_minus(member, rho, rep.x, rep.counts);
          if (lifted.insert(to_oneline(e)).second)
            v.witnesses.emplace_back(e, psi_of(e));
        } catch (const std::exception& ex) {
          v.gaps.push_back(std::string("lift failed on a qualifying member: ") + ex.what());
        }
      }
      if (!v.witnesses.empty()) {
        v.status = ArthurVerdict::Status::arthur_type;
        v.trace.push_back("lifted " + std::to_string(v.witnesses.size()) +
                          " qualifying class member(s)");
        return v;
      }
      if (cls.exhausted && v.gaps.empty()) {
        v.status = ArthurVerdict::Status::not_arthur_type;
        v.trace.push_back("no member of the exhausted residual class meets the step 1" +
                          std::string(direction > 0 ? "+" : "-") + " conditions");
        return v;
      }
      v.status = ArthurVerdict::Status::unknown;
      v.gaps.insert(v.gaps.end(), cls.gaps.begin(), cls.gaps.end());
      if (cls.bound_hit) v.gaps.push_back("class enumeration hit a search bound");
      return v;
    }
  }

  // Step 2: derivatives certified to vanish outside z in {0, 1/2}.
  auto step2 = step2_candidate(l);
  if (step2.not_arthur) {
    v.status = ArthurVerdict::Status::not_arthur_type;
    v.trace.push_back("step 2: k-profile increases at rho " + to_string(step2.violation_rho) +
                      ", z = " + to_string(step2.violation_z));
    return v;
  }
  v.trace.push_back("step 2: candidate parameter " + to_string(step2.psi));
  bool overflow = false;
  auto candidates = candidate_multisegments(step2.psi, bounds, &overflow);
  if (overflow) {
    v.status = ArthurVerdict::Status::unknown;
    v.gaps.push_back("candidate decoration enumeration exceeded the configured bound");
    return v;
  }
  std::string l_text = to_text(l);
  bool oracle_gap = false;
  for (const auto& cand : candidates) {
    auto got = eor.langlands_of(cand);
    if (!got) {
      oracle_gap = true;
      v.gaps.push_back("eval oracle has no data for " + to_oneline(cand));
      continue;
    }
    if (to_text(*got) == l_text) v.witnesses.emplace_back(cand, step2.psi);
  }
  if (!v.witnesses.empty()) {
    v.status = ArthurVerdict::Status::arthur_type;
    v.trace.push_back("step 2: membership witnessed by " +
                      std::to_string(v.witnesses.size()) + " decoration(s)");
    return v;
  }
  if (!oracle_gap) {
    v.status = ArthurVerdict::Status::not_arthur_type;
    v.trace.push_back("step 2: the representation is not in the candidate packet");
    return v;
  }
  v.status = ArthurVerdict::Status::unknown;
  return v;
}

}  // namespace

ArthurVerdict decide_arthur(const LanglandsData& l, const KernelTable& kernel,
                            const DerivativeOracle& derivatives, const EvalOracle& eval,
                            const Bounds& bounds) {
  return decide_impl(l, kernel, derivatives, eval, bounds, 0);
}

PsiList list_all_psi(const ExtendedMultiSegment& e, const KernelTable& kernel,
                     const Bounds& bounds) {
  if (!validate(e).empty())
    throw std::invalid_argument("list_all_psi requires a valid multi-segment");
  if (!necessary_nonvanishing(e).passes)
    throw std::invalid_argument(
        "list_all_psi: the input fails the necessary non-vanishing conditions");
  auto cls = enumerate_class(e, kernel, bounds);
  PsiList out;
  out.exhausted = cls.exhausted;
  for (const auto& m : cls.members) out.psis.push_back(psi_of(m));
  std::sort(out.psis.begin(), out.psis.end());
  out.psis.erase(std::unique(out.psis.begin(), out.psis.end()), out.psis.end());
  return out;
}

}  // namespace ems
