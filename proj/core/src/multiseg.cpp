#include "ems/multiseg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ems {

namespace {

void canonicalize_row(ExtendedSegment& r) {
  if ((r.A.twice - r.B.twice) % 2 == 0 && 2 * r.l == r.b()) r.eta = +1;
}

std::string row_text(const RhoLabel& rho, int idx, const ExtendedSegment& r) {
  std::ostringstream os;
  os << "[" << to_string(r.A) << "," << to_string(r.B) << "]@" << to_string(rho)
     << " l=" << r.l << " eta=" << (r.eta > 0 ? "+1" : "-1") << " (row " << idx << ")";
  return os.str();
}

}  // namespace

ExtendedMultiSegment make_multisegment(GroupContext ctx, std::vector<RhoBlock> blocks,
                                       bool strict) {
  std::erase_if(blocks, [](const RhoBlock& b) { return b.rows.empty(); });
  std::sort(blocks.begin(), blocks.end(),
            [](const RhoBlock& x, const RhoBlock& y) { return x.rho < y.rho; });
  for (auto& b : blocks)
    for (auto& r : b.rows) canonicalize_row(r);
  return ExtendedMultiSegment{ctx, std::move(blocks), strict};
}

ExtendedMultiSegment weak_normalize(ExtendedMultiSegment e) {
  return make_multisegment(e.ctx, std::move(e.blocks), e.strict);
}

int sign_factor(const ExtendedSegment& row) {
  std::int64_t b = row.b();
  int f = ((b / 2 + row.l) % 2 == 0) ? +1 : -1;
  if (b % 2 != 0 && row.eta < 0) f = -f;
  return f;
}

std::vector<Violation> validate(const ExtendedMultiSegment& e) {
  std::vector<Violation> out;
  int sign_product = 1;
  bool structure_ok = true;
  for (const auto& blk : e.blocks) {
    for (std::size_t i = 0; i < blk.rows.size(); ++i) {
      const auto& r = blk.rows[i];
      if ((r.A.twice - r.B.twice) % 2 != 0 || r.A < r.B) {
        out.push_back({kRuleSegmentForm, blk.rho, int(i), row_text(blk.rho, int(i), r)});
        structure_ok = false;
        continue;
      }
      if (r.l < 0 || 2 * r.l > r.b())
        out.push_back({kRuleLRange, blk.rho, int(i), row_text(blk.rho, int(i), r)});
      if (r.eta != 1 && r.eta != -1)
        out.push_back({kRuleWeakCanonical, blk.rho, int(i), "eta outside {+1,-1}"});
      else if (2 * r.l == r.b() && r.eta != 1)
        out.push_back({kRuleWeakCanonical, blk.rho, int(i),
                       "row with l = b/2 must store eta = +1"});
      if (e.strict && r.A.twice + r.B.twice < 0)
        out.push_back({kRuleNonNegativeAB, blk.rho, int(i), row_text(blk.rho, int(i), r)});
      sign_product *= sign_factor(r);
      for (std::size_t j = i + 1; j < blk.rows.size(); ++j) {
        const auto& s = blk.rows[j];
        if (s.A < r.A && s.B < r.B)
          out.push_back({kRuleAdmissibleOrder, blk.rho, int(i),
                         "rows " + std::to_string(i) + "," + std::to_string(j) +
                             " violate the admissible order"});
      }
    }
  }
  if (structure_ok) {
    AParameter psi = psi_of(e);
    if (!is_good_parity(psi))
      out.push_back({kRuleGoodParity, {}, -1, to_string(psi)});
    if (psi.total_dim() != e.ctx.dual_dim())
      out.push_back({kRuleDualDim, {}, -1,
                     "dim " + std::to_string(psi.total_dim()) + " != " +
                         std::to_string(e.ctx.dual_dim())});
    if (sign_product != 1) out.push_back({kRuleSignCondition, {}, -1, "product is -1"});
  }
  return out;
}

AParameter psi_of(const ExtendedMultiSegment& e) {
  std::vector<Summand> out;
  for (const auto& blk : e.blocks)
    for (const auto& r : blk.rows)
      if (r.a() > 0) out.push_back({blk.rho, int(r.a()), int(r.b())});
  return make_aparameter(e.ctx, std::move(out));
}

NecessaryNonvanishingReport necessary_nonvanishing(const ExtendedMultiSegment& e) {
  NecessaryNonvanishingReport rep;
  for (const auto& blk : e.blocks) {
    for (std::size_t i = 0; i < blk.rows.size(); ++i) {
      const auto& r = blk.rows[i];
      if (r.A.twice + r.B.twice < 0)
        rep.violations.push_back({kRuleNonNegativeAB, blk.rho, int(i),
                                  row_text(blk.rho, int(i), r)});
      std::int64_t b_plus_l_twice = r.B.twice + 2 * r.l;
      if (b_plus_l_twice < -1)
        rep.violations.push_back({kRuleBPlusL, blk.rho, int(i),
                                  row_text(blk.rho, int(i), r)});
      else if (b_plus_l_twice == -1)
        rep.forced_eta.emplace_back(blk.rho, int(i));
    }
  }
  rep.passes = rep.violations.empty();
  return rep;
}

ExtendedMultiSegment shift(const ExtendedMultiSegment& e, HalfInt z) {
  if (!z.is_integer())
    throw std::invalid_argument("shift amount must be an integer, got " + to_string(z));
  ExtendedMultiSegment out = e;
  for (auto& blk : out.blocks)
    for (auto& r : blk.rows) {
      r.A += z;
      r.B += z;
    }
  return out;
}

bool is_nonnegative(const ExtendedMultiSegment& e) {
  for (const auto& blk : e.blocks)
    for (const auto& r : blk.rows)
      if (r.B.twice < 0) return false;
  return true;
}

ExtendedSegment phantom_row(PhantomKind kind, int l) {
  if (kind == PhantomKind::integral) {
    if (l <= 0) throw std::invalid_argument("integral phantom needs l > 0");
    return ExtendedSegment{HalfInt::whole(l - 1), HalfInt::whole(-l), l, +1};
  }
  if (l < 0) throw std::invalid_argument("half-integral phantom needs l >= 0");
  return ExtendedSegment{HalfInt(2 * l - 1), HalfInt(-2 * l - 1), l, +1};
}

std::optional<std::pair<PhantomKind, int>> phantom_shape(const ExtendedSegment& row) {
  if (row.A.twice + row.B.twice != -2) return std::nullopt;
  if (row.eta != +1) return std::nullopt;
  if (row.A.is_integer()) {
    int l = int(-row.B.as_integer());
    if (l > 0 && row.l == l) return std::make_pair(PhantomKind::integral, l);
    return std::nullopt;
  }
  int l = int((-row.B.twice - 1) / 2);
  if (l >= 0 && row.l == l) return std::make_pair(PhantomKind::half_integral, l);
  return std::nullopt;
}

const RhoBlock* find_block(const ExtendedMultiSegment& e, const RhoLabel& rho) {
  for (const auto& b : e.blocks)
    if (b.rho == rho) return &b;
  return nullptr;
}

RhoBlock* find_block(ExtendedMultiSegment& e, const RhoLabel& rho) {
  for (auto& b : e.blocks)
    if (b.rho == rho) return &b;
  return nullptr;
}

std::string to_oneline(const ExtendedMultiSegment& e) {
  std::ostringstream os;
  os << to_string(e.ctx.family) << " " << e.ctx.rank;
  for (const auto& blk : e.blocks) {
    os << " @" << to_string(blk.rho) << "{";
    for (const auto& r : blk.rows)
      os << "(" << to_string(r.A) << "," << to_string(r.B) << "," << r.l << ","
         << (r.eta > 0 ? '+' : '-') << ")";
    os << "}";
  }
  return os.str();
}

ExtendedMultiSegment parse_oneline(const std::string& text) {
  std::istringstream is(text);
  std::string fam_text;
  int rank = 0;
  if (!(is >> fam_text >> rank))
    throw std::invalid_argument("malformed one-line multi-segment: '" + text + "'");
  GroupContext ctx;
  if (fam_text == "Sp")
    ctx.family = Family::Sp;
  else if (fam_text == "SOodd")
    ctx.family = Family::SO_odd;
  else
    throw std::invalid_argument("unknown group family: '" + fam_text + "'");
  ctx.rank = rank;
  std::vector<RhoBlock> blocks;
  std::string tok;
  while (is >> tok) {
    if (tok.empty() || tok[0] != '@')
      throw std::invalid_argument("expected @rho{...} block, got '" + tok + "'");
    auto brace = tok.find('{');
    if (brace == std::string::npos || tok.back() != '}')
      throw std::invalid_argument("malformed block: '" + tok + "'");
    RhoBlock blk;
    blk.rho = parse_rho(tok.substr(1, brace - 1));
    std::string body = tok.substr(brace + 1, tok.size() - brace - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
      if (body[pos] != '(') throw std::invalid_argument("malformed row in '" + tok + "'");
      auto close = body.find(')', pos);
      if (close == std::string::npos)
        throw std::invalid_argument("malformed row in '" + tok + "'");
      std::string row = body.substr(pos + 1, close - pos - 1);
      pos = close + 1;
      std::vector<std::string> parts;
      std::size_t p = 0;
      while (true) {
        auto comma = row.find(',', p);
        parts.push_back(row.substr(p, comma == std::string::npos ? comma : comma - p));
        if (comma == std::string::npos) break;
        p = comma + 1;
      }
      if (parts.size() != 4) throw std::invalid_argument("row needs 4 fields: '" + row + "'");
      ExtendedSegment r;
      r.A = parse_halfint(parts[0]);
      r.B = parse_halfint(parts[1]);
      r.l = std::stoi(parts[2]);
      if (parts[3] == "+" || parts[3] == "+1")
        r.eta = +1;
      else if (parts[3] == "-" || parts[3] == "-1")
        r.eta = -1;
      else
        throw std::invalid_argument("eta must be + or -: '" + row + "'");
      blk.rows.push_back(r);
    }
    blocks.push_back(std::move(blk));
  }
  return make_multisegment(ctx, std::move(blocks));
}

bool weak_equal(const ExtendedMultiSegment& a, const ExtendedMultiSegment& b) {
  return to_oneline(weak_normalize(a)) == to_oneline(weak_normalize(b));
}

}  // namespace ems
