#include "ems/langlands.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ems {

std::vector<std::string> validate_langlands(const LanglandsData& l) {
  std::vector<std::string> out;
  for (const auto& d : l.deltas) {
    if ((d.x.twice - d.y.twice) % 2 != 0)
      out.push_back("delta [" + to_string(d.x) + "," + to_string(d.y) +
                    "] endpoints differ by a non-integer");
    if (d.x < d.y)
      out.push_back("delta [" + to_string(d.x) + "," + to_string(d.y) + "] has x < y");
  }
  for (std::size_t i = 0; i + 1 < l.deltas.size(); ++i)
    if (l.deltas[i].x + l.deltas[i].y > l.deltas[i + 1].x + l.deltas[i + 1].y)
      out.push_back("deltas are not sorted by x+y");
  for (const auto& d : l.deltas)
    if (d.x.twice + d.y.twice >= 0)
      out.push_back("delta [" + to_string(d.x) + "," + to_string(d.y) +
                    "] has x+y >= 0");
  if (!is_tempered(l.tempered.phi)) out.push_back("tempered part has a summand with b > 1");
  try {
    if (!validate_sign_character(l.tempered))
      out.push_back("sign character product is not +1");
  } catch (const std::exception& ex) {
    out.push_back(ex.what());
  }
  std::int64_t dim = l.tempered.phi.total_dim();
  for (const auto& d : l.deltas)
    dim += 2 * std::int64_t(d.rho.dim) * ((d.x.twice - d.y.twice) / 2 + 1);
  if (dim != l.ctx.dual_dim())
    out.push_back("total dimension " + std::to_string(dim) + " does not match the dual dimension " +
                  std::to_string(l.ctx.dual_dim()));
  return out;
}

std::vector<std::string> good_parity_issues(const LanglandsData& l) {
  std::vector<std::string> out;
  for (const auto& d : l.deltas) {
    int a = int(std::abs(d.x.twice) + 1);  // 2|x| + 1 with |x| in (1/2)Z
    if (!summand_good_parity(l.ctx, Summand{d.rho, a, 1}))
      out.push_back("delta [" + to_string(d.x) + "," + to_string(d.y) +
                    "]@" + to_string(d.rho) + " is not of good parity");
  }
  AParameter phi = l.tempered.phi;
  phi.ctx = l.ctx;
  if (!is_good_parity(phi)) out.push_back("tempered part is not of good parity");
  return out;
}

LanglandsData canonical(const LanglandsData& l) {
  LanglandsData out = l;
  std::sort(out.deltas.begin(), out.deltas.end(), [](const Delta& a, const Delta& b) {
    return std::make_tuple(a.x.twice + a.y.twice, a.x.twice, a.rho) <
           std::make_tuple(b.x.twice + b.y.twice, b.x.twice, b.rho);
  });
  out.tempered.phi.canonicalize();
  return out;
}

std::string to_text(const LanglandsData& l_in) {
  LanglandsData l = canonical(l_in);
  std::ostringstream os;
  os << "group " << to_string(l.ctx.family) << " rank " << l.ctx.rank << " L(";
  for (std::size_t i = 0; i < l.deltas.size(); ++i) {
    const auto& d = l.deltas[i];
    os << (i ? ", " : " ") << "D[" << to_string(d.x) << "," << to_string(d.y) << "]@"
       << to_string(d.rho);
  }
  os << " ;";
  const auto& summands = l.tempered.phi.summands;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const auto& s = summands[i];
    HalfInt x(s.a - 1);
    int sign = l.tempered.eps.at({s.rho, s.a});
    os << " (" << to_string(x) << ")^" << (sign > 0 ? "+" : "-");
    // The rho suffix closes each run of same-rho entries.
    if (i + 1 == summands.size() || !(summands[i + 1].rho == s.rho))
      os << " @" << to_string(s.rho);
  }
  os << " )";
  return os.str();
}

SupportMultiset ex_supp_of_langlands(const LanglandsData& l) {
  SupportMultiset out;
  for (const auto& d : l.deltas) {
    for (HalfInt t = d.x; t >= d.y; t -= HalfInt::whole(1)) {
      out.emplace_back(d.rho, t);
      out.emplace_back(d.rho, -t);
    }
  }
  for (const auto& s : l.tempered.phi.summands)
    for (int k = 0; k < s.a; ++k) out.emplace_back(s.rho, HalfInt(s.a - 1 - 2 * k));
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::pair<RhoLabel, HalfInt>, int> k_profile(const LanglandsData& l) {
  std::map<std::pair<RhoLabel, HalfInt>, int> k;
  for (const auto& d : l.deltas) {
    if (d.x.twice >= 0) k[{d.rho, d.x}]++;
    if (d.y.twice <= 0 && !(d.x == -d.y)) k[{d.rho, -d.y}]++;
    // x = z and y = -z for the same delta would count once; excluded by
    // x+y < 0 in valid data, handled above for robustness.
  }
  for (const auto& s : l.tempered.phi.summands) k[{s.rho, HalfInt(s.a - 1)}]++;
  std::erase_if(k, [](const auto& kv) { return kv.second == 0; });
  return k;
}

bool check_M_consistency(const LanglandsData& l) {
  auto supp = ex_supp_of_langlands(l);
  auto k = k_profile(l);
  // All (rho, parity) ladders that occur anywhere.
  std::set<std::pair<RhoLabel, int>> ladders;
  HalfInt top(0);
  for (const auto& [key, v] : k) {
    ladders.insert({key.first, int(((key.second.twice % 2) + 2) % 2)});
    top = std::max(top, key.second);
  }
  for (const auto& [rho, x] : supp) {
    ladders.insert({rho, int(((x.twice % 2) + 2) % 2)});
    top = std::max(top, x);
  }
  auto kval = [&](const RhoLabel& rho, HalfInt z) {
    auto it = k.find({rho, z});
    return it == k.end() ? 0 : it->second;
  };
  for (const auto& [rho, parity] : ladders) {
    for (HalfInt x(parity); x <= top; x += HalfInt::whole(1)) {
      std::int64_t m = std::count(supp.begin(), supp.end(), std::make_pair(rho, x));
      std::int64_t expect = 0;
      for (HalfInt z = x; z <= top; z += HalfInt::whole(1)) expect += kval(rho, z);
      if (m != expect) return false;
    }
  }
  return true;
}

Step2Result step2_candidate(const LanglandsData& l) {
  for (const auto& d : l.deltas)
    if (d.x.twice < 0 || d.y.twice >= 0)
      throw std::invalid_argument(
          "step2_candidate requires every delta to satisfy x >= 0 > y "
          "(certified derivative-vanishing shape)");
  auto k = k_profile(l);
  auto kval = [&](const RhoLabel& rho, HalfInt z) {
    auto it = k.find({rho, z});
    return it == k.end() ? 0 : it->second;
  };
  std::set<std::pair<RhoLabel, int>> ladders;
  std::map<RhoLabel, HalfInt> top;
  for (const auto& [key, v] : k) {
    ladders.insert({key.first, int(((key.second.twice % 2) + 2) % 2)});
    auto [it, fresh] = top.emplace(key.first, key.second);
    if (!fresh) it->second = std::max(it->second, key.second);
  }
  Step2Result res;
  std::vector<Summand> summands;
  for (const auto& [rho, parity] : ladders) {
    for (HalfInt z(parity); z <= top.at(rho); z += HalfInt::whole(1)) {
      int kz = kval(rho, z), kz1 = kval(rho, z + HalfInt::whole(1));
      if (kz < kz1) {
        res.not_arthur = true;
        res.violation_rho = rho;
        res.violation_z = z;
        return res;
      }
      // delta_z in {0, 1/2} with z + delta_z integral.
      std::int64_t delta2 = z.is_integer() ? 0 : 1;
      std::int64_t a2 = z.twice + 2 + delta2;  // doubled (z + 1 + delta_z)
      std::int64_t b2 = z.twice + 2 - delta2;
      for (int m = 0; m < kz - kz1; ++m)
        summands.push_back({rho, int(a2 / 2), int(b2 / 2)});
    }
  }
  res.psi = make_aparameter(l.ctx, std::move(summands));
  if (res.psi.total_dim() != l.ctx.dual_dim())
    throw std::invalid_argument(
        "step2_candidate: candidate dimension mismatch; the input is not in the "
        "certified shape");
  return res;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

LanglandsData parse_langlands(const std::string& text) {
  // Normalize whitespace, keep structure characters separate.
  std::string norm;
  for (char c : text) {
    if (c == '(' || c == ')' || c == ',' || c == ';') {
      norm += ' ';
      norm += c;
      norm += ' ';
    } else if (c == '\n' || c == '\t') {
      norm += ' ';
    } else {
      norm += c;
    }
  }
  // Re-attach "L (" and "( x ) ^ s" forms: work on tokens instead.
  auto toks = split_ws(norm);
  std::size_t i = 0;
  auto need = [&](const std::string& what) -> std::string {
    if (i >= toks.size())
      throw std::invalid_argument("Langlands data: expected " + what + ", got end of input");
    return toks[i++];
  };
  if (need("'group'") != "group")
    throw std::invalid_argument("Langlands data must start with 'group'");
  std::string fam = need("family");
  GroupContext ctx;
  if (fam == "Sp")
    ctx.family = Family::Sp;
  else if (fam == "SOodd")
    ctx.family = Family::SO_odd;
  else
    throw std::invalid_argument("unknown group family: '" + fam + "'");
  if (need("'rank'") != "rank") throw std::invalid_argument("expected 'rank'");
  ctx.rank = std::stoi(need("rank value"));
  std::string l_tok = need("'L('");
  if (l_tok == "L") {
    if (need("'('") != "(") throw std::invalid_argument("expected '(' after L");
  } else if (l_tok != "L(") {
    throw std::invalid_argument("expected 'L(' in Langlands data");
  }

  LanglandsData out;
  out.ctx = ctx;
  // Deltas until ';'.
  while (true) {
    std::string t = need("delta or ';'");
    if (t == ";") break;
    if (t == ",") continue;
    if (t.rfind("D[", 0) != 0)
      throw std::invalid_argument("expected D[x,y]@rho, got '" + t + "'");
    auto close = t.find(']');
    auto at = t.find('@');
    if (close == std::string::npos || at == std::string::npos || at < close)
      throw std::invalid_argument("malformed delta '" + t + "'");
    std::string inner = t.substr(2, close - 2);
    auto comma = inner.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("malformed delta '" + t + "'");
    Delta d;
    d.x = parse_halfint(inner.substr(0, comma));
    d.y = parse_halfint(inner.substr(comma + 1));
    d.rho = parse_rho(t.substr(at + 1));
    out.deltas.push_back(d);
  }
  // Tempered entries "(x)^s ... @rho" until ')'.
  std::vector<std::pair<HalfInt, int>> pending;
  std::vector<Summand> summands;
  while (true) {
    std::string t = need("tempered entry or ')'");
    if (t == ")") break;
    if (t == "(") {
      // "( x ) ^ s" was split by the normalizer: stitch it back.
      std::string x_text = need("exponent");
      if (need("')'") != ")") throw std::invalid_argument("malformed tempered entry");
      std::string caret = need("'^sign'");
      if (caret.rfind("^", 0) != 0) throw std::invalid_argument("malformed tempered entry");
      int sign = caret == "^+" ? +1 : caret == "^-" ? -1 : 0;
      if (sign == 0) throw std::invalid_argument("malformed tempered sign '" + caret + "'");
      pending.emplace_back(parse_halfint(x_text), sign);
      continue;
    }
    if (t[0] == '@') {
      RhoLabel rho = parse_rho(t.substr(1));
      for (auto& [x, sign] : pending) {
        if (x.twice < 0)
          throw std::invalid_argument("tempered exponent must be >= 0");
        int a = int(x.twice + 1);
        summands.push_back({rho, a, 1});
        auto [it, fresh] = out.tempered.eps.emplace(std::make_pair(rho, a), sign);
        if (!fresh && it->second != sign)
          throw std::invalid_argument("conflicting signs for one tempered class");
      }
      pending.clear();
      continue;
    }
    // Compact "(x)^s" token.
    if (t[0] == '(') {
      auto close = t.find(")^");
      if (close == std::string::npos)
        throw std::invalid_argument("malformed tempered entry '" + t + "'");
      std::string x_text = t.substr(1, close - 1);
      std::string s_text = t.substr(close + 2);
      int sign = s_text == "+" ? +1 : s_text == "-" ? -1 : 0;
      if (sign == 0) throw std::invalid_argument("malformed tempered sign '" + t + "'");
      pending.emplace_back(parse_halfint(x_text), sign);
      continue;
    }
    throw std::invalid_argument("unexpected token '" + t + "' in tempered part");
  }
  if (!pending.empty())
    throw std::invalid_argument("tempered entries without a trailing @rho");
  out.tempered.phi = make_aparameter(ctx, std::move(summands));
  return canonical(out);
}

}  // namespace ems
