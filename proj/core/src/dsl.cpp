#include "ems/dsl.hpp"

#include <sstream>
#include <stdexcept>

namespace ems {

ExtendedMultiSegment parse_rows(const std::string& text) {
  std::istringstream all(text);
  std::string raw;
  bool have_header = false;
  GroupContext ctx;
  std::vector<RhoBlock> blocks;
  auto block_for = [&](const RhoLabel& rho) -> RhoBlock& {
    for (auto& b : blocks)
      if (b.rho == rho) return b;
    blocks.push_back({rho, {}});
    return blocks.back();
  };
  int lineno = 0;
  while (std::getline(all, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string first;
    if (!(is >> first)) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + why);
    };
    if (first == "group") {
      std::string fam, rank_kw;
      int rank;
      if (!(is >> fam >> rank_kw >> rank) || rank_kw != "rank")
        fail("expected 'group <Sp|SOodd> rank <n>'");
      if (fam == "Sp")
        ctx.family = Family::Sp;
      else if (fam == "SOodd")
        ctx.family = Family::SO_odd;
      else
        fail("unknown group family '" + fam + "'");
      ctx.rank = rank;
      have_header = true;
      continue;
    }
    if (!have_header) fail("rows before the 'group' header");
    // "[A,B]@rho l=<n> eta=<+1|-1>"
    if (first.front() != '[') fail("expected a row '[A,B]@rho l=.. eta=..'");
    auto close = first.find(']');
    auto at = first.find('@');
    if (close == std::string::npos || at == std::string::npos || at < close)
      fail("malformed row head '" + first + "'");
    std::string inner = first.substr(1, close - 1);
    auto comma = inner.find(',');
    if (comma == std::string::npos) fail("malformed segment '" + first + "'");
    ExtendedSegment r;
    r.A = parse_halfint(inner.substr(0, comma));
    r.B = parse_halfint(inner.substr(comma + 1));
    RhoLabel rho = parse_rho(first.substr(at + 1));
    std::string ltok, etok;
    if (!(is >> ltok >> etok)) fail("row is missing 'l=' or 'eta='");
    if (ltok.rfind("l=", 0) != 0) fail("expected 'l=<n>'");
    r.l = std::stoi(ltok.substr(2));
    if (etok.rfind("eta=", 0) != 0) fail("expected 'eta=<+1|-1>'");
    std::string ev = etok.substr(4);
    if (ev == "+1" || ev == "+")
      r.eta = +1;
    else if (ev == "-1" || ev == "-")
      r.eta = -1;
    else
      fail("eta must be +1 or -1");
    std::string extra;
    if (is >> extra) fail("unexpected trailing token '" + extra + "'");
    block_for(rho).rows.push_back(r);
  }
  if (!have_header) throw std::invalid_argument("missing 'group' header");
  return make_multisegment(ctx, std::move(blocks));
}

std::string render_rows(const ExtendedMultiSegment& e) {
  std::ostringstream os;
  os << "group " << to_string(e.ctx.family) << " rank " << e.ctx.rank << "\n";
  for (const auto& blk : e.blocks)
    for (const auto& r : blk.rows)
      os << "[" << to_string(r.A) << "," << to_string(r.B) << "]@" << to_string(blk.rho)
         << " l=" << r.l << " eta=" << (r.eta > 0 ? "+1" : "-1") << "\n";
  return os.str();
}

nlohmann::json to_json(const ExtendedMultiSegment& e) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& blk : e.blocks)
    for (const auto& r : blk.rows)
      rows.push_back({{"rho", to_string(blk.rho)},
                      {"A", r.A.twice},
                      {"B", r.B.twice},
                      {"l", r.l},
                      {"eta", r.eta}});
  return {{"family", to_string(e.ctx.family)}, {"rank", e.ctx.rank}, {"rows", rows}};
}

ExtendedMultiSegment multisegment_from_json(const nlohmann::json& j) {
  GroupContext ctx;
  std::string fam = j.at("family").get<std::string>();
  if (fam == "Sp")
    ctx.family = Family::Sp;
  else if (fam == "SOodd")
    ctx.family = Family::SO_odd;
  else
    throw std::invalid_argument("unknown group family '" + fam + "'");
  ctx.rank = j.at("rank").get<int>();
  std::vector<RhoBlock> blocks;
  auto block_for = [&](const RhoLabel& rho) -> RhoBlock& {
    for (auto& b : blocks)
      if (b.rho == rho) return b;
    blocks.push_back({rho, {}});
    return blocks.back();
  };
  for (const auto& row : j.at("rows")) {
    ExtendedSegment r;
    r.A = HalfInt(row.at("A").get<std::int64_t>());
    r.B = HalfInt(row.at("B").get<std::int64_t>());
    r.l = row.at("l").get<int>();
    r.eta = row.at("eta").get<int>();
    block_for(parse_rho(row.at("rho").get<std::string>())).rows.push_back(r);
  }
  return make_multisegment(ctx, std::move(blocks));
}

nlohmann::json to_json(const RewriteStep& s) {
  nlohmann::json j{{"op", to_string(s.op)}, {"rho", to_string(s.rho)}};
  switch (s.op) {
    case OpKind::C:
    case OpKind::UI:
      j["pos"] = s.pos;
      break;
    case OpKind::UIinv:
      j["pos"] = s.pos;
      j["pair"] = s.pair;
      if (!s.pair) j["splitA"] = s.split_A2;
      break;
    case OpKind::Padd:
      j["kind"] = s.kind == PhantomKind::integral ? "int" : "half";
      j["l"] = s.l;
      break;
    case OpKind::Premove:
      break;
  }
  return j;
}

nlohmann::json to_json(const ClassEnumeration& c) {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : c.members) members.push_back(to_oneline(m));
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : c.edges) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : e.steps) steps.push_back(to_json(s));
    edges.push_back({{"from", e.from}, {"to", e.to}, {"steps", steps}});
  }
  return {{"members", members},
          {"edges", edges},
          {"exhausted", c.exhausted},
          {"gaps", c.gaps}};
}

nlohmann::json to_json(const ArthurVerdict& v) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& [e, psi] : v.witnesses)
    witnesses.push_back({{"E", to_oneline(e)}, {"psi", to_string(psi)}});
  return {{"status", to_string(v.status)},
          {"witnesses", witnesses},
          {"gaps", v.gaps},
          {"trace", v.trace}};
}

}  // namespace ems
