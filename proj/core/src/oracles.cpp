#include "ems/oracles.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ems {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

FixtureDerivativeOracle::Result FixtureDerivativeOracle::query(const LanglandsData& pi,
                                                               const RhoLabel& rho,
                                                               int direction) const {
  auto idit = id_by_text_.find(to_text(pi));
  if (idit == id_by_text_.end()) return {Answer::no_data, {}};
  auto rit = records_.find({idit->second, rho, direction});
  if (rit == records_.end()) return {Answer::no_data, {}};
  if (rit->second.none) return {Answer::none_in_direction, {}};
  DerivativeReport rep;
  rep.rho = rho;
  rep.direction = direction;
  rep.x = rit->second.x;
  rep.counts = rit->second.counts;
  rep.residual = pis_.at(rit->second.residual_id);
  return {Answer::report, rep};
}

std::optional<LanglandsData> FixtureDerivativeOracle::by_id(const std::string& id) const {
  auto it = pis_.find(id);
  if (it == pis_.end()) return std::nullopt;
  return it->second;
}

FixtureDerivativeOracle FixtureDerivativeOracle::parse(const std::string& text) {
  FixtureDerivativeOracle oracle;
  std::istringstream all(text);
  std::string raw;
  std::vector<std::tuple<std::string, std::string>> residual_checks;
  while (std::getline(all, raw)) {
    std::string line = strip_comment(raw);
    std::istringstream is(line);
    std::string kind;
    if (!(is >> kind)) continue;
    if (kind == "PI") {
      std::string id, eq;
      if (!(is >> id >> eq) || eq != "=")
        throw std::invalid_argument("derivative fixture: malformed PI line: " + raw);
      std::string rest;
      std::getline(is, rest);
      LanglandsData l = parse_langlands(rest);
      auto issues = validate_langlands(l);
      if (!issues.empty())
        throw std::invalid_argument("derivative fixture: PI " + id +
                                    " is invalid: " + issues.front());
      if (!oracle.pis_.emplace(id, l).second)
        throw std::invalid_argument("derivative fixture: duplicate PI id " + id);
      oracle.id_by_text_[to_text(l)] = id;
    } else if (kind == "D") {
      std::string id, rho_text, dir_text;
      if (!(is >> id >> rho_text >> dir_text))
        throw std::invalid_argument("derivative fixture: malformed D line: " + raw);
      if (!rho_text.empty() && rho_text[0] == '@') rho_text = rho_text.substr(1);
      RhoLabel rho = parse_rho(rho_text);
      int dir = dir_text == "+" ? +1 : dir_text == "-" ? -1 : 0;
      if (dir == 0)
        throw std::invalid_argument("derivative fixture: direction must be + or -: " + raw);
      Record rec;
      std::string tok;
      if (!(is >> tok))
        throw std::invalid_argument("derivative fixture: truncated D line: " + raw);
      if (tok == "none") {
        rec.none = true;
      } else {
        if (tok.rfind("x=", 0) != 0)
          throw std::invalid_argument("derivative fixture: expected x=<v>: " + raw);
        rec.x = parse_halfint(tok.substr(2));
        if (!(is >> tok) || tok.rfind("k=", 0) != 0)
          throw std::invalid_argument("derivative fixture: expected k=<list>: " + raw);
        std::string list = tok.substr(2);
        std::size_t pos = 0;
        while (pos <= list.size()) {
          auto comma = list.find(',', pos);
          std::string item = list.substr(pos, comma == std::string::npos ? comma : comma - pos);
          int kd = std::stoi(item);
          if (kd < 1)
            throw std::invalid_argument("derivative fixture: counts must be >= 1: " + raw);
          rec.counts.push_back(kd);
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
        std::string arrow, rid;
        if (!(is >> arrow >> rid) || arrow != "->")
          throw std::invalid_argument("derivative fixture: expected -> <id>: " + raw);
        rec.residual_id = rid;
        residual_checks.emplace_back(rid, raw);
        if (dir == +1 && rec.x.twice < 2)
          throw std::invalid_argument("derivative fixture: + reports need x >= 1: " + raw);
        if (dir == -1 && rec.x.twice >= 0)
          throw std::invalid_argument("derivative fixture: - reports need x < 0: " + raw);
      }
      auto key = std::make_tuple(id, rho, dir);
      if (!oracle.records_.emplace(key, rec).second)
        throw std::invalid_argument("derivative fixture: duplicate D record: " + raw);
    } else {
      throw std::invalid_argument("derivative fixture: unknown record kind: " + raw);
    }
  }
  for (const auto& [rid, raw] : residual_checks)
    if (!oracle.pis_.count(rid))
      throw std::invalid_argument("derivative fixture: unknown residual id in: " + raw);
  for (const auto& [key, rec] : oracle.records_) {
    if (!oracle.pis_.count(std::get<0>(key)))
      throw std::invalid_argument("derivative fixture: D record for unknown PI " +
                                  std::get<0>(key));
  }
  return oracle;
}

FixtureDerivativeOracle FixtureDerivativeOracle::load_file(const std::string& path) {
  return parse(slurp(path));
}

std::optional<LanglandsData> FixtureEvalOracle::langlands_of(
    const ExtendedMultiSegment& e) const {
  auto it = by_e_.find(to_oneline(weak_normalize(e)));
  if (it == by_e_.end()) return std::nullopt;
  return it->second;
}

std::vector<ExtendedMultiSegment> FixtureEvalOracle::lookup_by_langlands(
    const LanglandsData& l) const {
  std::vector<ExtendedMultiSegment> out;
  auto it = by_l_.find(to_text(l));
  if (it == by_l_.end()) return out;
  for (const auto& key : it->second) out.push_back(parse_oneline(key));
  return out;
}

FixtureEvalOracle FixtureEvalOracle::parse(const std::string& text) {
  FixtureEvalOracle oracle;
  std::istringstream all(text);
  std::string raw;
  while (std::getline(all, raw)) {
    std::string line = strip_comment(raw);
    std::string t = line;
    auto first = t.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    t = t.substr(first);
    if (t.rfind("EVAL ", 0) != 0)
      throw std::invalid_argument("eval fixture: lines must start with EVAL: " + raw);
    auto arrow = t.find(" -> ");
    if (arrow == std::string::npos)
      throw std::invalid_argument("eval fixture: missing ' -> ': " + raw);
    std::string e_text = t.substr(5, arrow - 5);
    std::string l_text = t.substr(arrow + 4);
    ExtendedMultiSegment e = parse_oneline(e_text);
    if (!validate(e).empty())
      throw std::invalid_argument("eval fixture: invalid multi-segment: " + raw);
    LanglandsData l = parse_langlands(l_text);
    auto issues = validate_langlands(l);
    if (!issues.empty())
      throw std::invalid_argument("eval fixture: invalid Langlands data (" + issues.front() +
                                  "): " + raw);
    std::string key = to_oneline(e);
    if (oracle.by_e_.count(key))
      throw std::invalid_argument("eval fixture: duplicate key: " + raw);
    oracle.by_e_[key] = l;
    oracle.by_l_[to_text(l)].push_back(key);
  }
  return oracle;
}

FixtureEvalOracle FixtureEvalOracle::load_file(const std::string& path) {
  return parse(slurp(path));
}

}  // namespace ems
