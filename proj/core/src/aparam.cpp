#include "ems/aparam.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ems {

RhoLabel parse_rho(const std::string& text) {
  if (text == "1" || text == "triv") return trivial_rho();
  if (text.rfind("rho:", 0) != 0)
    throw std::invalid_argument("malformed rho literal: '" + text + "'");
  auto p1 = text.find(':', 4);
  auto p2 = (p1 == std::string::npos) ? p1 : text.find(':', p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw std::invalid_argument("malformed rho literal: '" + text + "'");
  RhoLabel r;
  r.name = text.substr(4, p1 - 4);
  r.dim = std::stoi(text.substr(p1 + 1, p2 - p1 - 1));
  std::string d = text.substr(p2 + 1);
  if (r.name.empty() || r.dim <= 0 || (d != "O" && d != "S"))
    throw std::invalid_argument("malformed rho literal: '" + text + "'");
  r.duality = (d == "O") ? Duality::orthogonal : Duality::symplectic;
  return r;
}

void AParameter::canonicalize() { std::sort(summands.begin(), summands.end()); }

std::int64_t AParameter::total_dim() const {
  std::int64_t d = 0;
  for (const auto& s : summands) d += s.dim();
  return d;
}

AParameter make_aparameter(GroupContext ctx, std::vector<Summand> summands) {
  for (const auto& s : summands)
    if (s.a < 1 || s.b < 1)
      throw std::invalid_argument("summand with non-positive S_a or S_b");
  AParameter psi{ctx, std::move(summands)};
  psi.canonicalize();
  return psi;
}

bool summand_good_parity(const GroupContext& ctx, const Summand& s) {
  bool even = (s.a + s.b) % 2 == 0;
  if (ctx.family == Family::Sp)
    return s.rho.duality == Duality::orthogonal ? even : !even;
  return s.rho.duality == Duality::orthogonal ? !even : even;
}

bool is_good_parity(const AParameter& psi) {
  return std::all_of(psi.summands.begin(), psi.summands.end(),
                     [&](const Summand& s) { return summand_good_parity(psi.ctx, s); });
}

bool is_tempered(const AParameter& psi) {
  return std::all_of(psi.summands.begin(), psi.summands.end(),
                     [](const Summand& s) { return s.b == 1; });
}

AParameter diagonal_restriction(const AParameter& psi) {
  std::vector<Summand> out;
  for (const auto& s : psi.summands) {
    int m = std::min(s.a, s.b);
    for (int k = 0; k < m; ++k) out.push_back({s.rho, s.a + s.b - 1 - 2 * k, 1});
  }
  return make_aparameter(psi.ctx, std::move(out));
}

SupportMultiset ex_supp_of_psi(const AParameter& psi) {
  SupportMultiset out;
  for (const auto& s : diagonal_restriction(psi).summands) {
    // Exponents (a-1)/2, (a-3)/2, ..., -(a-1)/2.
    for (int k = 0; k < s.a; ++k) out.emplace_back(s.rho, HalfInt(s.a - 1 - 2 * k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int multiplicity(const AParameter& phi, const RhoLabel& rho, int a) {
  if (!is_tempered(phi))
    throw std::invalid_argument("multiplicity queried on a non-tempered parameter");
  int n = 0;
  for (const auto& s : phi.summands)
    if (s.rho == rho && s.a == a) ++n;
  return n;
}

bool validate_sign_character(const TemperedParamWithSign& t) {
  if (!is_tempered(t.phi))
    throw std::invalid_argument("sign character attached to a non-tempered parameter");
  int product = 1;
  for (const auto& s : t.phi.summands) {
    auto it = t.eps.find({s.rho, s.a});
    if (it == t.eps.end())
      throw std::invalid_argument("sign character misses the class " + to_string(s));
    if (it->second != 1 && it->second != -1)
      throw std::invalid_argument("sign character value must be +1 or -1");
    product *= it->second;
  }
  return product == 1;
}

std::string to_string(const Summand& s) {
  std::string t = "S" + std::to_string(s.a);
  if (s.b != 1) t += "*S" + std::to_string(s.b);
  t += "@" + to_string(s.rho);
  return t;
}

std::string to_string(const AParameter& psi) {
  if (psi.summands.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < psi.summands.size();) {
    std::size_t j = i;
    while (j < psi.summands.size() && psi.summands[j] == psi.summands[i]) ++j;
    if (i) os << " + ";
    os << to_string(psi.summands[i]);
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

AParameter parse_aparameter(GroupContext ctx, const std::string& text) {
  std::vector<Summand> out;
  std::string t = strip(text);
  if (t == "0" || t.empty()) return make_aparameter(ctx, {});
  std::size_t pos = 0;
  while (pos < t.size()) {
    auto plus = t.find('+', pos);
    std::string term = strip(t.substr(pos, plus == std::string::npos ? plus : plus - pos));
    pos = plus == std::string::npos ? t.size() : plus + 1;
    if (term.empty()) throw std::invalid_argument("empty summand term");
    int mult = 1;
    if (auto caret = term.find('^'); caret != std::string::npos) {
      mult = std::stoi(term.substr(caret + 1));
      term = strip(term.substr(0, caret));
    }
    Summand s{trivial_rho(), 1, 1};
    if (auto at = term.find('@'); at != std::string::npos) {
      s.rho = parse_rho(strip(term.substr(at + 1)));
      term = strip(term.substr(0, at));
    }
    if (term.empty() || (term[0] != 'S' && term[0] != 's'))
      throw std::invalid_argument("malformed summand term: '" + term + "'");
    term = term.substr(1);
    if (!term.empty() && term[0] == '_') term = term.substr(1);
    auto star = term.find('*');
    if (star == std::string::npos) {
      s.a = std::stoi(term);
    } else {
      s.a = std::stoi(term.substr(0, star));
      std::string bpart = strip(term.substr(star + 1));
      if (bpart.empty() || (bpart[0] != 'S' && bpart[0] != 's'))
        throw std::invalid_argument("malformed summand term: second factor");
      bpart = bpart.substr(1);
      if (!bpart.empty() && bpart[0] == '_') bpart = bpart.substr(1);
      s.b = std::stoi(bpart);
    }
    if (mult < 1) throw std::invalid_argument("multiplicity suffix must be positive");
    for (int i = 0; i < mult; ++i) out.push_back(s);
  }
  return make_aparameter(ctx, std::move(out));
}

}  // namespace ems
