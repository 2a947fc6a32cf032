#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ems/arthur.hpp"
#include "ems/dsl.hpp"
#include "ems/symbol.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitIncomplete = 2;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Options {
  std::string input;
  std::string input2;
  std::string kernel_path;
  std::string derivatives_path;
  std::string eval_path;
  int phantom_max = -1;
  bool json = false;
  bool group_by_c = false;
  std::string rho_text = "1";
  std::string dir_text = "+";
  std::string x_text;
  std::string counts_text;
};

ems::Bounds bounds_of(const Options& opt) {
  ems::Bounds b;
  b.phantom_l_max = opt.phantom_max;
  return b;
}

ems::ExtendedMultiSegment load_ems(const std::string& path) {
  return ems::parse_rows(slurp(path));
}

ems::LanglandsData load_lng(const std::string& path) {
  auto l = ems::parse_langlands(slurp(path));
  auto issues = ems::validate_langlands(l);
  if (!issues.empty())
    throw std::runtime_error("invalid Langlands data: " + issues.front());
  return l;
}

ems::KernelTable load_kernel(const Options& opt) {
  if (opt.kernel_path.empty()) throw std::runtime_error("--kernel <file> is required");
  return ems::KernelTable::load_file(opt.kernel_path);
}

// Members that differ only by kernel-covered order swaps collapse to one
// representative (the canonically smallest member of the orbit).
std::vector<std::vector<std::string>> c_orbits(const ems::ClassEnumeration& cls) {
  std::map<std::string, std::string> leader;
  for (const auto& m : cls.members) {
    auto key = to_oneline(m);
    leader[key] = key;
  }
  std::function<std::string(const std::string&)> find = [&](const std::string& k) {
    return leader.at(k) == k ? k : leader[k] = find(leader.at(k));
  };
  for (const auto& e : cls.edges) {
    bool only_c = !e.steps.empty();
    for (const auto& s : e.steps) only_c &= s.op == ems::OpKind::C;
    if (!only_c) continue;
    auto a = find(e.from), b = find(e.to);
    if (a != b) leader[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& m : cls.members) {
    auto key = to_oneline(m);
    groups[find(key)].push_back(key);
  }
  std::vector<std::vector<std::string>> out;
  for (auto& [rep, list] : groups) out.push_back(list);
  return out;
}

int run_class(const Options& opt) {
  auto e = load_ems(opt.input);
  auto kernel = load_kernel(opt);
  auto cls = ems::enumerate_class(e, kernel, bounds_of(opt));
  if (opt.json) {
    auto j = ems::to_json(cls);
    if (opt.group_by_c) {
      nlohmann::json orbits = nlohmann::json::array();
      for (const auto& orbit : c_orbits(cls)) orbits.push_back(orbit);
      j["c_orbits"] = orbits;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "members: " << cls.members.size() << (cls.exhausted ? " (exhausted)" : "")
              << "\n";
    for (const auto& m : cls.members)
      std::cout << "  " << to_oneline(m) << "   psi = " << to_string(psi_of(m)) << "\n";
    if (opt.group_by_c) {
      std::cout << "order-swap orbits:\n";
      for (const auto& orbit : c_orbits(cls)) {
        std::cout << "  {";
        for (std::size_t i = 0; i < orbit.size(); ++i)
          std::cout << (i ? " ; " : " ") << orbit[i];
        std::cout << " }\n";
      }
    }
    std::cout << "edges: " << cls.edges.size() << "\n";
    for (const auto& g : cls.gaps) std::cout << "gap: " << g << "\n";
    if (cls.bound_hit) std::cout << "search bound hit\n";
  }
  return cls.exhausted ? kExitOk : kExitIncomplete;
}

int run_decide(const Options& opt) {
  auto l = load_lng(opt.input);
  auto kernel = load_kernel(opt);
  if (opt.derivatives_path.empty() || opt.eval_path.empty())
    throw std::runtime_error("--derivatives and --eval fixture files are required");
  auto dor = ems::FixtureDerivativeOracle::load_file(opt.derivatives_path);
  auto eor = ems::FixtureEvalOracle::load_file(opt.eval_path);
  auto verdict = ems::decide_arthur(l, kernel, dor, eor, bounds_of(opt));
  if (opt.json) {
    std::cout << ems::to_json(verdict).dump(2) << "\n";
  } else {
    std::cout << to_string(verdict.status) << "\n";
    for (const auto& [e, psi] : verdict.witnesses)
      std::cout << "  witness " << to_oneline(e) << "   psi = " << to_string(psi) << "\n";
    for (const auto& t : verdict.trace) std::cout << "  " << t << "\n";
    for (const auto& g : verdict.gaps) std::cout << "  gap: " << g << "\n";
  }
  return verdict.status == ems::ArthurVerdict::Status::unknown ? kExitIncomplete : kExitOk;
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    out.push_back(std::stoi(text.substr(pos, comma == std::string::npos ? comma : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact engine for extended multi-segments: validation, rewrite-class "
               "enumeration and the Arthur-type decision procedure"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_kernel) {
    cmd->add_flag("--json", opt.json, "emit JSON");
    if (needs_kernel) {
      cmd->add_option("--kernel", opt.kernel_path, "kernel fixture file");
      cmd->add_option("--phantom-max", opt.phantom_max, "phantom size bound");
    }
    return cmd;
  };

  auto* validate = add_common(app.add_subcommand("validate", "check a multi-segment"), false);
  validate->add_option("input", opt.input)->required();
  auto* psi = add_common(app.add_subcommand("psi", "attached parameter of a multi-segment"), false);
  psi->add_option("input", opt.input)->required();
  auto* dr = add_common(app.add_subcommand("dr", "diagonal restriction of a parameter"), false);
  dr->add_option("input", opt.input, "parameter file ('-' for stdin); first line = group header, second = summand text")->required();
  auto* exsupp = add_common(app.add_subcommand("exsupp", "extended cuspidal support"), false);
  exsupp->add_option("input", opt.input, ".lng or .ems file")->required();
  auto* render = add_common(app.add_subcommand("render", "render the plain-text symbol"), false);
  render->add_option("input", opt.input)->required();
  auto* parse = add_common(app.add_subcommand("parse", "parse a symbol block back to rows"), false);
  parse->add_option("input", opt.input)->required();
  auto* neigh = add_common(app.add_subcommand("neighbors", "one-step rewrites"), true);
  neigh->add_option("input", opt.input)->required();
  auto* cls = add_common(app.add_subcommand("class", "strong-equivalence class"), true);
  cls->add_option("input", opt.input)->required();
  cls->add_flag("--group-by-C", opt.group_by_c, "group members into order-swap orbits");
  auto* equiv = add_common(app.add_subcommand("equiv", "decide strong equivalence"), true);
  equiv->add_option("input", opt.input)->required();
  equiv->add_option("input2", opt.input2)->required();
  auto* step2 = add_common(app.add_subcommand("step2", "closed-form candidate parameter"), false);
  step2->add_option("input", opt.input, ".lng file")->required();
  auto* lift = add_common(app.add_subcommand("lift", "apply a derivative lifting"), false);
  lift->add_option("input", opt.input)->required();
  lift->add_option("--rho", opt.rho_text, "rho literal (default 1)");
  lift->add_option("--dir", opt.dir_text, "+ or -")->required();
  lift->add_option("--x", opt.x_text, "leading exponent")->required();
  lift->add_option("--counts", opt.counts_text, "k0,k1,...")->required();
  auto* decide = add_common(app.add_subcommand("decide", "Arthur-type decision"), true);
  decide->add_option("input", opt.input, ".lng file")->required();
  decide->add_option("--derivatives", opt.derivatives_path, "derivative fixture file");
  decide->add_option("--eval", opt.eval_path, "evaluation fixture file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      auto e = load_ems(opt.input);
      auto violations = ems::validate(e);
      if (opt.json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& v : violations)
          j.push_back({{"rule", v.rule}, {"row", v.row}, {"detail", v.detail}});
        std::cout << nlohmann::json{{"violations", j}}.dump(2) << "\n";
      } else if (violations.empty()) {
        std::cout << "valid\n";
      } else {
        for (const auto& v : violations) std::cout << v.rule << ": " << v.detail << "\n";
      }
      return violations.empty() ? kExitOk : kExitInputError;
    }
    if (psi->parsed()) {
      auto e = load_ems(opt.input);
      std::cout << to_string(psi_of(e)) << "\n";
      return kExitOk;
    }
    if (dr->parsed()) {
      std::istringstream is(slurp(opt.input));
      std::string header, body;
      std::getline(is, header);
      std::getline(is, body);
      std::istringstream hs(header);
      std::string kw, fam, rk;
      int rank;
      if (!(hs >> kw >> fam >> rk >> rank) || kw != "group" || rk != "rank")
        throw std::runtime_error("first line must be 'group <Sp|SOodd> rank <n>'");
      ems::GroupContext ctx{fam == "Sp" ? ems::Family::Sp : ems::Family::SO_odd, rank};
      auto psi_in = ems::parse_aparameter(ctx, body);
      std::cout << to_string(diagonal_restriction(psi_in)) << "\n";
      return kExitOk;
    }
    if (exsupp->parsed()) {
      std::string text = slurp(opt.input);
      ems::SupportMultiset supp;
      if (text.find("L(") != std::string::npos || text.find("L (") != std::string::npos) {
        supp = ems::ex_supp_of_langlands(ems::parse_langlands(text));
      } else {
        supp = ems::ex_supp_of_psi(psi_of(ems::parse_rows(text)));
      }
      for (const auto& [rho, x] : supp)
        std::cout << to_string(rho) << "|" << to_string(x) << "\n";
      return kExitOk;
    }
    if (render->parsed()) {
      std::cout << ems::render_symbol(load_ems(opt.input));
      return kExitOk;
    }
    if (parse->parsed()) {
      auto e = ems::parse_symbol(slurp(opt.input));
      if (opt.json)
        std::cout << ems::to_json(e).dump(2) << "\n";
      else
        std::cout << ems::render_rows(e);
      return kExitOk;
    }
    if (neigh->parsed()) {
      auto e = load_ems(opt.input);
      auto kernel = load_kernel(opt);
      auto ns = ems::neighbors(e, kernel, bounds_of(opt));
      for (const auto& item : ns.items) {
        std::cout << to_oneline(item.result) << "   via";
        for (const auto& s : item.steps) std::cout << " [" << to_string(s) << "]";
        std::cout << "\n";
      }
      for (const auto& g : ns.gaps) std::cout << "gap: " << g << "\n";
      return ns.gaps.empty() && !ns.bound_hit ? kExitOk : kExitIncomplete;
    }
    if (cls->parsed()) return run_class(opt);
    if (equiv->parsed()) {
      auto a = load_ems(opt.input);
      auto b = load_ems(opt.input2);
      auto kernel = load_kernel(opt);
      auto res = ems::strongly_equivalent(a, b, kernel, bounds_of(opt));
      switch (res.verdict) {
        case ems::EquivalenceResult::Verdict::yes: {
          std::cout << "yes (" << res.reason << ")\n";
          for (const auto& s : res.path) std::cout << "  " << to_string(s) << "\n";
          return kExitOk;
        }
        case ems::EquivalenceResult::Verdict::no:
          std::cout << "no (" << res.reason << ")\n";
          return kExitOk;
        case ems::EquivalenceResult::Verdict::unknown:
          std::cout << "unknown (" << res.reason << ")\n";
          return kExitIncomplete;
      }
    }
    if (step2->parsed()) {
      auto l = load_lng(opt.input);
      auto res = ems::step2_candidate(l);
      if (res.not_arthur)
        std::cout << "NotArthurType (k-profile increases at " << to_string(res.violation_rho)
                  << ", z = " << to_string(res.violation_z) << ")\n";
      else
        std::cout << to_string(res.psi) << "\n";
      return kExitOk;
    }
    if (lift->parsed()) {
      auto e = load_ems(opt.input);
      auto rho = ems::parse_rho(opt.rho_text);
      auto x = ems::parse_halfint(opt.x_text);
      auto counts = parse_counts(opt.counts_text);
      auto lifted = opt.dir_text == "-" ? ems::lift_minus(e, rho, x, counts)
                                        : ems::lift_plus(e, rho, x, counts);
      std::cout << ems::render_rows(lifted);
      return kExitOk;
    }
    if (decide->parsed()) return run_decide(opt);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
