#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ems/langlands.hpp"
#include "ems/multiseg.hpp"

namespace ems {

// Extremal-exponent derivative cascade [(x,k0),(x+-1,k1),...; residual].
struct DerivativeReport {
  RhoLabel rho;
  int direction = +1;  // +1 or -1
  HalfInt x;
  std::vector<int> counts;  // k0..k_{t-1}, all >= 1
  LanglandsData residual;
};

// Answers are stable across calls; uncovered queries are an explicit
// no-data outcome, never a guess.
class DerivativeOracle {
 public:
  enum class Answer { report, none_in_direction, no_data };
  struct Result {
    Answer answer = Answer::no_data;
    DerivativeReport report;
  };
  virtual ~DerivativeOracle() = default;
  // direction = +1 asks for the cascade at x = max{z : D != 0} when some
  // z >= 1 has D != 0; direction = -1 for x = min when some z < 0 does.
  // none_in_direction certifies that no such z exists.
  virtual Result query(const LanglandsData& pi, const RhoLabel& rho,
                       int direction) const = 0;
};

class EvalOracle {
 public:
  virtual ~EvalOracle() = default;
  virtual std::optional<LanglandsData> langlands_of(const ExtendedMultiSegment& e) const = 0;
  virtual std::vector<ExtendedMultiSegment> lookup_by_langlands(
      const LanglandsData& l) const = 0;
};

// File-backed oracle.  Records:
//   PI <id> = group <family> rank <n> L( ... ; ... )
//   D <id> <rho> <+|-> x=<v> k=<k0,k1,...> -> <id'>
//   D <id> <rho> <+|-> none
class FixtureDerivativeOracle : public DerivativeOracle {
 public:
  Result query(const LanglandsData& pi, const RhoLabel& rho, int direction) const override;

  static FixtureDerivativeOracle parse(const std::string& text);
  static FixtureDerivativeOracle load_file(const std::string& path);

  std::optional<LanglandsData> by_id(const std::string& id) const;

 private:
  struct Record {
    bool none = false;
    HalfInt x;
    std::vector<int> counts;
    std::string residual_id;
  };
  std::map<std::string, LanglandsData> pis_;
  std::map<std::string, std::string> id_by_text_;
  std::map<std::tuple<std::string, RhoLabel, int>, Record> records_;
};

// File-backed eval oracle.  Records:
//   EVAL <one-line multi-segment> -> group <family> rank <n> L( ... )
class FixtureEvalOracle : public EvalOracle {
 public:
  std::optional<LanglandsData> langlands_of(const ExtendedMultiSegment& e) const override;
  std::vector<ExtendedMultiSegment> lookup_by_langlands(
      const LanglandsData& l) const override;

  static FixtureEvalOracle parse(const std::string& text);
  static FixtureEvalOracle load_file(const std::string& path);

 private:
  std::map<std::string, LanglandsData> by_e_;
  std::map<std::string, std::vector<std::string>> by_l_;
};

}  // namespace ems
