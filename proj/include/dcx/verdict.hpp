#pragma once

// Each structure theorem run as a decision procedure on one instance. A report
// is INCONSISTENT only when conclusively certified routes disagree; anything
// resting on an UpToBound input is inconclusive.

#include <string>
#include <utility>
#include <vector>

#include "dcx/sdc.hpp"

namespace dcx {

enum class TheoremId {
  Anni,
  BassCriterion,
  TypeEquiv,
  Tak,
  ModuleCor,
  GradeCm,
  MainEquiv,
  AuslanderChar,
  CutRegular,
  QBass,
  QAmp,
};

std::string_view to_string(TheoremId id);
/// Accepts the snake_case names used by to_string; throws ValidationError otherwise.
TheoremId theorem_from_string(std::string_view name);
const std::vector<TheoremId>& all_theorems();

enum class Conclusion { Consistent, Inconsistent, Inconclusive, HypothesesNotMet };
std::string_view to_string(Conclusion c);

struct Condition {
  std::string name;
  std::string value;
  Certificate certificate;
};

struct TheoremReport {
  TheoremId id = TheoremId::Anni;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Condition> conditions;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string details;

  const Condition* condition(std::string_view name) const;
};

/// A complex together with the name reports refer to it by.
struct Named {
  std::string name;
  Complex x;
};
using Pool = std::vector<Named>;

TheoremReport check_anni(const Named& c, const DerivedOptions& opts = {});
TheoremReport check_bass_criterion(const Named& c, const DerivedOptions& opts = {});
TheoremReport check_type_equiv(const Named& c, const Pool& zs, const DerivedOptions& opts = {});
TheoremReport check_tak(const Named& c, const Named& m, const DerivedOptions& opts = {});
TheoremReport check_module_cor(const Named& c, const Pool& ms, const DerivedOptions& opts = {});
TheoremReport check_grade_cm(const Named& c, const Named& x, const DerivedOptions& opts = {});
TheoremReport check_main_equiv(const Named& c, const Named& x, const DerivedOptions& opts = {});
TheoremReport check_auslander_char(const Named& c, const Pool& ms, const DerivedOptions& opts = {});
/// `xs` are ring elements given as coordinate columns, with display names.
TheoremReport cut_regular(const Named& c, const Named& m, const std::vector<std::pair<std::string, Mat>>& xs,
                          const DerivedOptions& opts = {});

enum class Question { Bass, Amp };
TheoremReport explore_question(Question q, const Named& c, const Pool& pool, const DerivedOptions& opts = {});

/// Every checker on every built-in ring, for each semidualizing candidate C
/// (R, ω, and on prod the two mixed products). Output order is fixed.
struct CorpusRunOptions {
  DerivedOptions derived;
  std::vector<std::string> rings;  ///< empty means all
  unsigned threads = 0;            ///< 0 means hardware concurrency
};
std::vector<TheoremReport> run_corpus(const CorpusRunOptions& opts = {});

/// The candidate C and the module pool used by run_corpus for one ring.
Pool corpus_candidates(const std::string& ring);
Pool corpus_pool(const std::string& ring);

}  // namespace dcx
