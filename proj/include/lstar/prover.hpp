#pragma once

#include <string>
#include <vector>

#include "lstar/formula.hpp"

namespace lstar {

enum class Rule {
  Axiom,
  SlashL,
  SlashR,
  BackslashL,
  BackslashR,
  BangL,
  BangR,
  Perm1,
  Perm2,
  Contr
};

const char* rule_name(Rule r);

/// A rule-labelled proof tree. Each node records enough position metadata
/// (principal formula index, context-split length) to recheck the rule
/// instance locally.
struct Derivation {
  Sequent conclusion;
  Rule rule = Rule::Axiom;
  std::vector<Derivation> premises;
  int pos = -1;        // index of the principal formula in the conclusion
  int gamma_len = -1;  // length of the moved/split context block

  std::size_t count_rule(Rule r) const;
  std::size_t height() const;
};

struct SearchBudget {
  int max_depth = 60;
  int max_contractions = 2;
  int max_results = 1;
};

struct ProveResult {
  std::vector<Derivation> derivations;
  /// True when some branch was cut off by the depth or contraction budget,
  /// i.e. an empty result is "not found within budget" rather than a
  /// completed search of the bounded space.
  bool budget_exhausted = false;
};

/// Bounded backward proof search over the ten rules. Deterministic: rules in
/// a fixed order, context splits leftmost and shortest first. Pure; safe to
/// run concurrently.
ProveResult prove(const Sequent& s, const SearchBudget& b);

/// Validates every node as a correct rule instance, independently of how the
/// tree was produced. On failure *diagnostic names the first bad node.
bool check(const Derivation& d, std::string* diagnostic = nullptr);

struct PhraseDerivation {
  std::vector<Formula::Ptr> types;  // one chosen type per word
  Derivation derivation;
};

struct PhraseResult {
  std::vector<PhraseDerivation> derivations;
  bool budget_exhausted = false;
};

/// Tries every combination of one lexicon type per word and proves
/// (types |- goal). Throws std::runtime_error listing any missing words.
PhraseResult derive_phrase(const std::vector<std::string>& words, const Lexicon& lex,
                           const Formula::Ptr& goal, const SearchBudget& b);

std::string format_derivation(const Derivation& d);
std::string format_derivation_latex(const Derivation& d);

}  // namespace lstar
