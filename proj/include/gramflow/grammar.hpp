#pragma once

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gramflow/symbols.hpp"

namespace gramflow {

// A rewriting rule lhs -> rhs with optional weights: a branch probability,
// a complex amplitude, and an event rate (per unit time).
struct Production {
  Word lhs;
  Word rhs;
  std::optional<double> probability;
  std::optional<std::complex<double>> amplitude;
  std::optional<double> rate;

  bool operator==(const Production&) const = default;
};

// strict: lhs must contain a nonterminal. relaxed: any non-empty lhs,
// as used by the asynchronous process where rules act on terminal letters.
enum class GrammarMode { strict, relaxed };

struct Grammar {
  std::vector<Symbol> nonterminals;  // declaration order
  std::vector<Symbol> terminals;     // declaration order
  std::vector<Production> productions;
  Symbol axiom;
  GrammarMode mode = GrammarMode::strict;

  bool operator==(const Grammar&) const = default;

  bool declares(const Symbol& s) const;
  std::optional<Symbol> find_symbol(const std::string& name) const;

  // Terminals first, then nonterminals, each in declaration order. This is
  // the ordering used for basis enumeration.
  std::vector<Symbol> basis_alphabet() const;

  Word axiom_word() const { return Word{axiom}; }
};

// Throws Error on any structural violation: empty nonterminal alphabet,
// alphabet overlap, undeclared symbol in a rule, empty or (in strict mode)
// all-terminal lhs, axiom not a nonterminal, duplicate (lhs, rhs) pair.
void validate_grammar(const Grammar& g);

std::set<Word> domain_of(const std::vector<Production>& productions);
std::set<Word> range_of(const std::vector<Production>& productions,
                        const Word& lhs);

// Maximum number of alternative rhs per lhs; 0 for an empty rule set,
// 1 means the rule set is the graph of a function (deterministic).
int descendance_degree(const Grammar& g);

// The largest k in {3,2,1,0} such that every production matches the
// type-k pattern; the patterns are tested independently. Regular means
// right-linear unless accept_left_linear is set. Strict mode only.
int chomsky_degree(const Grammar& g, bool accept_left_linear = false);

enum class WeightMode { stochastic, quantum, rates };

struct WeightReport {
  WeightMode mode = WeightMode::stochastic;
  bool valid = false;
  // |sum - 1| per lhs for stochastic/quantum mode; empty for rates.
  std::map<Word, double> residuals;
  std::vector<std::string> problems;
};

// Checks per-lhs normalisation (stochastic: sum p = 1, quantum:
// sum |u|^2 = 1, both within 1e-9) or positivity of every rate. Missing
// fields are reported as problems, never filled in.
WeightReport validate_weights(const Grammar& g, WeightMode mode);

inline constexpr double kWeightTolerance = 1e-9;

struct ClassificationReport {
  int descendance_degree = 0;
  int chomsky_degree = 0;
  bool stochastic_valid = false;
  bool quantum_valid = false;
  std::map<Word, std::size_t> per_lhs_branch_counts;
};

ClassificationReport classify(const Grammar& g);

}  // namespace gramflow
