#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gramflow/grammar.hpp"
#include "gramflow/rng.hpp"

namespace gramflow {

// A concrete occurrence of a production's lhs inside a word.
struct Redex {
  std::size_t position = 0;
  std::size_t production_index = 0;

  bool operator==(const Redex&) const = default;
};

struct DerivationStep {
  Word before;
  Redex redex;
  Word after;
  // Probability of the random choices that produced this step
  // (position factor times branch probability).
  double choice_probability = 1.0;
};

struct ComputationalPath {
  Word start;
  std::vector<DerivationStep> steps;
  bool halted = false;
  double log_probability = 0.0;

  const Word& final_word() const {
    return steps.empty() ? start : steps.back().after;
  }
};

// All (position, production) occurrences, ordered by position then
// production index.
std::vector<Redex> find_redexes(const Word& w, const Grammar& g);

// Replaces the lhs occurrence at r.position by the production's rhs.
// Throws if the lhs is not actually there (stale redex).
Word apply_redex(const Word& w, const Redex& r, const Grammar& g);

bool directly_derivable(const Word& a, const Word& b, const Grammar& g);

enum class RedexPolicy { leftmost, uniform };

// Repeatedly picks a redex site per policy and a branch per stochastic
// weight, starting from the axiom. Stops when no redex remains (halted)
// or after max_steps. Nondeterministic grammars must be stochastically
// valid; branch probability defaults to 1 where an lhs has one rhs.
ComputationalPath sample_path(const Grammar& g, int max_steps,
                              RedexPolicy policy, std::uint64_t seed);

struct EnumerateOptions {
  std::size_t max_word_len = 0;
  bool terminal_only = true;
  // Guard against unit-production cycles, which would make the sum over
  // leftmost derivations infinite.
  std::size_t max_expansions = 1'000'000;
};

// Closure of leftmost derivation from the axiom, pruned on the minimal
// completable length of each sentential form. Probabilities are sums over
// distinct leftmost derivations of the product of branch probabilities.
// Requires a strict context-free grammar.
std::map<Word, double> enumerate_language(const Grammar& g,
                                          const EnumerateOptions& opt);

// Minimal terminal yield per nonterminal (fixed point; a value >= kInfYield
// means no terminal completion exists).
inline constexpr std::size_t kInfYield = static_cast<std::size_t>(1) << 40;
std::map<Symbol, std::size_t> shortest_terminal_yields(const Grammar& g);

struct SecondaryStructure {
  Word word;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // i < j
  std::string dot_bracket;
};

// Replays a halted context-free path and pairs the two flanking terminals
// of every production application of shape X -> t1 ... t2. Positions are
// tracked through to the final word.
SecondaryStructure extract_pairing(const ComputationalPath& path,
                                   const Grammar& g);

}  // namespace gramflow
