#include "gramflow/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gramflow/text.hpp"

namespace gramflow {

bool Grammar::declares(const Symbol& s) const {
  const auto& pool =
      s.kind == SymbolKind::terminal ? terminals : nonterminals;
  return std::find(pool.begin(), pool.end(), s) != pool.end();
}

std::optional<Symbol> Grammar::find_symbol(const std::string& name) const {
  for (const Symbol& s : terminals)
    if (s.name == name) return s;
  for (const Symbol& s : nonterminals)
    if (s.name == name) return s;
  return std::nullopt;
}

std::vector<Symbol> Grammar::basis_alphabet() const {
  std::vector<Symbol> out = terminals;
  out.insert(out.end(), nonterminals.begin(), nonterminals.end());
  return out;
}

namespace {

bool all_terminal(const Word& w) { return is_terminal_word(w); }

}  // namespace

void validate_grammar(const Grammar& g) {
  if (g.nonterminals.empty()) throw Error("nonterminal alphabet is empty");

  std::set<std::string> names;
  for (const Symbol& s : g.nonterminals) {
    if (s.name.empty()) throw Error("empty symbol name");
    if (!names.insert(s.name).second)
      throw Error("symbol '" + s.name + "' declared twice");
  }
  for (const Symbol& s : g.terminals) {
    if (s.name.empty()) throw Error("empty symbol name");
    if (!names.insert(s.name).second)
      throw Error("alphabets overlap on symbol '" + s.name + "'");
  }

  if (g.axiom.kind != SymbolKind::nonterminal || !g.declares(g.axiom))
    throw Error("axiom '" + g.axiom.name + "' is not a declared nonterminal");

  std::set<std::pair<Word, Word>> seen;
  for (const Production& p : g.productions) {
    if (p.lhs.empty()) throw Error("production with empty lhs");
    if (g.mode == GrammarMode::strict && all_terminal(p.lhs))
      throw Error("strict mode: lhs '" + word_to_string(p.lhs) +
                  "' is all-terminal");
    for (const Word* side : {&p.lhs, &p.rhs})
      for (const Symbol& s : *side)
        if (!g.declares(s))
          throw Error("undeclared symbol '" + s.name + "' in production");
    if (!seen.insert({p.lhs, p.rhs}).second)
      throw Error("duplicate production " + word_to_string(p.lhs) + " -> " +
                  word_to_string(p.rhs));
  }
}

std::set<Word> domain_of(const std::vector<Production>& productions) {
  std::set<Word> out;
  for (const Production& p : productions) out.insert(p.lhs);
  return out;
}

std::set<Word> range_of(const std::vector<Production>& productions,
                        const Word& lhs) {
  std::set<Word> out;
  for (const Production& p : productions)
    if (p.lhs == lhs) out.insert(p.rhs);
  return out;
}

int descendance_degree(const Grammar& g) {
  std::map<Word, std::set<Word>> branches;
  for (const Production& p : g.productions) branches[p.lhs].insert(p.rhs);
  std::size_t d = 0;
  for (const auto& [lhs, rhss] : branches) d = std::max(d, rhss.size());
  return static_cast<int>(d);
}

namespace {

bool single_nonterminal(const Word& w) {
  return w.size() == 1 && w[0].kind == SymbolKind::nonterminal;
}

// rhs in A_t* or A_t* A_n (right-linear); with the flag, also A_n A_t*.
bool regular_rhs(const Word& rhs, bool accept_left_linear) {
  auto right = [&] {
    for (std::size_t i = 0; i + 1 < rhs.size(); ++i)
      if (rhs[i].kind != SymbolKind::terminal) return false;
    return true;  // last symbol may be terminal or the single nonterminal
  };
  auto left = [&] {
    for (std::size_t i = 1; i < rhs.size(); ++i)
      if (rhs[i].kind != SymbolKind::terminal) return false;
    return true;
  };
  if (right()) return true;
  return accept_left_linear && left();
}

bool matches_type3(const Production& p, bool accept_left_linear) {
  return single_nonterminal(p.lhs) && regular_rhs(p.rhs, accept_left_linear);
}

bool matches_type2(const Production& p) { return single_nonterminal(p.lhs); }

// lhs = a1 X a2 with X a single nonterminal and a1 a2 != eps;
// rhs = a1 b a2 with b != eps. Any witnessing decomposition counts.
bool matches_type1(const Production& p) {
  const Word& lhs = p.lhs;
  const Word& rhs = p.rhs;
  if (lhs.size() < 2) return false;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    if (lhs[k].kind != SymbolKind::nonterminal) continue;
    std::size_t left = k, right = lhs.size() - k - 1;
    if (rhs.size() < left + right + 1) continue;
    bool ok = std::equal(lhs.begin(), lhs.begin() + left, rhs.begin()) &&
              std::equal(lhs.end() - right, lhs.end(), rhs.end() - right);
    if (ok) return true;
  }
  return false;
}

}  // namespace

int chomsky_degree(const Grammar& g, bool accept_left_linear) {
  if (g.mode != GrammarMode::strict)
    throw Error("chomsky classification requires a strict-mode grammar");
  bool t3 = true, t2 = true, t1 = true;
  for (const Production& p : g.productions) {
    t3 = t3 && matches_type3(p, accept_left_linear);
    t2 = t2 && matches_type2(p);
    t1 = t1 && matches_type1(p);
  }
  if (t3) return 3;
  if (t2) return 2;
  if (t1) return 1;
  return 0;
}

WeightReport validate_weights(const Grammar& g, WeightMode mode) {
  WeightReport report;
  report.mode = mode;
  report.valid = true;

  if (mode == WeightMode::rates) {
    for (std::size_t i = 0; i < g.productions.size(); ++i) {
      const Production& p = g.productions[i];
      if (!p.rate) {
        report.problems.push_back("production " + std::to_string(i) + " (" +
                                  word_to_string(p.lhs) + " -> " +
                                  word_to_string(p.rhs) + ") has no rate");
        report.valid = false;
      } else if (*p.rate <= 0.0) {
        report.problems.push_back("production " + std::to_string(i) +
                                  " has nonpositive rate " +
                                  fmt_real(*p.rate));
        report.valid = false;
      }
    }
    return report;
  }

  std::map<Word, double> sums;
  for (std::size_t i = 0; i < g.productions.size(); ++i) {
    const Production& p = g.productions[i];
    double contribution = 0.0;
    if (mode == WeightMode::stochastic) {
      if (!p.probability) {
        report.problems.push_back("production " + std::to_string(i) + " (" +
                                  word_to_string(p.lhs) + " -> " +
                                  word_to_string(p.rhs) +
                                  ") has no probability");
        report.valid = false;
        continue;
      }
      if (*p.probability < 0.0) {
        report.problems.push_back("negative probability on production " +
                                  std::to_string(i));
        report.valid = false;
      }
      contribution = *p.probability;
    } else {
      if (!p.amplitude) {
        report.problems.push_back("production " + std::to_string(i) + " (" +
                                  word_to_string(p.lhs) + " -> " +
                                  word_to_string(p.rhs) +
                                  ") has no amplitude");
        report.valid = false;
        continue;
      }
      contribution = std::norm(*p.amplitude);
    }
    sums[p.lhs] += contribution;
  }

  for (const auto& [lhs, sum] : sums) {
    double residual = std::abs(sum - 1.0);
    report.residuals[lhs] = residual;
    if (residual > kWeightTolerance) report.valid = false;
  }
  return report;
}

ClassificationReport classify(const Grammar& g) {
  ClassificationReport r;
  r.descendance_degree = descendance_degree(g);
  r.chomsky_degree = chomsky_degree(g);
  r.stochastic_valid = validate_weights(g, WeightMode::stochastic).valid;
  r.quantum_valid = validate_weights(g, WeightMode::quantum).valid;
  for (const Word& lhs : domain_of(g.productions))
    r.per_lhs_branch_counts[lhs] = range_of(g.productions, lhs).size();
  return r;
}

}  // namespace gramflow
