#include "gramflow/derivation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "gramflow/text.hpp"

namespace gramflow {

namespace {

bool lhs_matches_at(const Word& w, const Word& lhs, std::size_t pos) {
  if (pos + lhs.size() > w.size()) return false;
  return std::equal(lhs.begin(), lhs.end(), w.begin() + pos);
}

}  // namespace

std::vector<Redex> find_redexes(const Word& w, const Grammar& g) {
  std::vector<Redex> out;
  for (std::size_t pos = 0; pos < w.size(); ++pos)
    for (std::size_t pi = 0; pi < g.productions.size(); ++pi)
      if (lhs_matches_at(w, g.productions[pi].lhs, pos))
        out.push_back({pos, pi});
  return out;
}

Word apply_redex(const Word& w, const Redex& r, const Grammar& g) {
  const Production& p = g.productions.at(r.production_index);
  if (!lhs_matches_at(w, p.lhs, r.position))
    throw Error("stale redex: lhs '" + word_to_string(p.lhs) +
                "' is not at position " + std::to_string(r.position) +
                " of '" + word_to_string(w) + "'");
  Word out;
  out.reserve(w.size() - p.lhs.size() + p.rhs.size());
  out.insert(out.end(), w.begin(), w.begin() + r.position);
  out.insert(out.end(), p.rhs.begin(), p.rhs.end());
  out.insert(out.end(), w.begin() + r.position + p.lhs.size(), w.end());
  return out;
}

bool directly_derivable(const Word& a, const Word& b, const Grammar& g) {
  for (const Redex& r : find_redexes(a, g))
    if (apply_redex(a, r, g) == b) return true;
  return false;
}

namespace {

// Redexes sharing a site and an lhs form one choice group; the group holds
// every alternative rhs of that lhs.
struct RedexGroup {
  std::size_t position;
  std::vector<Redex> members;
};

std::vector<RedexGroup> group_redexes(const std::vector<Redex>& redexes,
                                      const Grammar& g) {
  std::vector<RedexGroup> groups;
  for (const Redex& r : redexes) {
    const Word& lhs = g.productions[r.production_index].lhs;
    bool placed = false;
    for (RedexGroup& grp : groups) {
      if (grp.position == r.position &&
          g.productions[grp.members[0].production_index].lhs == lhs) {
        grp.members.push_back(r);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({r.position, {r}});
  }
  return groups;
}

double branch_probability(const Production& p) {
  return p.probability.value_or(1.0);
}

}  // namespace

ComputationalPath sample_path(const Grammar& g, int max_steps,
                              RedexPolicy policy, std::uint64_t seed) {
  if (max_steps <= 0) throw Error("max_steps must be positive");
  if (descendance_degree(g) > 1) {
    WeightReport wr = validate_weights(g, WeightMode::stochastic);
    if (!wr.valid)
      throw Error("nondeterministic grammar is not stochastically valid: " +
                  (wr.problems.empty() ? "per-lhs sums off by more than 1e-9"
                                       : wr.problems.front()));
  }

  ComputationalPath path;
  path.start = g.axiom_word();
  Rng rng(seed);
  Word current = path.start;

  for (int step = 0; step < max_steps; ++step) {
    auto redexes = find_redexes(current, g);
    if (redexes.empty()) {
      path.halted = true;
      return path;
    }
    auto groups = group_redexes(redexes, g);

    std::size_t gi = 0;
    double position_prob = 1.0;
    if (policy == RedexPolicy::uniform && groups.size() > 1) {
      gi = rng.pick_uniform(groups.size());
      position_prob = 1.0 / static_cast<double>(groups.size());
    }
    const RedexGroup& grp = groups[gi];

    std::size_t bi = 0;
    double branch_prob = 1.0;
    if (grp.members.size() > 1) {
      std::vector<double> ps;
      ps.reserve(grp.members.size());
      double total = 0.0;
      for (const Redex& r : grp.members) {
        double p = branch_probability(g.productions[r.production_index]);
        ps.push_back(p);
        total += p;
      }
      bi = rng.pick_weighted(ps, total);
      branch_prob = ps[bi];
    } else {
      branch_prob = branch_probability(
          g.productions[grp.members[0].production_index]);
    }

    DerivationStep ds;
    ds.before = current;
    ds.redex = grp.members[bi];
    ds.after = apply_redex(current, ds.redex, g);
    ds.choice_probability = position_prob * branch_prob;
    path.log_probability += std::log(ds.choice_probability);
    current = ds.after;
    path.steps.push_back(std::move(ds));
  }
  path.halted = find_redexes(current, g).empty();
  return path;
}

std::map<Symbol, std::size_t> shortest_terminal_yields(const Grammar& g) {
  std::map<Symbol, std::size_t> yields;
  for (const Symbol& s : g.nonterminals) yields[s] = kInfYield;

  auto word_yield = [&](const Word& w) {
    std::size_t total = 0;
    for (const Symbol& s : w) {
      total += s.kind == SymbolKind::terminal ? 1 : yields[s];
      if (total >= kInfYield) return kInfYield;
    }
    return total;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.productions) {
      if (p.lhs.size() != 1 || p.lhs[0].kind != SymbolKind::nonterminal)
        continue;
      std::size_t candidate = word_yield(p.rhs);
      auto& slot = yields[p.lhs[0]];
      if (candidate < slot) {
        slot = candidate;
        changed = true;
      }
    }
  }
  return yields;
}

std::map<Word, double> enumerate_language(const Grammar& g,
                                          const EnumerateOptions& opt) {
  if (chomsky_degree(g) < 2)
    throw Error("enumerate_language needs a context-free grammar; branch "
                "probabilities are undefined across overlapping redexes");
  if (descendance_degree(g) > 1) {
    WeightReport wr = validate_weights(g, WeightMode::stochastic);
    if (!wr.valid)
      throw Error("unweighted or invalid nondeterministic grammar: " +
                  (wr.problems.empty() ? "per-lhs sums off by more than 1e-9"
                                       : wr.problems.front()));
  }

  auto yields = shortest_terminal_yields(g);
  // Minimal length of any word reachable from a form: a nonterminal may
  // stay unexpanded when sentential forms count as words.
  auto min_reach = [&](const Word& w) {
    std::size_t total = 0;
    for (const Symbol& s : w) {
      if (s.kind == SymbolKind::terminal)
        total += 1;
      else
        total += opt.terminal_only ? yields[s]
                                   : std::min<std::size_t>(1, yields[s]);
      if (total >= kInfYield) return kInfYield;
    }
    return total;
  };

  std::map<Word, double> totals;
  std::deque<std::pair<Word, double>> work;
  work.push_back({g.axiom_word(), 1.0});
  std::size_t expansions = 0;

  while (!work.empty()) {
    auto [form, prob] = std::move(work.front());
    work.pop_front();
    if (++expansions > opt.max_expansions)
      throw Error("enumeration exceeded " +
                  std::to_string(opt.max_expansions) +
                  " expansions; the grammar may contain a unit-production "
                  "cycle");

    bool terminal = is_terminal_word(form);
    if (form.size() <= opt.max_word_len && (terminal || !opt.terminal_only))
      totals[form] += prob;
    if (terminal) continue;

    auto redexes = find_redexes(form, g);
    if (redexes.empty()) continue;  // stuck form, no terminal completion
    std::size_t leftmost = redexes.front().position;
    for (const Redex& r : redexes) {
      if (r.position != leftmost) break;
      const Production& p = g.productions[r.production_index];
      Word child = apply_redex(form, r, g);
      if (min_reach(child) > opt.max_word_len) continue;
      work.push_back({std::move(child), prob * branch_probability(p)});
    }
  }
  return totals;
}

namespace {

struct Token {
  Symbol sym;
  long id;  // >= 0 for terminals, -1 for nonterminals
};

}  // namespace

SecondaryStructure extract_pairing(const ComputationalPath& path,
                                   const Grammar& g) {
  if (!path.halted) throw Error("extract_pairing needs a halted path");
  if (chomsky_degree(g) < 2)
    throw Error("extract_pairing needs a context-free grammar");
  if (!is_terminal_word(path.final_word()))
    throw Error("final word still contains nonterminals");

  long next_id = 0;
  std::vector<Token> tokens;
  for (const Symbol& s : path.start)
    tokens.push_back(
        {s, s.kind == SymbolKind::terminal ? next_id++ : -1});

  std::vector<std::pair<long, long>> id_pairs;
  for (const DerivationStep& step : path.steps) {
    const Production& p = g.productions.at(step.redex.production_index);
    std::size_t pos = step.redex.position;
    std::vector<Token> rhs_tokens;
    for (const Symbol& s : p.rhs)
      rhs_tokens.push_back(
          {s, s.kind == SymbolKind::terminal ? next_id++ : -1});
    if (p.rhs.size() >= 2 &&
        p.rhs.front().kind == SymbolKind::terminal &&
        p.rhs.back().kind == SymbolKind::terminal)
      id_pairs.push_back({rhs_tokens.front().id, rhs_tokens.back().id});
    tokens.erase(tokens.begin() + pos, tokens.begin() + pos + p.lhs.size());
    tokens.insert(tokens.begin() + pos, rhs_tokens.begin(), rhs_tokens.end());
  }

  std::map<long, std::size_t> position_of;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    position_of[tokens[i].id] = i;

  SecondaryStructure ss;
  ss.word = path.final_word();
  for (auto [a, b] : id_pairs) {
    std::size_t i = position_of.at(a), j = position_of.at(b);
    ss.pairs.push_back({std::min(i, j), std::max(i, j)});
  }
  std::sort(ss.pairs.begin(), ss.pairs.end());

  ss.dot_bracket.assign(ss.word.size(), '.');
  for (auto [i, j] : ss.pairs) {
    ss.dot_bracket[i] = '(';
    ss.dot_bracket[j] = ')';
  }

  // Nesting check: a context-free derivation cannot cross pairs.
  std::vector<std::size_t> stack;
  std::map<std::size_t, std::size_t> partner;
  for (auto [i, j] : ss.pairs) partner[i] = j;
  for (std::size_t pos = 0; pos < ss.dot_bracket.size(); ++pos) {
    if (ss.dot_bracket[pos] == '(') stack.push_back(partner[pos]);
    if (ss.dot_bracket[pos] == ')') {
      if (stack.empty() || stack.back() != pos)
        throw Error("crossing pairs in extracted structure");
      stack.pop_back();
    }
  }
  return ss;
}

}  // namespace gramflow
