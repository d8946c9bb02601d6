#include "gramflow/grammar_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gramflow/text.hpp"

namespace gramflow {

namespace {

double parse_real(const std::string& s, int line) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ParseError(line, "bad number '" + s + "'");
  return v;
}

Symbol resolve(const Grammar& g, const std::string& tok, int line) {
  auto s = g.find_symbol(tok);
  if (!s)
    throw ParseError(line, "symbol '" + tok + "' is not declared in either "
                           "alphabet");
  return *s;
}

Word resolve_word(const Grammar& g, const std::vector<std::string>& toks,
                  std::size_t begin, std::size_t end, int line) {
  if (end == begin + 1 && toks[begin] == "eps") return {};
  Word w;
  for (std::size_t i = begin; i < end; ++i) {
    if (toks[i] == "eps")
      throw ParseError(line, "'eps' cannot be mixed with other symbols");
    w.push_back(resolve(g, toks[i], line));
  }
  return w;
}

void parse_weight_clause(Production& p, const std::string& tok, int line) {
  auto eq = tok.find('=');
  if (eq == std::string::npos)
    throw ParseError(line, "bad weight clause '" + tok + "'");
  std::string key = tok.substr(0, eq);
  std::string val = tok.substr(eq + 1);
  if (key == "p") {
    p.probability = parse_real(val, line);
    if (*p.probability < 0.0 || *p.probability > 1.0)
      throw ParseError(line, "probability out of [0,1]: " + val);
  } else if (key == "u") {
    auto comma = val.find(',');
    if (comma == std::string::npos)
      throw ParseError(line, "amplitude must be 're,im': " + val);
    p.amplitude = std::complex<double>(
        parse_real(val.substr(0, comma), line),
        parse_real(val.substr(comma + 1), line));
  } else if (key == "rate") {
    p.rate = parse_real(val, line);
    if (*p.rate <= 0.0)
      throw ParseError(line, "rate must be positive: " + val);
  } else {
    throw ParseError(line, "unknown weight key '" + key + "'");
  }
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  Grammar g;
  bool saw_nonterminals = false, saw_terminals = false, saw_axiom = false,
       saw_mode = false, saw_rule = false;
  std::string axiom_name;
  int axiom_line = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;

    const std::string& head = toks[0];
    if (head == "nonterminals:" || head == "terminals:") {
      bool nts = head[0] == 'n';
      if ((nts ? saw_nonterminals : saw_terminals))
        throw ParseError(line, head + " declared twice");
      if (saw_rule)
        throw ParseError(line, "alphabets must be declared before rules");
      (nts ? saw_nonterminals : saw_terminals) = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i] == "eps")
          throw ParseError(line, "'eps' is reserved for the empty word");
        if (nts)
          g.nonterminals.push_back(nonterminal(toks[i]));
        else
          g.terminals.push_back(terminal(toks[i]));
      }
    } else if (head == "axiom:") {
      if (saw_axiom) throw ParseError(line, "axiom declared twice");
      if (toks.size() != 2) throw ParseError(line, "axiom: wants one symbol");
      saw_axiom = true;
      axiom_name = toks[1];
      axiom_line = line;
    } else if (head == "mode:") {
      if (saw_mode) throw ParseError(line, "mode declared twice");
      if (toks.size() != 2 || (toks[1] != "strict" && toks[1] != "relaxed"))
        throw ParseError(line, "mode must be 'strict' or 'relaxed'");
      saw_mode = true;
      g.mode = toks[1] == "strict" ? GrammarMode::strict
                                   : GrammarMode::relaxed;
    } else if (head == "rule") {
      if (!saw_nonterminals)
        throw ParseError(line, "alphabets must be declared before rules");
      saw_rule = true;
      std::size_t arrow = 0, at = toks.size();
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i] == "->" && arrow == 0) arrow = i;
        if (toks[i] == "@") {
          at = i;
          break;
        }
      }
      if (arrow == 0 || arrow >= at)
        throw ParseError(line, "rule wants 'rule LHS -> RHS [@ weights]'");
      Production p;
      p.lhs = resolve_word(g, toks, 1, arrow, line);
      p.rhs = resolve_word(g, toks, arrow + 1, at, line);
      if (p.lhs.empty()) throw ParseError(line, "rule lhs cannot be empty");
      if (g.mode == GrammarMode::strict && is_terminal_word(p.lhs))
        throw ParseError(line, "strict mode: lhs '" +
                                   word_to_string(p.lhs) + "' is in A_t*");
      for (std::size_t i = at + 1; i < toks.size(); ++i)
        parse_weight_clause(p, toks[i], line);
      g.productions.push_back(std::move(p));
    } else {
      throw ParseError(line, "unrecognised directive '" + head + "'");
    }
  }

  if (!saw_nonterminals) throw ParseError(line, "missing nonterminals:");
  if (!saw_axiom) throw ParseError(line, "missing axiom:");
  auto axiom = g.find_symbol(axiom_name);
  if (!axiom || axiom->kind != SymbolKind::nonterminal)
    throw ParseError(axiom_line, "axiom '" + axiom_name +
                                     "' is not a declared nonterminal");
  g.axiom = *axiom;

  try {
    validate_grammar(g);
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
  return g;
}

Grammar load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read grammar file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grammar(buf.str());
}

std::string serialize_grammar(const Grammar& g) {
  std::ostringstream out;
  out << "nonterminals:";
  for (const Symbol& s : g.nonterminals) out << ' ' << s.name;
  out << "\nterminals:";
  for (const Symbol& s : g.terminals) out << ' ' << s.name;
  out << "\naxiom: " << g.axiom.name;
  out << "\nmode: "
      << (g.mode == GrammarMode::strict ? "strict" : "relaxed") << '\n';
  for (const Production& p : g.productions) {
    out << "rule";
    for (const Symbol& s : p.lhs) out << ' ' << s.name;
    out << " ->";
    if (p.rhs.empty())
      out << " eps";
    else
      for (const Symbol& s : p.rhs) out << ' ' << s.name;
    if (p.probability || p.amplitude || p.rate) {
      out << " @";
      if (p.probability) out << " p=" << fmt_real(*p.probability);
      if (p.amplitude)
        out << " u=" << fmt_real(p.amplitude->real()) << ','
            << fmt_real(p.amplitude->imag());
      if (p.rate) out << " rate=" << fmt_real(*p.rate);
    }
    out << '\n';
  }
  return out.str();
}

Word parse_word(const Grammar& g, std::string_view text) {
  std::string t = trim(text);
  if (t == "eps" || t.empty()) return {};
  auto lookup = [&](const std::string& tok) {
    auto s = g.find_symbol(tok);
    if (!s) throw Error("symbol '" + tok + "' is not declared");
    return *s;
  };
  auto toks = split_ws(t);
  if (toks.size() > 1) {
    Word w;
    for (const auto& tok : toks) w.push_back(lookup(tok));
    return w;
  }
  // Compact form: per-character when every character is a declared symbol.
  Word per_char;
  bool ok = true;
  for (char c : t) {
    auto s = g.find_symbol(std::string(1, c));
    if (!s) {
      ok = false;
      break;
    }
    per_char.push_back(*s);
  }
  if (ok) return per_char;
  if (auto s = g.find_symbol(t)) return {*s};
  throw Error("cannot resolve word '" + t + "' over the grammar alphabet");
}

}  // namespace gramflow
